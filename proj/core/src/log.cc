#include "lprpg/log.h"

#include <iostream>
#include <mutex>
#include <set>

namespace lprpg::log {

namespace {

std::mutex mu;
Level current = Level::Warn;
std::set<std::string> seen;
long warnings = 0;

void emit(Level l, const char *tag, const std::string &msg) {
    if (l < current)
        return;
    std::cerr << tag << msg << "\n";
}

}  // namespace

void set_level(Level level) {
    std::lock_guard lock(mu);
    current = level;
}

Level level() {
    std::lock_guard lock(mu);
    return current;
}

void debug(const std::string &msg) {
    std::lock_guard lock(mu);
    emit(Level::Debug, "debug: ", msg);
}

void info(const std::string &msg) {
    std::lock_guard lock(mu);
    emit(Level::Info, "info: ", msg);
}

void warn(const std::string &msg) {
    std::lock_guard lock(mu);
    ++warnings;
    if (seen.insert(msg).second)
        emit(Level::Warn, "warning: ", msg);
}

void error(const std::string &msg) {
    std::lock_guard lock(mu);
    emit(Level::Error, "error: ", msg);
}

long warning_count() {
    std::lock_guard lock(mu);
    return warnings;
}

void reset_warnings() {
    std::lock_guard lock(mu);
    warnings = 0;
    seen.clear();
}

}  // namespace lprpg::log
