#pragma once

#include <string>

namespace lprpg::log {

enum class Level { Debug, Info, Warn, Error, Off };

void set_level(Level level);
Level level();

void debug(const std::string &msg);
void info(const std::string &msg);
// Each distinct warning text is printed once; repeats are only counted.
void warn(const std::string &msg);
void error(const std::string &msg);

long warning_count();
void reset_warnings();

}  // namespace lprpg::log
