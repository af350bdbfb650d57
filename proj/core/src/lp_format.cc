#include "lprpg/mp.h"

#include <cctype>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace lprpg::mp {

namespace {

std::string column_name(const MPModel &m, std::size_t j) {
    const std::string &n = m.variables()[j].name;
    if (n.empty())
        return "x" + std::to_string(j);
    std::string s;
    for (char c : n)
        s.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' ? c : '_');
    if (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '.' || s[0] == 'e' || s[0] == 'E')
        s = "x_" + s;
    return s + "#" + std::to_string(j);
}

void write_number(std::ostream &os, double x) {
    if (std::isinf(x))
        os << (x > 0 ? "+inf" : "-inf");
    else
        os << std::setprecision(12) << x;
}

void write_terms(std::ostream &os, const MPModel &m, const Terms &terms) {
    bool first = true;
    for (const auto &[c, w] : terms) {
        if (w == 0)
            continue;
        os << (w < 0 ? " - " : (first ? " " : " + "));
        if (std::fabs(w) != 1.0) {
            write_number(os, std::fabs(w));
            os << " ";
        }
        os << column_name(m, static_cast<std::size_t>(c));
        first = false;
    }
    if (first)
        os << " 0 " << (m.num_variables() ? column_name(m, 0) : "x0");
}

}  // namespace

std::string to_lp_format(const MPModel &m) {
    std::ostringstream os;
    os << "\\ " << m.num_variables() << " columns, " << m.num_constraints() << " rows\n";
    os << (m.sense() == Sense::Maximize ? "Maximize" : "Minimize") << "\n obj:";
    Terms obj;
    for (std::size_t j = 0; j < m.num_variables(); ++j)
        if (m.objective()[j] != 0)
            obj.emplace_back(static_cast<int>(j), m.objective()[j]);
    write_terms(os, m, obj);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < m.num_constraints(); ++i) {
        const auto &c = m.constraints()[i];
        os << " c" << i << ":";
        write_terms(os, m, c.terms);
        os << (c.op == RowOp::LessEq ? " <= " : c.op == RowOp::GreaterEq ? " >= " : " = ");
        write_number(os, c.rhs);
        os << "\n";
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < m.num_variables(); ++j) {
        const auto &v = m.variables()[j];
        if (v.kind == VarKind::Binary)
            continue;
        os << " ";
        if (std::isinf(v.lb) && std::isinf(v.ub)) {
            os << column_name(m, j) << " free\n";
            continue;
        }
        write_number(os, v.lb);
        os << " <= " << column_name(m, j) << " <= ";
        write_number(os, v.ub);
        os << "\n";
    }
    bool header = false;
    for (std::size_t j = 0; j < m.num_variables(); ++j)
        if (m.variables()[j].kind == VarKind::Integer) {
            if (!header)
                os << "General\n";
            header = true;
            os << " " << column_name(m, j) << "\n";
        }
    header = false;
    for (std::size_t j = 0; j < m.num_variables(); ++j)
        if (m.variables()[j].kind == VarKind::Binary) {
            if (!header)
                os << "Binary\n";
            header = true;
            os << " " << column_name(m, j) << "\n";
        }
    os << "End\n";
    return os.str();
}

}  // namespace lprpg::mp
