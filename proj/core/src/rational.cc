#include "lprpg/rational.h"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lprpg {

std::string to_string(const Rational &r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1)
        os << '/' << r.denominator();
    return os.str();
}

double to_double(const Rational &r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

Rational rational_from_double(double x, std::int64_t max_denominator) {
    if (!std::isfinite(x))
        throw std::domain_error("rational_from_double: non-finite value");
    const bool negative = x < 0;
    double rest = std::fabs(x);
    if (rest > 9.0e15)
        throw std::overflow_error("rational_from_double: value too large");
    // Convergents p/q of the continued fraction of |x|.
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        double whole = std::floor(rest);
        auto a = static_cast<std::int64_t>(whole);
        std::int64_t p2 = a * p1 + p0;
        std::int64_t q2 = a * q1 + q0;
        if (q2 > max_denominator)
            break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double frac = rest - whole;
        if (frac < 1e-12 || std::fabs(static_cast<double>(p1) / q1 - std::fabs(x)) < 1e-12)
            break;
        rest = 1.0 / frac;
    }
    if (q1 == 0)
        return Rational(negative ? -static_cast<std::int64_t>(std::llround(std::fabs(x)))
                                 : static_cast<std::int64_t>(std::llround(x)));
    Rational r(p1, q1);
    return negative ? -r : r;
}

Rational parse_rational(const std::string &text) {
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return Rational(std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1)));
    auto dot = text.find('.');
    if (dot == std::string::npos) {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size())
            throw std::invalid_argument("not a number: " + text);
        return Rational(v);
    }
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    std::int64_t denominator = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i)
        denominator *= 10;
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("not a number: " + text);
    std::size_t used = 0;
    long long numerator = std::stoll(digits, &used);
    if (used != digits.size())
        throw std::invalid_argument("not a number: " + text);
    return Rational(numerator, denominator);
}

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

const Rational &ExtRational::value() const {
    if (kind_ != Kind::Finite)
        throw std::logic_error("ExtRational::value() on an infinite bound");
    return value_;
}

double ExtRational::to_double() const {
    switch (kind_) {
    case Kind::NegInf: return -std::numeric_limits<double>::infinity();
    case Kind::PosInf: return std::numeric_limits<double>::infinity();
    default: return lprpg::to_double(value_);
    }
}

ExtRational ExtRational::operator+(const ExtRational &o) const {
    if (kind_ == Kind::Finite && o.kind_ == Kind::Finite)
        return ExtRational(value_ + o.value_);
    if ((kind_ == Kind::PosInf && o.kind_ == Kind::NegInf) ||
        (kind_ == Kind::NegInf && o.kind_ == Kind::PosInf))
        throw std::domain_error("ExtRational: inf - inf");
    return kind_ == Kind::Finite ? o : *this;
}

ExtRational ExtRational::operator-() const {
    switch (kind_) {
    case Kind::NegInf: return pos_inf();
    case Kind::PosInf: return neg_inf();
    default: return ExtRational(-value_);
    }
}

ExtRational ExtRational::operator*(const Rational &scale) const {
    if (kind_ == Kind::Finite)
        return ExtRational(value_ * scale);
    if (scale == 0)
        return ExtRational(Rational(0));
    return scale > 0 ? *this : -*this;
}

bool ExtRational::operator==(const ExtRational &o) const {
    return kind_ == o.kind_ && (kind_ != Kind::Finite || value_ == o.value_);
}

std::strong_ordering ExtRational::operator<=>(const ExtRational &o) const {
    if (kind_ != o.kind_ || kind_ != Kind::Finite) {
        if (kind_ == o.kind_)
            return std::strong_ordering::equal;
        return static_cast<int>(kind_) <=> static_cast<int>(o.kind_);
    }
    if (value_ < o.value_) return std::strong_ordering::less;
    if (o.value_ < value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::ostream &operator<<(std::ostream &os, const ExtRational &x) {
    switch (x.kind_) {
    case ExtRational::Kind::NegInf: return os << "-inf";
    case ExtRational::Kind::PosInf: return os << "+inf";
    default: return os << to_string(x.value_);
    }
}

std::string to_string(const ExtRational &x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace lprpg
