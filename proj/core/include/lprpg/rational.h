#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace boost {

// boost 1.74's mixed integer == recurses forever under C++20 reversed
// candidates; these exact overloads win overload resolution instead.
inline bool operator==(const rational<std::int64_t> &a, int b) { return a == rational<std::int64_t>(b); }
inline bool operator==(const rational<std::int64_t> &a, std::int64_t b) { return a == rational<std::int64_t>(b); }

}  // namespace boost

namespace lprpg {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational &r);
double to_double(const Rational &r);

// Nearest rational with denominator <= max_denominator (continued fractions).
Rational rational_from_double(double x, std::int64_t max_denominator = 1000000);

// Parses "3", "-2.25", "1/4".
Rational parse_rational(const std::string &text);

std::int64_t lcm(std::int64_t a, std::int64_t b);

// A rational extended with -inf and +inf. Used for global variable bounds
// and relaxed-planning-graph intervals.
class ExtRational {
public:
    ExtRational() = default;
    ExtRational(const Rational &value) : value_(value) {}
    ExtRational(std::int64_t value) : value_(value) {}

    static ExtRational pos_inf() { return ExtRational(Kind::PosInf); }
    static ExtRational neg_inf() { return ExtRational(Kind::NegInf); }

    bool is_finite() const { return kind_ == Kind::Finite; }
    bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    // Precondition: is_finite().
    const Rational &value() const;
    double to_double() const;

    ExtRational operator+(const ExtRational &o) const;
    ExtRational operator-() const;
    ExtRational operator-(const ExtRational &o) const { return *this + (-o); }
    ExtRational operator*(const Rational &scale) const;

    bool operator==(const ExtRational &o) const;
    std::strong_ordering operator<=>(const ExtRational &o) const;

    friend std::ostream &operator<<(std::ostream &os, const ExtRational &x);

private:
    enum class Kind { NegInf, Finite, PosInf };
    explicit ExtRational(Kind k) : kind_(k) {}
    Kind kind_ = Kind::Finite;
    Rational value_{0};
};

inline ExtRational max(const ExtRational &a, const ExtRational &b) { return a < b ? b : a; }
inline ExtRational min(const ExtRational &a, const ExtRational &b) { return b < a ? b : a; }

std::string to_string(const ExtRational &x);

}  // namespace lprpg
