#include "doctest.h"
#include "lprpg/rational.h"

#include <stdexcept>

using namespace lprpg;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rational("3") == Rational(3));
    CHECK(parse_rational("-2.25") == Rational(-9, 4));
    CHECK(parse_rational("1/4") == Rational(1, 4));
    CHECK(to_string(Rational(-9, 4)) == "-9/4");
    CHECK_THROWS(parse_rational("abc"));
}

TEST_CASE("mixed integer comparisons terminate") {
    Rational r(0);
    CHECK(r == 0);
    CHECK(Rational(3, 2) != 1);
    CHECK(Rational(2) == std::int64_t{2});
}

TEST_CASE("rational_from_double recovers small fractions") {
    CHECK(rational_from_double(0.5) == Rational(1, 2));
    CHECK(rational_from_double(2.0 / 3.0) == Rational(2, 3));
    CHECK(rational_from_double(-4.0) == Rational(-4));
    CHECK(rational_from_double(1.9999999999) == Rational(2));
}

TEST_CASE("extended rationals") {
    const ExtRational inf = ExtRational::pos_inf(), ninf = ExtRational::neg_inf();
    CHECK(inf > ExtRational(1000000));
    CHECK(ninf < ExtRational(-1000000));
    CHECK((inf + ExtRational(3)).is_pos_inf());
    CHECK((ExtRational(Rational(1, 2)) + ExtRational(Rational(1, 3))) == ExtRational(Rational(5, 6)));
    CHECK((inf * Rational(-2)).is_neg_inf());
    CHECK((inf * Rational(0)) == ExtRational(0));
    CHECK_THROWS((inf + ninf));
    CHECK(max(ExtRational(2), inf).is_pos_inf());
    CHECK(min(ExtRational(2), ninf).is_neg_inf());
    CHECK(to_string(inf) == "+inf");
}
