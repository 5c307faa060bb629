#include "qforms/qseries.hpp"

#include "qforms/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace qforms;
using testutil::make_rng;
using testutil::random_series;

TEST_CASE("coefficient access and truncation bounds") {
    QSeries s(3);
    s.set_coefficient(0, Rational(1, 2));
    s.set_coefficient(3, Rational(-4));
    CHECK(s.truncation() == 3);
    CHECK(s.coefficient(0) == Rational(1, 2));
    CHECK(s.coefficient(1) == Rational());
    CHECK(s.coefficient(3) == Rational(-4));
    CHECK_THROWS_AS(s.coefficient(4), InsufficientTruncationError);
    CHECK_THROWS_AS(QSeries(2).coefficient(-1), std::invalid_argument);
}

TEST_CASE("binary operations truncate to the shorter operand") {
    auto rng = make_rng(23);
    QSeries a = random_series(rng, 10);
    QSeries b = random_series(rng, 6);
    CHECK((a + b).truncation() == 6);
    CHECK((a - b).truncation() == 6);
    CHECK((a * b).truncation() == 6);
    for (int n = 0; n <= 6; ++n) CHECK((a + b).coefficient(n) == a.coefficient(n) + b.coefficient(n));
}

TEST_CASE("ring laws hold coefficientwise at truncation 64") {
    auto rng = make_rng(29);
    for (int round = 0; round < 8; ++round) {
        const int t = 64;
        QSeries a = random_series(rng, t);
        QSeries b = random_series(rng, t);
        QSeries c = random_series(rng, t);
        CHECK(((a + b) + c).coefficients() == (a + (b + c)).coefficients());
        CHECK((a + b).coefficients() == (b + a).coefficients());
        CHECK((a * b).coefficients() == (b * a).coefficients());
        CHECK(((a * b) * c).coefficients() == (a * (b * c)).coefficients());
        CHECK((a * (b + c)).coefficients() == (a * b + a * c).coefficients());
    }
}

TEST_CASE("Cauchy product against a hand-computed example") {
    // (1 + q)(1 - q + q^2) = 1 + q^3 truncated at 2 -> 1, 0, 0
    QSeries a(2), b(2);
    a.set_coefficient(0, Rational(1));
    a.set_coefficient(1, Rational(1));
    b.set_coefficient(0, Rational(1));
    b.set_coefficient(1, Rational(-1));
    b.set_coefficient(2, Rational(1));
    QSeries p = a * b;
    CHECK(p.coefficient(0) == Rational(1));
    CHECK(p.coefficient(1) == Rational());
    CHECK(p.coefficient(2) == Rational());
}

TEST_CASE("derivative multiplies coefficient n by n^m") {
    auto rng = make_rng(31);
    QSeries s = random_series(rng, 20);
    QSeries d2 = s.derivative(2);
    for (int n = 0; n <= 20; ++n) {
        CHECK(d2.coefficient(n) == s.coefficient(n) * Rational(n) * Rational(n));
    }
    CHECK(s.derivative(0).coefficients() == s.coefficients());
}

TEST_CASE("repeated derivative composes") {
    auto rng = make_rng(37);
    QSeries s = random_series(rng, 32);
    CHECK(s.derivative(3).coefficients() ==
          s.derivative().derivative().derivative().coefficients());
}

TEST_CASE("Leibniz rule at truncation 64") {
    auto rng = make_rng(41);
    for (int round = 0; round < 6; ++round) {
        QSeries f = random_series(rng, 64);
        QSeries g = random_series(rng, 64);
        CHECK((f * g).derivative().coefficients() ==
              (f.derivative() * g + f * g.derivative()).coefficients());
    }
}

TEST_CASE("truncated returns a prefix and cannot extend") {
    auto rng = make_rng(43);
    QSeries s = random_series(rng, 12);
    QSeries t = s.truncated(5);
    CHECK(t.truncation() == 5);
    for (int n = 0; n <= 5; ++n) CHECK(t.coefficient(n) == s.coefficient(n));
    CHECK(s.truncated(40).truncation() == 12);
}

TEST_CASE("constant, scaled, negation, zero test") {
    QSeries c = QSeries::constant(Rational(5, 3), 4);
    CHECK(c.coefficient(0) == Rational(5, 3));
    CHECK(c.coefficient(3) == Rational());
    CHECK_FALSE(c.is_zero());
    CHECK(QSeries(7).is_zero());
    QSeries d = c.scaled(Rational(3, 5));
    CHECK(d.coefficient(0) == Rational(1));
    CHECK((-d).coefficient(0) == Rational(-1));
}

TEST_CASE("agrees_with compares up to the shorter truncation") {
    auto rng = make_rng(47);
    QSeries s = random_series(rng, 10);
    QSeries t = s.truncated(6);
    CHECK(s.agrees_with(t));
    CHECK(t.agrees_with(s));
    QSeries u = t;
    u.set_coefficient(6, t.coefficient(6) + Rational(1));
    CHECK_FALSE(s.agrees_with(u));
}
