#include "qforms/eisenstein_omega.hpp"

#include "qforms/errors.hpp"
#include "qforms/number_theory.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace qforms;

namespace {

QMPoly dh_poly(int k, int m) {
    QMPoly p = h_poly(k);
    for (int i = 0; i < m; ++i) p = p.derivative();
    return p;
}

} // namespace

TEST_CASE("h_coeff anchors") {
    CHECK(h_coeff(6, 0) == Rational(-11, 1440));
    CHECK(h_coeff(6, 1) == Rational());
    CHECK(h_coeff(6, 4) == Rational(3));
    // ((n^2-n+1) sigma_1 - sigma_3)/6 at n = 6: (31*12 - 252)/6 = 20
    CHECK(h_coeff(6, 6) == Rational(20));
    // k >= 8 constant: (G_{k-4} - G_{k-2} constants)/24
    CHECK(h_coeff(8, 0) ==
          (eisenstein_series(4, 0).coefficient(0) - eisenstein_series(6, 0).coefficient(0)) *
              Rational(1, 24));
    CHECK_THROWS_AS(h_coeff(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(h_coeff(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(h_coeff(6, -1), std::invalid_argument);
}

TEST_CASE("h_coeff is nonnegative with zeros exactly at primes") {
    const long bound = 500;
    const std::vector<std::uint8_t> prime = prime_sieve(bound);
    for (int k : {6, 8, 10}) {
        for (long n = 2; n <= bound; ++n) {
            const Rational v = h_coeff(k, n);
            CHECK(v.sign() >= 0);
            CHECK(v.is_zero() == static_cast<bool>(prime[static_cast<std::size_t>(n)]));
        }
    }
}

TEST_CASE("h_series scales coefficient n by n^m") {
    for (int k : {6, 12}) {
        const QSeries base = h_series(k, 200);
        for (int m = 1; m <= 3; ++m) {
            const QSeries d = h_series(k, 200, m);
            for (long n = 0; n <= 200; ++n) {
                Rational factor(1);
                for (int i = 0; i < m; ++i) factor *= Rational(n);
                CHECK(d.coefficient(static_cast<int>(n)) ==
                      base.coefficient(static_cast<int>(n)) * factor);
            }
        }
    }
}

TEST_CASE("h_poly matches its defining Eisenstein combination") {
    const QMPoly g2 = QMPoly::g2();
    QMPoly want6 = (g2.derivative().derivative() - g2.derivative() + g2 - QMPoly::g4())
                       .scaled(Rational(1, 6));
    CHECK(h_poly(6) == want6);
    const QMPoly g4 = QMPoly::g4();
    QMPoly want8 = (-g2.derivative().derivative() + g4.derivative().derivative() + g4 -
                    eisenstein_poly(6))
                       .scaled(Rational(1, 24));
    CHECK(h_poly(8) == want8);
}

TEST_CASE("h_form symbol and series agree under expansion at truncation 500") {
    for (const HFormId id : {HFormId{6, 0}, HFormId{8, 1}, HFormId{12, 2}}) {
        const HForm f = h_form(id, 500);
        CHECK(expand(f.poly, 500).coefficients() == f.series.coefficients());
    }
}

TEST_CASE("e_lines ordering is weight major, derivative order minor") {
    const std::vector<ELine> lines = e_lines(6);
    REQUIRE(lines.size() == 6);
    CHECK((lines[0].weight == 2 && lines[0].r == 0));
    CHECK((lines[1].weight == 2 && lines[1].r == 1));
    CHECK((lines[2].weight == 2 && lines[2].r == 2));
    CHECK((lines[3].weight == 4 && lines[3].r == 0));
    CHECK((lines[4].weight == 4 && lines[4].r == 1));
    CHECK((lines[5].weight == 6 && lines[5].r == 0));
}

TEST_CASE("e_membership accepts Eisenstein derivatives and reports constants apart") {
    // D^2 G6 has mixed weight 10, so it only enters the family at bound 10
    const int t = required_truncation(10) + 5;
    QSeries s = eisenstein_series(6, t).derivative(2).scaled(Rational(3, 7)) +
                QSeries::constant(Rational(7, 3), t);
    const EMembership m = e_membership(s, 10);
    REQUIRE(m.member);
    CHECK(m.constant == Rational(7, 3));
    REQUIRE(m.combination.size() == 1);
    CHECK(m.combination[0].weight == 6);
    CHECK(m.combination[0].r == 2);
    CHECK(m.combination[0].coeff == Rational(3, 7));
}

TEST_CASE("e_membership rejects cusp content with a mismatch certificate") {
    const int t = required_truncation(12) + 5;
    const EMembership m = e_membership(delta_series(t), 12);
    CHECK_FALSE(m.member);
    CHECK(m.mismatch_index >= 0);
    CHECK_FALSE(m.mismatch_value.is_zero());
}

TEST_CASE("e_membership refuses short truncations") {
    CHECK_THROWS_AS(e_membership(QSeries(4), 12), InsufficientTruncationError);
}

TEST_CASE("dh_span_solve recovers random combinations in the cutoff family") {
    auto rng = testutil::make_rng(89);
    std::uniform_int_distribution<int> coin(0, 2);
    const int weight_bound = 6; // family: 2n + k <= 10
    const int t = required_truncation(weight_bound) + 20;
    for (int round = 0; round < 6; ++round) {
        std::vector<DHTerm> picked;
        QSeries s(t);
        for (int k = 6; k <= 10; k += 2) {
            for (int n = 0; 2 * n + k <= 10; ++n) {
                if (coin(rng) == 0) continue;
                const Rational c = testutil::random_nonzero_rational(rng);
                picked.push_back({k, n, c});
                s = s + h_series(k, t, n).scaled(c);
            }
        }
        const DHSpanOutcome out = dh_span_solve(s, weight_bound);
        REQUIRE(out.solved);
        CHECK(out.weight_cutoff == 10);
        REQUIRE(out.combination.size() == picked.size());
        for (std::size_t i = 0; i < picked.size(); ++i) {
            CHECK(out.combination[i].k == picked[i].k);
            CHECK(out.combination[i].n == picked[i].n);
            CHECK(out.combination[i].coeff == picked[i].coeff);
        }
    }
}

TEST_CASE("dh_span_solve reports a residual for out-of-family series") {
    const int t = required_truncation(6) + 10;
    const DHSpanOutcome out = dh_span_solve(delta_series(t), 6);
    CHECK_FALSE(out.solved);
    CHECK(out.mismatch_index >= 0);
    CHECK_FALSE(out.mismatch_value.is_zero());
    // deterministic: a second run reproduces the payload
    const DHSpanOutcome again = dh_span_solve(delta_series(t), 6);
    CHECK(again.mismatch_index == out.mismatch_index);
    CHECK(again.mismatch_value == out.mismatch_value);
}

TEST_CASE("omega_check accepts D^m H_k with the identity combination") {
    for (int k : {6, 8, 12}) {
        for (int m : {0, 2}) {
            const OmegaVerdict v = omega_check(dh_poly(k, m), 300);
            REQUIRE(v.status == OmegaStatus::AcceptUpTo);
            CHECK(v.verified_bound == 300);
            CHECK(v.weight_bound == k + 2 * m);
            CHECK(v.span_cutoff == k + 2 * m + 4);
            REQUIRE(v.combination.size() == 1);
            CHECK(v.combination[0].k == k);
            CHECK(v.combination[0].n == m);
            CHECK(v.combination[0].coeff == Rational(1));
            // independent re-validation: rebuild the combination from the
            // h coefficients and compare expansions to the scanned bound
            const QSeries rebuilt = h_series(v.combination[0].k, 300, v.combination[0].n);
            CHECK(rebuilt.coefficients() == expand(dh_poly(k, m), 300).coefficients());
        }
    }
}

TEST_CASE("omega_check accepts nonnegative combinations across k") {
    const QMPoly f = dh_poly(6, 1).scaled(Rational(2)) + dh_poly(8, 0).scaled(Rational(1, 3));
    const OmegaVerdict v = omega_check(f, 200);
    REQUIRE(v.status == OmegaStatus::AcceptUpTo);
    REQUIRE(v.combination.size() == 2);
    CHECK(v.combination[0].k == 6);
    CHECK(v.combination[0].n == 1);
    CHECK(v.combination[0].coeff == Rational(2));
    CHECK(v.combination[1].k == 8);
    CHECK(v.combination[1].n == 0);
    CHECK(v.combination[1].coeff == Rational(1, 3));
}

TEST_CASE("omega_check rejects G4 on the prime-coefficient rule") {
    const OmegaVerdict v = omega_check(QMPoly::g4(), 100);
    REQUIRE(v.status == OmegaStatus::RejectCoefficient);
    CHECK(v.witness_index == 2);
    CHECK(v.witness_value == Rational(9));
    CHECK(v.reason == CoeffReason::NonzeroAtPrime);
    // re-validation from the raw input
    CHECK(expand(QMPoly::g4(), 2).coefficient(2) == v.witness_value);
    CHECK(is_prime(2));
}

TEST_CASE("omega_check rejects -H6 on negativity") {
    const OmegaVerdict v = omega_check(-h_poly(6), 100);
    REQUIRE(v.status == OmegaStatus::RejectCoefficient);
    CHECK(v.witness_index == 4);
    CHECK(v.witness_value == Rational(-3));
    CHECK(v.reason == CoeffReason::Negative);
    CHECK(h_coeff(6, 4) == -v.witness_value);
}

TEST_CASE("omega_check rejects zero-at-composite") {
    // H6 minus its n=4 contribution embedded via a form that vanishes there:
    // simplest witness: the zero polynomial is zero at the composite 4.
    const OmegaVerdict v = omega_check(QMPoly(), 100);
    REQUIRE(v.status == OmegaStatus::RejectCoefficient);
    CHECK(v.witness_index == 4);
    CHECK(v.reason == CoeffReason::ZeroAtComposite);
}

TEST_CASE("omega_check rejects cuspidal content before anything else") {
    const OmegaVerdict v = omega_check(h_poly(6) + delta_poly(), 100);
    REQUIRE(v.status == OmegaStatus::RejectCuspidal);
    CHECK(v.cusp_weight == 12);
    CHECK(v.cusp_r == 0);
    CHECK(v.cusp_coord_index == 0);
    CHECK(v.cusp_coord == Rational(1));
    // re-validation: the decomposition of the input carries that cusp line
    const Decomposition d = decompose(h_poly(6) + delta_poly());
    REQUIRE_FALSE(d.cusp_free());
    CHECK(d.cusp_part[0].weight == 12);
    CHECK(d.cusp_part[0].r == 0);
    CHECK(d.cusp_part[0].coords[0] == v.cusp_coord);
}

TEST_CASE("omega_check reports not-in-span for a shifted H6") {
    // adding a constant keeps every scanned coefficient but leaves the span
    const QMPoly f = h_poly(6) + QMPoly::constant(Rational(1));
    const OmegaVerdict v = omega_check(f, 200);
    REQUIRE(v.status == OmegaStatus::RejectNotInSpan);
    CHECK(v.residual_index >= 0);
    CHECK_FALSE(v.residual_value.is_zero());
    // deterministic payload
    const OmegaVerdict again = omega_check(f, 200);
    CHECK(again.residual_index == v.residual_index);
    CHECK(again.residual_value == v.residual_value);
}

TEST_CASE("omega_check series path recognizes then re-checks") {
    const int t = std::max(300, required_truncation(6));
    const OmegaVerdict v = omega_check(expand(h_poly(6), t), 6, 300);
    REQUIRE(v.status == OmegaStatus::AcceptUpTo);
    REQUIRE(v.combination.size() == 1);
    CHECK(v.combination[0].k == 6);
    CHECK(v.combination[0].n == 0);

    // a series with no matching polynomial within the bound still gets a
    // coefficient verdict when the scan fails first
    QSeries junk(t);
    junk.set_coefficient(2, Rational(-5));
    const OmegaVerdict w = omega_check(junk, 6, 300);
    CHECK(w.status == OmegaStatus::RejectCoefficient);
    CHECK(w.witness_index == 2);
    CHECK(w.witness_value == Rational(-5));
    CHECK(w.reason == CoeffReason::Negative);
}

TEST_CASE("omega_check series path refuses short truncations") {
    CHECK_THROWS_AS(omega_check(QSeries(10), 6, 300), InsufficientTruncationError);
}

TEST_CASE("status and reason names") {
    CHECK(std::string(to_string(OmegaStatus::AcceptUpTo)) == "ACCEPT_UP_TO");
    CHECK(std::string(to_string(OmegaStatus::RejectCuspidal)) == "REJECT_CUSPIDAL");
    CHECK(std::string(to_string(OmegaStatus::RejectNotInSpan)) == "REJECT_NOT_IN_SPAN");
    CHECK(std::string(to_string(OmegaStatus::RejectCoefficient)) == "REJECT_COEFFICIENT");
    CHECK(std::string(to_string(CoeffReason::Negative)) == "negative");
    CHECK(std::string(to_string(CoeffReason::NonzeroAtPrime)) == "nonzero_at_prime");
    CHECK(std::string(to_string(CoeffReason::ZeroAtComposite)) == "zero_at_composite");
}
