#include "qforms/linalg.hpp"

#include "test_util.hpp"

#include <doctest.h>

using namespace qforms;

namespace {

RatMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
    RatMatrix m;
    for (const auto& r : rows) {
        RatVector row;
        for (long x : r) row.push_back(Rational(x));
        m.push_back(std::move(row));
    }
    return m;
}

RatVector mul(const RatMatrix& a, const RatVector& x) {
    RatVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < x.size(); ++j) acc += a[i][j] * x[j];
        out[i] = acc;
    }
    return out;
}

} // namespace

TEST_CASE("rref produces unit pivots and reports pivot columns") {
    RatMatrix m = mat({{2, 4, 6}, {1, 2, 4}});
    const std::vector<int> pivots = rref(m);
    CHECK(pivots == std::vector<int>{0, 2});
    CHECK(m[0] == RatVector{Rational(1), Rational(2), Rational(0)});
    CHECK(m[1] == RatVector{Rational(0), Rational(0), Rational(1)});
}

TEST_CASE("rank") {
    CHECK(rank(mat({{1, 2, 3}, {2, 4, 6}, {3, 6, 9}})) == 1);
    CHECK(rank(mat({{1, 0}, {0, 1}})) == 2);
    CHECK(rank(mat({{0, 0}, {0, 0}})) == 0);
}

TEST_CASE("nullspace vectors annihilate the matrix") {
    RatMatrix a = mat({{1, 2, 3}, {2, 4, 6}});
    const std::vector<RatVector> ns = nullspace(a);
    REQUIRE(ns.size() == 2);
    for (const RatVector& v : ns) {
        for (const Rational& r : mul(a, v)) CHECK(r.is_zero());
    }
    // one marker 1 per free column, free columns 1 and 2
    CHECK(ns[0][1] == Rational(1));
    CHECK(ns[0][2] == Rational(0));
    CHECK(ns[1][1] == Rational(0));
    CHECK(ns[1][2] == Rational(1));
}

TEST_CASE("solve_exact on a unique system") {
    RatMatrix a = mat({{2, 1}, {1, -1}, {3, 0}});
    RatVector b{Rational(5), Rational(1), Rational(6)};
    const SolveResult res = solve_exact(a, b);
    CHECK(res.consistent);
    CHECK(res.full_column_rank);
    CHECK(res.solution == RatVector{Rational(2), Rational(1)});
}

TEST_CASE("solve_exact zeroes free coordinates on underdetermined systems") {
    RatMatrix a = mat({{1, 2, 0}, {0, 0, 1}});
    RatVector b{Rational(3), Rational(4)};
    const SolveResult res = solve_exact(a, b);
    CHECK(res.consistent);
    CHECK_FALSE(res.full_column_rank);
    CHECK(res.solution == RatVector{Rational(3), Rational(0), Rational(4)});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(mul(a, res.solution)[i] == b[i]);
}

TEST_CASE("solve_exact reports the first unresolvable row and its residual") {
    // x = 1 then x = 2: row 1 is the first row inconsistent with what precedes.
    SolveResult res = solve_exact(mat({{1}, {1}}), {Rational(1), Rational(2)});
    CHECK_FALSE(res.consistent);
    CHECK(res.first_mismatch == 1);
    CHECK(res.mismatch_value == Rational(1));

    // The residual is taken against the rows before the failing one, so it is
    // independent of the rows after it.
    res = solve_exact(mat({{1, 1}, {1, 1}, {0, 1}}),
                      {Rational(1), Rational(5), Rational(0)});
    CHECK_FALSE(res.consistent);
    CHECK(res.first_mismatch == 1);
    CHECK(res.mismatch_value == Rational(4));

    // A zero row with zero right-hand side resolves fine; mismatch reported
    // only for a genuinely unresolvable row.
    res = solve_exact(mat({{0, 0}, {1, 0}, {0, 0}}),
                      {Rational(0), Rational(2), Rational(3)});
    CHECK_FALSE(res.consistent);
    CHECK(res.first_mismatch == 2);
    CHECK(res.mismatch_value == Rational(3));
}

TEST_CASE("solve_exact recovers random planted solutions") {
    auto rng = testutil::make_rng(61);
    for (int round = 0; round < 25; ++round) {
        const std::size_t rows = 6, cols = 4;
        RatMatrix a(rows, RatVector(cols));
        for (auto& row : a)
            for (auto& x : row) x = testutil::random_rational(rng);
        RatVector planted(cols);
        for (auto& x : planted) x = testutil::random_rational(rng);
        const RatVector b = mul(a, planted);
        const SolveResult res = solve_exact(a, b);
        REQUIRE(res.consistent);
        CHECK(mul(a, res.solution) == b);
        if (res.full_column_rank) CHECK(res.solution == planted);
    }
}

TEST_CASE("primitive_integer_vector scales and orients") {
    const std::vector<Integer> v =
        primitive_integer_vector({Rational(1, 2), Rational(-1, 3), Rational(0)});
    CHECK(v == std::vector<Integer>{Integer(3), Integer(-2), Integer(0)});
    const std::vector<Integer> w =
        primitive_integer_vector({Rational(-2), Rational(4), Rational(-6)});
    CHECK(w == std::vector<Integer>{Integer(1), Integer(-2), Integer(3)});
    const std::vector<Integer> z = primitive_integer_vector({Rational(), Rational()});
    CHECK(z == std::vector<Integer>{Integer(0), Integer(0)});
}
