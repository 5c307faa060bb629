#ifndef QFORMS_TEST_UTIL_HPP
#define QFORMS_TEST_UTIL_HPP

#include "qforms/qseries.hpp"
#include "qforms/quasimodular.hpp"
#include "qforms/rational.hpp"

#include <random>

namespace qforms::testutil {

// Fixed-seed generators keep every property test reproducible.
inline std::mt19937 make_rng(unsigned seed) { return std::mt19937(seed); }

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-9, 9);
    static const long dens[] = {1, 2, 3, 4, 6, 12};
    std::uniform_int_distribution<std::size_t> den(0, 5);
    return Rational(num(rng), dens[den(rng)]);
}

inline Rational random_nonzero_rational(std::mt19937& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (!r.is_zero()) return r;
    }
}

inline QSeries random_series(std::mt19937& rng, int truncation) {
    QSeries s(truncation);
    for (int n = 0; n <= truncation; ++n) s.set_coefficient(n, random_rational(rng));
    return s;
}

inline QMPoly random_poly(std::mt19937& rng, int weight_bound, int max_terms) {
    const std::vector<Monomial> basis = monomial_basis_upto(weight_bound);
    std::uniform_int_distribution<int> count(1, max_terms);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    QMPoly p;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) p.add_term(basis[pick(rng)], random_nonzero_rational(rng));
    return p;
}

} // namespace qforms::testutil

#endif
