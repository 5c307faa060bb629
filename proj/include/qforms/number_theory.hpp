#ifndef QFORMS_NUMBER_THEORY_HPP
#define QFORMS_NUMBER_THEORY_HPP

#include "qforms/rational.hpp"

#include <cstdint>
#include <vector>

namespace qforms {

// Ascending list of positive divisors of n (n >= 1), by trial division.
std::vector<std::uint64_t> divisors(std::uint64_t n);

// sigma_nu(n) = sum of d^nu over the positive divisors d of n. Exact.
Integer sigma(unsigned nu, std::uint64_t n);

// Bernoulli number B_m (m even or m <= 1) via the convolution recurrence
// sum_{j=0}^{m} C(m+1, j) B_j = 0, with B_0 = 1 and B_1 = -1/2.
// Memoized; safe for concurrent callers.
Rational bernoulli(unsigned m);

// Deterministic primality by trial division. Intended range: n <= 1e7.
bool is_prime(std::uint64_t n);

// Bulk interface: flags[i] != 0 iff i is prime, for 0 <= i <= limit.
std::vector<std::uint8_t> prime_sieve(std::uint64_t limit);

} // namespace qforms

#endif
