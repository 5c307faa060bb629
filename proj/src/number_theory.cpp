#include "qforms/number_theory.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace qforms {

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("divisors: n must be positive");
  std::vector<std::uint64_t> small, large;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

Integer sigma(unsigned nu, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("sigma: n must be positive");
  Integer total = 0;
  Integer power;
  for (std::uint64_t d : divisors(n)) {
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(d), nu);
    total += power;
  }
  return total;
}

Rational bernoulli(unsigned m) {
  if (m > 1 && m % 2 != 0)
    throw std::invalid_argument("bernoulli: odd index above 1 not supported");

  static std::mutex mu;
  static std::vector<Rational> cache; // cache[j] = B_j, filled densely from 0

  std::lock_guard<std::mutex> lock(mu);
  if (cache.empty()) {
    cache.emplace_back(1);     // B_0
    cache.emplace_back(-1, 2); // B_1
  }
  while (cache.size() <= m) {
    unsigned i = static_cast<unsigned>(cache.size());
    // sum_{j=0}^{i} C(i+1, j) B_j = 0  =>  B_i = -(1/(i+1)) sum_{j<i} C(i+1, j) B_j
    Rational acc;
    Integer binom;
    for (unsigned j = 0; j < i; ++j) {
      if (cache[j].is_zero()) continue;
      mpz_bin_uiui(binom.get_mpz_t(), i + 1, j);
      acc += cache[j] * Rational(binom);
    }
    cache.push_back(-acc / Rational(static_cast<long>(i) + 1));
  }
  return cache[m];
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::vector<std::uint8_t> prime_sieve(std::uint64_t limit) {
  std::vector<std::uint8_t> flags(limit + 1, 1);
  flags[0] = 0;
  if (limit >= 1) flags[1] = 0;
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (!flags[p]) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) flags[m] = 0;
  }
  return flags;
}

} // namespace qforms
