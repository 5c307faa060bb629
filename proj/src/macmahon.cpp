#include "qforms/macmahon.hpp"

#include "qforms/eisenstein_omega.hpp"
#include "qforms/errors.hpp"
#include "qforms/number_theory.hpp"
#include "qforms/quasimodular.hpp"

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>

namespace qforms {

namespace {

void require_vec(const PartVector& vec, int min_entry, const char* what) {
  if (vec.empty()) throw std::invalid_argument(std::string(what) + ": empty part vector");
  for (int v : vec) {
    if (v < min_entry) {
      throw std::invalid_argument(std::string(what) + ": entries must be >= " +
                                  std::to_string(min_entry));
    }
  }
}

long min_distinct_sum(int a) { return static_cast<long>(a) * (a + 1) / 2; }

// QFORMS_THREADS caps the worker count; unset falls back to the hardware.
int thread_cap() {
  if (const char* env = std::getenv("QFORMS_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(0..count-1) across workers. Output slots are preallocated by the
// callers, so scheduling cannot affect results.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(thread_cap()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!err) err = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

Integer power_of(long m, int v) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(m), static_cast<unsigned long>(v));
  return out;
}

// Coefficients 0..n_max of sum_n M_vec(n) q^n. Sizes are absorbed in
// ascending order with levels updated top-down, so entry (i, t) always sums
// over strictly increasing i-tuples of the sizes seen so far.
std::vector<Integer> mm_coefficient_array(const PartVector& vec, int n_max) {
  require_vec(vec, 0, "macmahonesque series");
  if (n_max < 0) throw std::invalid_argument("truncation must be nonnegative");
  const int a = static_cast<int>(vec.size());
  const long n = n_max;

  std::vector<std::vector<Integer>> levels(static_cast<std::size_t>(a) + 1,
                                           std::vector<Integer>(static_cast<std::size_t>(n) + 1));
  levels[0][0] = 1;
  for (long s = 1; s <= n; ++s) {
    for (int i = std::min<long>(a, s); i >= 1; --i) {
      const long floor_below = min_distinct_sum(i - 1); // least index with mass at level i-1
      if (floor_below + s > n) continue;
      const std::vector<Integer>& src = levels[static_cast<std::size_t>(i) - 1];
      std::vector<Integer>& dst = levels[static_cast<std::size_t>(i)];
      for (long m = 1; m * s + floor_below <= n; ++m) {
        const Integer w = power_of(m, vec[static_cast<std::size_t>(i) - 1]);
        const long shift = m * s;
        for (long t = floor_below; t + shift <= n; ++t) {
          const auto ut = static_cast<std::size_t>(t);
          if (mpz_sgn(src[ut].get_mpz_t()) != 0) {
            mpz_addmul(dst[static_cast<std::size_t>(t + shift)].get_mpz_t(), src[ut].get_mpz_t(),
                       w.get_mpz_t());
          }
        }
      }
    }
  }
  return std::move(levels[static_cast<std::size_t>(a)]);
}

} // namespace

Integer macmahonesque_m(const PartVector& vec, long n) {
  require_vec(vec, 0, "macmahonesque_m");
  if (n < 0) throw std::invalid_argument("macmahonesque_m requires n >= 0");
  const int a = static_cast<int>(vec.size());
  if (n < min_distinct_sum(a)) return 0;

  Integer total = 0;
  // Level i picks the i-th smallest size; the budget prune keeps room for
  // one copy each of the remaining strictly larger sizes.
  std::function<void(int, long, long, const Integer&)> walk = [&](int i, long smin, long rem,
                                                                  const Integer& weight) {
    const int left = a - i;
    if (left == 1) {
      for (long s = smin; s <= rem; ++s) {
        if (rem % s == 0) total += weight * power_of(rem / s, vec[static_cast<std::size_t>(i)]);
      }
      return;
    }
    const long tail = static_cast<long>(left) * (left - 1) / 2;
    for (long s = smin; static_cast<long>(left) * s + tail <= rem; ++s) {
      const long completion = static_cast<long>(left - 1) * s + tail;
      for (long m = 1; m * s + completion <= rem; ++m) {
        walk(i + 1, s + 1, rem - m * s,
             Integer(weight * power_of(m, vec[static_cast<std::size_t>(i)])));
      }
    }
  };
  walk(0, 1, n, Integer(1));
  return total;
}

Integer macmahon_m(int a, long n) {
  if (a < 1) throw std::invalid_argument("macmahon_m requires a >= 1");
  return macmahonesque_m(PartVector(static_cast<std::size_t>(a), 1), n);
}

QSeries macmahonesque_series(const PartVector& vec, int truncation) {
  std::vector<Integer> arr = mm_coefficient_array(vec, truncation);
  QSeries out(truncation);
  for (int i = 0; i <= truncation; ++i) {
    out.set_coefficient(i, Rational(arr[static_cast<std::size_t>(i)]));
  }
  return out;
}

QSeries u_series(int a, int truncation) {
  if (a < 1) throw std::invalid_argument("u_series requires a >= 1");
  return macmahonesque_series(PartVector(static_cast<std::size_t>(a), 1), truncation);
}

QSeries u_vec_series(const PartVector& vec, int truncation) {
  require_vec(vec, 1, "u_vec_series");
  return macmahonesque_series(vec, truncation);
}

Rational NPoly::at(long n) const {
  Rational acc;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    acc = acc * Rational(n) + coeffs[i];
  }
  return acc;
}

Rational eval_expression(const MMExpression& e, long n) {
  Rational total;
  for (const MMTerm& term : e.terms) {
    const Rational w = term.poly.at(n);
    if (!w.is_zero()) total += w * Rational(macmahonesque_m(term.vec, n));
  }
  return total;
}

std::vector<Rational> expression_values(const MMExpression& e, int n_max) {
  if (n_max < 0) throw std::invalid_argument("expression_values requires n_max >= 0");
  std::vector<std::vector<Integer>> arrays(e.terms.size());
  parallel_for(e.terms.size(),
               [&](std::size_t i) { arrays[i] = mm_coefficient_array(e.terms[i].vec, n_max); });

  std::vector<Rational> out(static_cast<std::size_t>(n_max) + 1);
  for (long n = 0; n <= n_max; ++n) {
    Rational total;
    for (std::size_t i = 0; i < e.terms.size(); ++i) {
      const Rational w = e.terms[i].poly.at(n);
      if (!w.is_zero()) total += w * Rational(arrays[i][static_cast<std::size_t>(n)]);
    }
    out[static_cast<std::size_t>(n)] = std::move(total);
  }
  return out;
}

std::vector<MMExpression> builtin_expressions() {
  MMExpression deg2;
  deg2.terms.push_back({NPoly{{2, -3, 1}}, {1}});
  deg2.terms.push_back({NPoly{{-8}}, {1, 1}});

  MMExpression deg3;
  deg3.terms.push_back({NPoly{{-8, 18, -13, 3}}, {1}});
  deg3.terms.push_back({NPoly{{212, -120, 12}}, {1, 1}});
  deg3.terms.push_back({NPoly{{-960}}, {1, 1, 1}});

  // Exponents pair with part sizes in ascending size order, as everywhere
  // in this module.
  MMExpression eight;
  eight.terms.push_back({NPoly{{63}}, {2, 2}});
  eight.terms.push_back({NPoly{{-12}}, {0, 3}});
  eight.terms.push_back({NPoly{{-39}}, {1, 3}});
  eight.terms.push_back({NPoly{{-12}}, {3, 1}});
  eight.terms.push_back({NPoly{{80}}, {1, 1, 1}});
  eight.terms.push_back({NPoly{{-12}}, {1, 0, 2}});
  eight.terms.push_back({NPoly{{12}}, {0, 1, 2}});
  eight.terms.push_back({NPoly{{12}}, {0, 0, 3}});

  return {deg2, deg3, eight};
}

std::vector<PartVector> enumerate_part_vectors(int weight_bound) {
  std::vector<PartVector> out;
  for (int a = 1; a <= weight_bound; ++a) {
    PartVector cur(static_cast<std::size_t>(a));
    std::function<void(int, int)> place = [&](int pos, int budget) {
      if (pos == a) {
        out.push_back(cur);
        return;
      }
      for (int v = 0; v <= budget; ++v) {
        cur[static_cast<std::size_t>(pos)] = v;
        place(pos + 1, budget - v);
      }
    };
    place(0, weight_bound - a);
  }
  return out;
}

SearchResult search_prime_detecting(int weight_bound, int verify_bound, int prime_bound,
                                    bool certify) {
  if (weight_bound < 0) throw std::invalid_argument("search: weight bound must be >= 0");
  if (verify_bound < 1) throw std::invalid_argument("search: verification bound must be >= 1");
  if (prime_bound > verify_bound) {
    throw std::invalid_argument("search: prime bound exceeds the verification bound");
  }

  SearchResult res;
  res.weight_bound = weight_bound;
  res.prime_bound = prime_bound;
  res.verify_bound = verify_bound;
  res.vectors = enumerate_part_vectors(weight_bound);
  if (res.vectors.empty()) return res;

  const int even_bound = weight_bound + (weight_bound % 2);
  const int arr_len =
      certify ? std::max(verify_bound, required_truncation(even_bound)) : verify_bound;

  std::vector<std::vector<Integer>> arrays(res.vectors.size());
  parallel_for(res.vectors.size(),
               [&](std::size_t j) { arrays[j] = mm_coefficient_array(res.vectors[j], arr_len); });

  const std::vector<std::uint8_t> prime_small =
      prime_sieve(static_cast<std::uint64_t>(prime_bound));
  std::vector<long> primes;
  for (long p = 2; p <= prime_bound; ++p) {
    if (prime_small[static_cast<std::size_t>(p)]) primes.push_back(p);
  }

  RatMatrix constraints(primes.size(), RatVector(res.vectors.size()));
  for (std::size_t r = 0; r < primes.size(); ++r) {
    for (std::size_t j = 0; j < res.vectors.size(); ++j) {
      constraints[r][j] = Rational(arrays[j][static_cast<std::size_t>(primes[r])]);
    }
  }

  const std::vector<RatVector> basis = nullspace(constraints);
  res.nullspace_dimension = static_cast<int>(basis.size());

  std::vector<std::vector<Integer>> candidates;
  auto add_candidate = [&](const RatVector& v) {
    std::vector<Integer> prim = primitive_integer_vector(v);
    bool zero = true;
    for (const Integer& c : prim) zero = zero && (c == 0);
    if (zero) return;
    for (const std::vector<Integer>& seen : candidates) {
      if (seen == prim) return;
    }
    candidates.push_back(std::move(prim));
  };
  for (const RatVector& b : basis) add_candidate(b);
  const std::size_t lead = std::min<std::size_t>(basis.size(), 8);
  for (std::size_t i = 0; i < lead; ++i) {
    for (std::size_t j = i + 1; j < lead; ++j) {
      RatVector sum(basis[i]), diff(basis[i]);
      for (std::size_t c = 0; c < sum.size(); ++c) {
        sum[c] += basis[j][c];
        diff[c] -= basis[j][c];
      }
      add_candidate(sum);
      add_candidate(diff);
    }
  }

  const std::vector<std::uint8_t> prime_big = prime_sieve(static_cast<std::uint64_t>(verify_bound));
  for (const std::vector<Integer>& cand : candidates) {
    std::vector<Integer> values(static_cast<std::size_t>(arr_len) + 1);
    for (std::size_t j = 0; j < cand.size(); ++j) {
      if (cand[j] == 0) continue;
      for (std::size_t n = 0; n < values.size(); ++n) {
        mpz_addmul(values[n].get_mpz_t(), cand[j].get_mpz_t(), arrays[j][n].get_mpz_t());
      }
    }

    SearchReport report;
    report.prime_bound = prime_bound;
    report.verify_bound = verify_bound;
    bool ok = true;
    for (long n = 1; n <= verify_bound && ok; ++n) {
      const int sign = sgn(values[static_cast<std::size_t>(n)]);
      if (sign < 0) {
        ok = false;
      } else if (prime_big[static_cast<std::size_t>(n)]) {
        ok = (sign == 0);
        report.zero_primes += (sign == 0);
      } else if (n >= 4) {
        ok = (sign > 0);
        report.positive_composites += (sign > 0);
      }
    }
    if (!ok) continue;

    if (certify) {
      QSeries s(arr_len);
      for (int n = 0; n <= arr_len; ++n) {
        s.set_coefficient(n, Rational(values[static_cast<std::size_t>(n)]));
      }
      const OmegaVerdict verdict = omega_check(s, even_bound, verify_bound);
      report.certified = true;
      report.certificate_status = to_string(verdict.status);
    }
    res.candidates.push_back({cand, std::move(report)});
  }
  return res;
}

} // namespace qforms
