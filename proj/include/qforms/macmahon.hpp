#ifndef QFORMS_MACMAHON_HPP
#define QFORMS_MACMAHON_HPP

#include "qforms/qseries.hpp"
#include "qforms/rational.hpp"

#include <string>
#include <vector>

namespace qforms {

// Exponent vector (v_1, ..., v_a) indexing a MacMahonesque function: the
// representation n = m_1 s_1 + ... + m_a s_a over strictly increasing part
// sizes s_i and multiplicities m_i >= 1 contributes m_1^{v_1}...m_a^{v_a}.
// Entries may be zero (a factor counts representations without weighting);
// the classical M_a takes all entries 1.
using PartVector = std::vector<int>;

// M_a(n): sum of part-multiplicity products over partitions of n with
// exactly a distinct part sizes. Exact; 0 when no representation exists.
Integer macmahon_m(int a, long n);

// M_vec(n): the weighted variant. Direct enumeration of representations;
// the independent generating-series route is macmahonesque_series.
Integer macmahonesque_m(const PartVector& vec, long n);

// Sum over size tuples of the per-size factors sum_m m^{v_i} q^{m s_i},
// giving sum_n M_vec(n) q^n. Accepts zero entries.
QSeries macmahonesque_series(const PartVector& vec, int truncation);

// The classical generating function of M_a.
QSeries u_series(int a, int truncation);

// Generating function built from a part vector; entries must be >= 1 here
// (the zero-entry generalization stays with macmahonesque_series).
QSeries u_vec_series(const PartVector& vec, int truncation);

// Polynomial in n with rational coefficients, ascending powers.
struct NPoly {
  std::vector<Rational> coeffs;

  Rational at(long n) const;
};

// A sum of poly(n) * M_vec(n) terms; the vectors are distinct.
struct MMTerm {
  NPoly poly;
  PartVector vec;
};

struct MMExpression {
  std::vector<MMTerm> terms;
};

// Exact value at one n by direct enumeration.
Rational eval_expression(const MMExpression& e, long n);

// Values at 0..n_max through the generating-series route: one series per
// distinct vector, then polynomial weights per index. Much faster than
// per-n enumeration on ranges; the two routes are cross-checked in tests.
std::vector<Rational> expression_values(const MMExpression& e, int n_max);

// The three prime-detecting expressions: the degree-2 and degree-3
// inequalities in M_1, M_2, M_3, and the 8-term MacMahonesque combination.
// Each is nonnegative with zeros exactly at the primes (verified up to the
// bounds exercised in the tests; see detect-primes).
std::vector<MMExpression> builtin_expressions();

// All part vectors with sum(v_i + 1) <= weight_bound, shortest first, then
// lexicographically ascending. This weight is the recorded search norm.
std::vector<PartVector> enumerate_part_vectors(int weight_bound);

struct SearchReport {
  int prime_bound = 0;        // vanishing imposed at primes <= this
  int verify_bound = 0;       // scanned over [1, verify_bound]
  int zero_primes = 0;        // primes <= verify_bound, all with value 0
  int positive_composites = 0;// composites in [4, verify_bound], all positive
  bool certified = false;     // omega_check ran on the recognized series
  std::string certificate_status; // its verdict when certified
};

struct SearchCandidate {
  std::vector<Integer> coeffs; // primitive integers over the enumerated vectors
  SearchReport report;
};

struct SearchResult {
  int weight_bound = 0;
  int prime_bound = 0;
  int verify_bound = 0;
  std::vector<PartVector> vectors;      // column order of the coefficients
  int nullspace_dimension = 0;
  std::vector<SearchCandidate> candidates; // verified survivors only
};

// Searches for prime-detecting combinations sum c_vec M_vec: builds the
// matrix M_vec(p) over primes p <= prime_bound, takes its rational
// nullspace, and keeps the primitive integer vectors (nullspace basis plus
// pairwise sums and differences of the leading basis vectors) that vanish
// at every prime <= verify_bound, are positive at every composite in
// [4, verify_bound], and are nonnegative on [1, verify_bound]. With certify
// set, each survivor's generating series is recognized in the quasimodular
// ring and run through omega_check, recording the verdict.
SearchResult search_prime_detecting(int weight_bound, int verify_bound, int prime_bound,
                                    bool certify = false);

} // namespace qforms

#endif
