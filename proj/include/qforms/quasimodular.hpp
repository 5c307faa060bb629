#ifndef QFORMS_QUASIMODULAR_HPP
#define QFORMS_QUASIMODULAR_HPP

#include "qforms/linalg.hpp"
#include "qforms/qseries.hpp"
#include "qforms/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qforms {

// Monomial g2^a g4^b g6^c in the three Eisenstein generators.
// Its weight is 2a + 4b + 6c.
struct Monomial {
  int g2 = 0;
  int g4 = 0;
  int g6 = 0;

  int weight() const { return 2 * g2 + 4 * g4 + 6 * g6; }

  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.g2 == y.g2 && x.g4 == y.g4 && x.g6 == y.g6;
  }
};

// Listing order used for bases, polynomial terms and serialization:
// weight ascending, and within a weight the g2-dominant monomial first
// (lexicographically descending exponents). Weight 6 lists as
// g2^3, g2 g4, g6.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.weight() != y.weight()) return x.weight() < y.weight();
    if (x.g2 != y.g2) return x.g2 > y.g2;
    if (x.g4 != y.g4) return x.g4 > y.g4;
    return x.g6 > y.g6;
  }
};

// Exact-rational polynomial in the generators g2, g4, g6: a quasimodular
// form of mixed weight. Zero coefficients are never stored.
class QMPoly {
public:
  using TermMap = std::map<Monomial, Rational, MonomialOrder>;

  QMPoly() = default;

  static QMPoly constant(const Rational& c);
  static QMPoly g2();
  static QMPoly g4();
  static QMPoly g6();
  static QMPoly from_term(const Monomial& m, const Rational& c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  // Largest monomial weight present; 0 for constants and the zero polynomial.
  int weight_bound() const;
  // Sorted distinct weights of the monomials present.
  std::vector<int> weights() const;
  // The part of the polynomial of pure weight w.
  QMPoly graded_piece(int w) const;

  void add_term(const Monomial& m, const Rational& c);

  QMPoly& operator+=(const QMPoly& o);
  QMPoly& operator-=(const QMPoly& o);
  friend QMPoly operator+(QMPoly a, const QMPoly& b) { return a += b; }
  friend QMPoly operator-(QMPoly a, const QMPoly& b) { return a -= b; }
  friend QMPoly operator*(const QMPoly& a, const QMPoly& b);
  QMPoly operator-() const;
  QMPoly scaled(const Rational& c) const;

  // The q d/dq derivation, acting through the generator rules
  //   Dg2 = -2 g2^2 + (5/6) g4
  //   Dg4 = -8 g2 g4 + (7/10) g6
  //   Dg6 = -12 g2 g6 + (400/7) g4^2
  // extended by Leibniz. Raises each pure weight by 2.
  QMPoly derivative() const;

  friend bool operator==(const QMPoly& a, const QMPoly& b) { return a.terms_ == b.terms_; }

private:
  TermMap terms_;
};

// Weight two_k Eisenstein expansion: constant term -B_{2k}/(4k), coefficient
// of q^n equal to sigma_{2k-1}(n). Requires two_k even, >= 2.
QSeries eisenstein_series(int two_k, int truncation);

// All monomials of the given pure weight, in MonomialOrder.
std::vector<Monomial> monomial_basis(int weight);
// Concatenation of the pure-weight bases for weights 0, 2, ..., bound.
std::vector<Monomial> monomial_basis_upto(int bound);
int dim_weight(int weight);
int dim_upto(int bound);

// Exact q-expansion of a polynomial in the generators. Generator powers and
// monomial expansions are cached process-wide; results are deterministic.
QSeries expand(const QMPoly& p, int truncation);
QSeries monomial_series(const Monomial& m, int truncation);

// G_{two_k} written in the ring: the generators themselves for weights
// 2, 4, 6, and for two_k >= 8 the unique g4/g6 polynomial with matching
// expansion. Cached.
const QMPoly& eisenstein_poly(int two_k);

// Normalized discriminant cusp form: 8000 g4^3 - 147 g6^2, leading
// coefficient 1 at q.
QMPoly delta_poly();
QSeries delta_series(int truncation);

// Dimension of the weight-w cusp space as realized by delta times the pure
// modular monomials g4^b g6^c with 4b + 6c = w - 12.
int cusp_dim(int weight);

// Echelonized expansions of the weight-w cusp space: element i has leading
// term q^{i+1} and zeros at q^1..q^i (unit upper-triangular basis matrix).
std::vector<QSeries> cusp_basis(int weight, int truncation);

// Starting expansion order for recognition at mixed weight <= bound:
// dim of the space plus margin. Rank certification may demand more; callers
// that generate their own expansions double until the solve certifies.
int required_truncation(int weight_bound);

struct RecognizeOutcome {
  bool matched = false;
  QMPoly poly;             // set when matched
  int mismatch_index = -1; // first q-power where no candidate matches
  Rational mismatch_value; // input minus best candidate at that index
};

// Finds the unique polynomial of mixed weight <= weight_bound whose
// expansion matches s up to s.truncation(). Throws
// InsufficientTruncationError when the truncated monomial expansions cannot
// certify uniqueness (rank-deficient system).
RecognizeOutcome recognize(const QSeries& s, int weight_bound);

// One Eisenstein line of a decomposition: coeff * D^r G_weight.
// weight == 0 encodes the plain constant coeff (derivatives kill it).
struct EisensteinTerm {
  int r = 0;
  int weight = 0;
  Rational coeff;
};

// One cuspidal line: the D^r image of a pure-weight cusp form, stored both
// as coordinates over cusp_basis(weight) and as an expansion.
struct CuspTerm {
  int r = 0;
  int weight = 0;
  RatVector coords;
  QSeries series;
};

struct Decomposition {
  std::vector<EisensteinTerm> eisenstein_part;
  std::vector<CuspTerm> cusp_part;

  bool cusp_free() const;
  // Sum of all parts re-expanded at the given truncation.
  QSeries expansion(int truncation) const;
};

// Splits a polynomial gradewise into Eisenstein-derivative lines and
// derivatives of cusp forms. Coordinates are exact; the solve is certified
// by full column rank (expansion order doubles until it is). Output series
// are produced at `truncation`, or at the internal solve order if negative.
Decomposition decompose(const QMPoly& p, int truncation = -1);

// Independent dimension count for a pure weight 2k: number of monomials on
// the left, Eisenstein lines plus cusp dimensions on the right.
std::pair<int, int> dim_check(int two_k);

} // namespace qforms

#endif
