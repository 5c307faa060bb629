#ifndef QFORMS_EISENSTEIN_OMEGA_HPP
#define QFORMS_EISENSTEIN_OMEGA_HPP

#include "qforms/quasimodular.hpp"

#include <vector>

namespace qforms {

// Names the form D^n H_k.
struct HFormId {
  int k = 6;                // even, >= 6
  int derivative_order = 0; // n >= 0

  friend bool operator==(const HFormId& a, const HFormId& b) {
    return a.k == b.k && a.derivative_order == b.derivative_order;
  }
};

// Coefficient of q^n in H_k. For n >= 1:
//   k = 6:  ((n^2 - n + 1) sigma_1(n) - sigma_3(n)) / 6
//   k >= 8: (-n^2 sigma_{k-7}(n) + (n^2 + 1) sigma_{k-5}(n) - sigma_{k-3}(n)) / 24
// For n = 0 the constant assembled from the Eisenstein constants (the
// derivation kills constants). Nonnegative for n >= 2, zero exactly at the
// primes.
Rational h_coeff(int k, long n);

// q-expansion of D^m H_k straight from h_coeff (no series products).
QSeries h_series(int k, int truncation, int derivative_order = 0);

// H_k in the generator ring:
//   H_6    = (1/6)((D^2 - D + 1) G2 - G4)
//   H_k    = (1/24)(-D^2 G_{k-6} + (D^2 + 1) G_{k-4} - G_{k-2}),  k >= 8
// Cached.
const QMPoly& h_poly(int k);

struct HForm {
  HFormId id;
  QMPoly poly;
  QSeries series;
};

// Symbol and expansion for D^n H_k; the two agree under expand().
HForm h_form(const HFormId& id, int truncation);

// One basis line of the Eisenstein space: D^r G_weight.
struct ELine {
  int weight = 0;
  int r = 0;
};

// The family {D^r G_{2j} : 2j >= 2, 2j + 2r <= weight_bound}, weight major,
// derivative order minor. Requires weight_bound >= 2.
std::vector<ELine> e_lines(int weight_bound);
std::vector<std::pair<QMPoly, QSeries>> e_space_basis(int weight_bound, int truncation);

struct ETerm {
  int weight = 0;
  int r = 0;
  Rational coeff;
};

struct EMembership {
  bool member = false;
  Rational constant;              // additive constant, reported apart from the lines
  std::vector<ETerm> combination; // nonzero coordinates, e_lines order
  int mismatch_index = -1;        // set when not a member
  Rational mismatch_value;
};

// Decides membership of s in span{1} + span(e_space_basis(weight_bound)) by
// an exact certified solve on the truncated expansions. Requires
// s.truncation() >= required_truncation(weight_bound); throws
// InsufficientTruncationError below that or on a rank-deficient system.
EMembership e_membership(const QSeries& s, int weight_bound);

struct DHTerm {
  int k = 0;
  int n = 0; // derivative order
  Rational coeff;
};

struct DHSpanOutcome {
  bool solved = false;
  std::vector<DHTerm> combination; // nonzero coordinates, k major, n minor
  int weight_cutoff = 0;           // family restricted to 2n + k <= weight_cutoff
  int mismatch_index = -1;         // set when unsolvable
  Rational mismatch_value;
};

// Solves s = sum c_{n,k} D^n H_k over the finite family with
// 2n + k <= weight_bound + 4. The bound is a recorded cutoff: the true
// family is infinite, but a member of top graded weight above the cutoff
// cannot cancel down to weight <= weight_bound. Same truncation demands as
// e_membership.
DHSpanOutcome dh_span_solve(const QSeries& s, int weight_bound);

enum class OmegaStatus {
  AcceptUpTo,
  RejectCuspidal,
  RejectNotInSpan,
  RejectCoefficient,
};

enum class CoeffReason {
  Negative,
  NonzeroAtPrime,
  ZeroAtComposite,
};

const char* to_string(OmegaStatus s);
const char* to_string(CoeffReason r);

// Verdict of the prime-detection check. Every payload is re-checkable from
// the input alone: re-deriving the cited coefficient, cusp coordinate or
// residual reproduces the recorded values.
struct OmegaVerdict {
  OmegaStatus status = OmegaStatus::RejectCoefficient;
  int weight_bound = 0;   // mixed-weight bound the check ran with
  int verified_bound = 0; // N: coefficients 1..N scanned

  // AcceptUpTo: the exact combination over {D^n H_k}, and the cutoff used.
  std::vector<DHTerm> combination;
  int span_cutoff = 0;

  // RejectCuspidal: first nonzero cusp line of the decomposition.
  int cusp_weight = 0;
  int cusp_r = 0;
  int cusp_coord_index = -1; // position within cusp_basis(cusp_weight)
  Rational cusp_coord;

  // RejectNotInSpan: first unresolvable expansion index and its residual.
  int residual_index = -1;
  Rational residual_value;

  // RejectCoefficient: witness coefficient violating the prime-detection
  // shape. n = 1 is exempt from the vanishing rule but must be nonnegative;
  // composites start at 4.
  long witness_index = -1;
  Rational witness_value;
  CoeffReason reason = CoeffReason::Negative;
};

// Prime-detection check. Gates run in verdict-precedence order: cuspidal
// content rejects first, then the coefficient scan over 1..N, then span
// membership; survivors are accepted up to N only (acceptance is never
// claimed beyond the scanned bound).
OmegaVerdict omega_check(const QMPoly& f, int scan_bound);

// Series entry point: recognizes the series at the declared weight bound
// first. Requires truncation >= max(scan_bound,
// required_truncation(weight_bound)).
OmegaVerdict omega_check(const QSeries& s, int weight_bound, int scan_bound);

} // namespace qforms

#endif
