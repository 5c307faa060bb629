#include "qforms/eisenstein_omega.hpp"

#include "qforms/errors.hpp"
#include "qforms/number_theory.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qforms {

namespace {

void require_h_weight(int k) {
  if (k < 6 || k % 2 != 0) {
    throw std::invalid_argument("H_k requires even k >= 6, got " + std::to_string(k));
  }
}

Rational eisenstein_constant(int two_k) {
  return -bernoulli(static_cast<unsigned>(two_k)) / Rational(2 * two_k);
}

} // namespace

Rational h_coeff(int k, long n) {
  require_h_weight(k);
  if (n < 0) throw std::invalid_argument("h_coeff requires n >= 0");
  if (n == 0) {
    if (k == 6) return (eisenstein_constant(2) - eisenstein_constant(4)) / Rational(6);
    return (eisenstein_constant(k - 4) - eisenstein_constant(k - 2)) / Rational(24);
  }
  const auto un = static_cast<std::uint64_t>(n);
  const Integer nsq = Integer(n) * Integer(n);
  const Rational n2 = Rational(nsq);
  if (k == 6) {
    const Rational s1 = Rational(sigma(1, un));
    const Rational s3 = Rational(sigma(3, un));
    return ((n2 - Rational(n) + Rational(1)) * s1 - s3) / Rational(6);
  }
  const Rational a = Rational(sigma(static_cast<unsigned>(k - 7), un));
  const Rational b = Rational(sigma(static_cast<unsigned>(k - 5), un));
  const Rational c = Rational(sigma(static_cast<unsigned>(k - 3), un));
  return (-n2 * a + (n2 + Rational(1)) * b - c) / Rational(24);
}

QSeries h_series(int k, int truncation, int derivative_order) {
  require_h_weight(k);
  if (derivative_order < 0) throw std::invalid_argument("derivative order must be >= 0");
  QSeries s(truncation);
  for (int n = 0; n <= truncation; ++n) s.set_coefficient(n, h_coeff(k, n));
  return derivative_order > 0 ? s.derivative(derivative_order) : s;
}

const QMPoly& h_poly(int k) {
  require_h_weight(k);
  static std::mutex mu;
  static std::map<int, QMPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;

  QMPoly p;
  if (k == 6) {
    const QMPoly g2 = QMPoly::g2();
    p = (g2.derivative().derivative() - g2.derivative() + g2 - QMPoly::g4()).scaled(Rational(1, 6));
  } else {
    const QMPoly& low = eisenstein_poly(k - 6);
    const QMPoly& mid = eisenstein_poly(k - 4);
    const QMPoly& top = eisenstein_poly(k - 2);
    p = (-low.derivative().derivative() + mid.derivative().derivative() + mid - top)
            .scaled(Rational(1, 24));
  }
  auto inserted = cache.emplace(k, std::move(p));
  return inserted.first->second;
}

HForm h_form(const HFormId& id, int truncation) {
  require_h_weight(id.k);
  if (id.derivative_order < 0) throw std::invalid_argument("derivative order must be >= 0");
  QMPoly p = h_poly(id.k);
  for (int i = 0; i < id.derivative_order; ++i) p = p.derivative();
  return HForm{id, std::move(p), h_series(id.k, truncation, id.derivative_order)};
}

std::vector<ELine> e_lines(int weight_bound) {
  if (weight_bound < 2 || weight_bound % 2 != 0) {
    throw std::invalid_argument("e_lines requires an even weight bound >= 2");
  }
  std::vector<ELine> out;
  for (int w = 2; w <= weight_bound; w += 2) {
    for (int r = 0; w + 2 * r <= weight_bound; ++r) out.push_back({w, r});
  }
  return out;
}

std::vector<std::pair<QMPoly, QSeries>> e_space_basis(int weight_bound, int truncation) {
  std::vector<std::pair<QMPoly, QSeries>> out;
  for (const ELine& line : e_lines(weight_bound)) {
    QMPoly p = eisenstein_poly(line.weight);
    for (int i = 0; i < line.r; ++i) p = p.derivative();
    out.emplace_back(std::move(p), eisenstein_series(line.weight, truncation).derivative(line.r));
  }
  return out;
}

EMembership e_membership(const QSeries& s, int weight_bound) {
  const int need = required_truncation(weight_bound);
  if (s.truncation() < need) {
    throw InsufficientTruncationError("e_membership needs truncation >= " + std::to_string(need) +
                                      ", got " + std::to_string(s.truncation()));
  }
  const std::vector<ELine> lines = e_lines(weight_bound);
  const int t = s.truncation();
  const std::size_t cols = lines.size() + 1; // constant column first

  RatMatrix a(static_cast<std::size_t>(t) + 1, RatVector(cols));
  a[0][0] = Rational(1);
  for (std::size_t j = 0; j < lines.size(); ++j) {
    QSeries col = eisenstein_series(lines[j].weight, t).derivative(lines[j].r);
    for (int n = 0; n <= t; ++n) a[static_cast<std::size_t>(n)][j + 1] = col.coefficient(n);
  }

  SolveResult res = solve_exact(a, s.coefficients());
  if (!res.full_column_rank) {
    throw InsufficientTruncationError(
        "e_membership: basis expansions rank-deficient at truncation " + std::to_string(t));
  }

  EMembership out;
  if (res.consistent) {
    out.member = true;
    out.constant = res.solution[0];
    for (std::size_t j = 0; j < lines.size(); ++j) {
      if (!res.solution[j + 1].is_zero()) {
        out.combination.push_back({lines[j].weight, lines[j].r, res.solution[j + 1]});
      }
    }
  } else {
    out.mismatch_index = res.first_mismatch;
    out.mismatch_value = res.mismatch_value;
  }
  return out;
}

namespace {

std::vector<HFormId> dh_family(int weight_cutoff) {
  std::vector<HFormId> out;
  for (int k = 6; k <= weight_cutoff; k += 2) {
    for (int n = 0; k + 2 * n <= weight_cutoff; ++n) out.push_back({k, n});
  }
  return out;
}

// Solves on a prefix of rows long enough to rank-certify the family, then
// verifies the pinned combination against the remaining coefficients. The
// prefix solution is unique, so a later divergence is still "the first row
// no solution of the preceding rows satisfies" with the same residual the
// full elimination would report.
DHSpanOutcome dh_solve_at_cutoff(const QSeries& s, int weight_cutoff) {
  const std::vector<HFormId> family = dh_family(weight_cutoff);
  const int t = s.truncation();
  int solve_rows = std::min(t, required_truncation(weight_cutoff));

  SolveResult res;
  for (;;) {
    RatMatrix a(static_cast<std::size_t>(solve_rows) + 1, RatVector(family.size()));
    for (std::size_t j = 0; j < family.size(); ++j) {
      QSeries col = h_series(family[j].k, solve_rows, family[j].derivative_order);
      for (int n = 0; n <= solve_rows; ++n) a[static_cast<std::size_t>(n)][j] = col.coefficient(n);
    }
    RatVector b(s.coefficients().begin(), s.coefficients().begin() + solve_rows + 1);
    res = solve_exact(a, b);
    if (family.empty() || res.full_column_rank) break;
    if (solve_rows == t) {
      throw InsufficientTruncationError(
          "span solve: family expansions rank-deficient at truncation " + std::to_string(t));
    }
    solve_rows = t;
  }

  DHSpanOutcome out;
  out.weight_cutoff = weight_cutoff;
  if (!res.consistent) {
    out.mismatch_index = res.first_mismatch;
    out.mismatch_value = res.mismatch_value;
    return out;
  }
  if (t > solve_rows) {
    QSeries combo(t);
    for (std::size_t j = 0; j < family.size(); ++j) {
      if (res.solution[j].is_zero()) continue;
      combo = combo +
              h_series(family[j].k, t, family[j].derivative_order).scaled(res.solution[j]);
    }
    for (int n = solve_rows + 1; n <= t; ++n) {
      if (s.coefficient(n) != combo.coefficient(n)) {
        out.mismatch_index = n;
        out.mismatch_value = s.coefficient(n) - combo.coefficient(n);
        return out;
      }
    }
  }
  out.solved = true;
  for (std::size_t j = 0; j < family.size(); ++j) {
    if (!res.solution[j].is_zero()) {
      out.combination.push_back({family[j].k, family[j].derivative_order, res.solution[j]});
    }
  }
  return out;
}

} // namespace

DHSpanOutcome dh_span_solve(const QSeries& s, int weight_bound) {
  const int need = required_truncation(weight_bound);
  if (s.truncation() < need) {
    throw InsufficientTruncationError("dh_span_solve needs truncation >= " + std::to_string(need) +
                                      ", got " + std::to_string(s.truncation()));
  }
  return dh_solve_at_cutoff(s, weight_bound + 4);
}

const char* to_string(OmegaStatus s) {
  switch (s) {
    case OmegaStatus::AcceptUpTo: return "ACCEPT_UP_TO";
    case OmegaStatus::RejectCuspidal: return "REJECT_CUSPIDAL";
    case OmegaStatus::RejectNotInSpan: return "REJECT_NOT_IN_SPAN";
    case OmegaStatus::RejectCoefficient: return "REJECT_COEFFICIENT";
  }
  return "?";
}

const char* to_string(CoeffReason r) {
  switch (r) {
    case CoeffReason::Negative: return "negative";
    case CoeffReason::NonzeroAtPrime: return "nonzero_at_prime";
    case CoeffReason::ZeroAtComposite: return "zero_at_composite";
  }
  return "?";
}

namespace {

struct ScanHit {
  bool hit = false;
  long n = -1;
  Rational value;
  CoeffReason reason = CoeffReason::Negative;
};

// First violation of the prime-detection coefficient shape over 1..bound:
// below zero anywhere, nonzero at a prime, or zero at a composite (>= 4).
// n = 1 only faces the sign rule.
ScanHit scan_coefficients(const QSeries& s, int bound) {
  const std::vector<std::uint8_t> prime = prime_sieve(static_cast<std::uint64_t>(bound));
  ScanHit out;
  for (int n = 1; n <= bound; ++n) {
    const Rational& v = s.coefficient(n);
    if (v.sign() < 0) {
      out = {true, n, v, CoeffReason::Negative};
      return out;
    }
    if (prime[static_cast<std::size_t>(n)] && !v.is_zero()) {
      out = {true, n, v, CoeffReason::NonzeroAtPrime};
      return out;
    }
    if (n >= 4 && !prime[static_cast<std::size_t>(n)] && v.is_zero()) {
      out = {true, n, v, CoeffReason::ZeroAtComposite};
      return out;
    }
  }
  return out;
}

// Coordinates over the independent family {1} u {D^r G_w}: the ground truth
// both sides of an accepted span identity must share.
using ECoordKey = std::pair<int, int>; // (weight, r)
using ECoordMap = std::map<ECoordKey, Rational>;

void add_coord(ECoordMap& m, int weight, int r, const Rational& c) {
  auto [it, inserted] = m.emplace(ECoordKey{weight, r}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

// D^n H_k read off its defining formula: a four-line combination of
// derivatives of Eisenstein series, no free constant.
ECoordMap dh_member_e_coords(int k, int n) {
  ECoordMap m;
  if (k == 6) {
    add_coord(m, 2, n + 2, Rational(1, 6));
    add_coord(m, 2, n + 1, Rational(-1, 6));
    add_coord(m, 2, n, Rational(1, 6));
    add_coord(m, 4, n, Rational(-1, 6));
  } else {
    add_coord(m, k - 6, n + 2, Rational(-1, 24));
    add_coord(m, k - 4, n + 2, Rational(1, 24));
    add_coord(m, k - 4, n, Rational(1, 24));
    add_coord(m, k - 2, n, Rational(-1, 24));
  }
  return m;
}

} // namespace

OmegaVerdict omega_check(const QMPoly& f, int scan_bound) {
  if (scan_bound < 1) throw std::invalid_argument("omega_check requires a scan bound >= 1");

  OmegaVerdict v;
  v.weight_bound = f.weight_bound();
  v.verified_bound = scan_bound;
  v.span_cutoff = v.weight_bound + 4;

  const Decomposition dec = decompose(f);
  if (!dec.cusp_free()) {
    const CuspTerm& ct = dec.cusp_part.front();
    v.status = OmegaStatus::RejectCuspidal;
    v.cusp_weight = ct.weight;
    v.cusp_r = ct.r;
    for (std::size_t i = 0; i < ct.coords.size(); ++i) {
      if (!ct.coords[i].is_zero()) {
        v.cusp_coord_index = static_cast<int>(i);
        v.cusp_coord = ct.coords[i];
        break;
      }
    }
    return v;
  }

  // Cusp-free, so the decomposition's Eisenstein lines reproduce f exactly
  // and the expansion below is f's own, at any length, without products.
  int t = std::max(scan_bound, required_truncation(v.weight_bound));
  QSeries s = dec.expansion(t);

  const ScanHit hit = scan_coefficients(s, scan_bound);
  if (hit.hit) {
    v.status = OmegaStatus::RejectCoefficient;
    v.witness_index = hit.n;
    v.witness_value = hit.value;
    v.reason = hit.reason;
    return v;
  }

  // f's coordinates over {1} u {D^r G_w}, for the exactness check below.
  ECoordMap f_coords;
  Rational f_constant;
  for (const EisensteinTerm& term : dec.eisenstein_part) {
    if (term.weight == 0) {
      f_constant += term.coeff;
    } else {
      add_coord(f_coords, term.weight, term.r, term.coeff);
    }
  }

  for (int attempt = 0;; ++attempt) {
    DHSpanOutcome span = dh_solve_at_cutoff(s, v.span_cutoff);
    if (!span.solved) {
      v.status = OmegaStatus::RejectNotInSpan;
      v.residual_index = span.mismatch_index;
      v.residual_value = span.mismatch_value;
      return v;
    }
    // The solve matched expansions; certify the identity of forms by
    // comparing coordinates over the independent Eisenstein-derivative
    // family. A mismatch means the truncation was too short to separate the
    // candidates, so extend and retry.
    ECoordMap combo_coords;
    for (const DHTerm& term : span.combination) {
      for (const auto& [key, c] : dh_member_e_coords(term.k, term.n)) {
        add_coord(combo_coords, key.first, key.second, c * term.coeff);
      }
    }
    if (combo_coords == f_coords && f_constant.is_zero()) {
      v.status = OmegaStatus::AcceptUpTo;
      v.combination = std::move(span.combination);
      return v;
    }
    if (attempt >= 4) {
      throw InsufficientTruncationError(
          "omega_check: span solve kept matching expansions without matching forms");
    }
    t *= 2;
    s = dec.expansion(t);
  }
}

OmegaVerdict omega_check(const QSeries& s, int weight_bound, int scan_bound) {
  if (scan_bound < 1) throw std::invalid_argument("omega_check requires a scan bound >= 1");
  const int need = std::max(scan_bound, required_truncation(weight_bound));
  if (s.truncation() < need) {
    throw InsufficientTruncationError("omega_check needs truncation >= " + std::to_string(need) +
                                      ", got " + std::to_string(s.truncation()));
  }

  const RecognizeOutcome ro = recognize(s, weight_bound);
  if (ro.matched) return omega_check(ro.poly, scan_bound);

  OmegaVerdict v;
  v.weight_bound = weight_bound;
  v.verified_bound = scan_bound;
  v.span_cutoff = weight_bound + 4;

  const ScanHit hit = scan_coefficients(s, scan_bound);
  if (hit.hit) {
    v.status = OmegaStatus::RejectCoefficient;
    v.witness_index = hit.n;
    v.witness_value = hit.value;
    v.reason = hit.reason;
    return v;
  }

  // Not quasimodular at this weight bound, so certainly not a combination
  // of the D^n H_k; the recognition residual is the witness.
  v.status = OmegaStatus::RejectNotInSpan;
  v.residual_index = ro.mismatch_index;
  v.residual_value = ro.mismatch_value;
  return v;
}

} // namespace qforms
