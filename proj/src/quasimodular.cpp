#include "qforms/quasimodular.hpp"

#include "qforms/errors.hpp"
#include "qforms/number_theory.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace qforms {

namespace {

void require_even_weight(int w, const char* what) {
  if (w < 0 || w % 2 != 0) {
    throw std::invalid_argument(std::string(what) + " requires an even nonnegative weight, got " +
                                std::to_string(w));
  }
}

void require_truncation(int n) {
  if (n < 0) throw std::invalid_argument("truncation must be nonnegative");
}

} // namespace

QMPoly QMPoly::constant(const Rational& c) { return from_term(Monomial{0, 0, 0}, c); }
QMPoly QMPoly::g2() { return from_term(Monomial{1, 0, 0}, 1); }
QMPoly QMPoly::g4() { return from_term(Monomial{0, 1, 0}, 1); }
QMPoly QMPoly::g6() { return from_term(Monomial{0, 0, 1}, 1); }

QMPoly QMPoly::from_term(const Monomial& m, const Rational& c) {
  QMPoly p;
  p.add_term(m, c);
  return p;
}

int QMPoly::weight_bound() const {
  int w = 0;
  for (const auto& [m, c] : terms_) w = std::max(w, m.weight());
  return w;
}

std::vector<int> QMPoly::weights() const {
  std::vector<int> ws;
  for (const auto& [m, c] : terms_) {
    if (ws.empty() || ws.back() != m.weight()) ws.push_back(m.weight());
  }
  return ws; // MonomialOrder iterates weights ascending
}

QMPoly QMPoly::graded_piece(int w) const {
  QMPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.weight() == w) out.terms_.emplace(m, c);
  }
  return out;
}

void QMPoly::add_term(const Monomial& m, const Rational& c) {
  if (m.g2 < 0 || m.g4 < 0 || m.g6 < 0) throw std::invalid_argument("negative monomial exponent");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

QMPoly& QMPoly::operator+=(const QMPoly& o) {
  if (&o == this) {
    for (auto& [m, c] : terms_) c += c;
    return *this;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

QMPoly& QMPoly::operator-=(const QMPoly& o) {
  if (&o == this) {
    terms_.clear();
    return *this;
  }
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

QMPoly operator*(const QMPoly& a, const QMPoly& b) {
  QMPoly out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      out.add_term(Monomial{ma.g2 + mb.g2, ma.g4 + mb.g4, ma.g6 + mb.g6}, ca * cb);
    }
  }
  return out;
}

QMPoly QMPoly::operator-() const {
  QMPoly out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

QMPoly QMPoly::scaled(const Rational& c) const {
  QMPoly out;
  if (c.is_zero()) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

QMPoly QMPoly::derivative() const {
  static const QMPoly dg2 = [] {
    QMPoly p;
    p.add_term(Monomial{2, 0, 0}, -2);
    p.add_term(Monomial{0, 1, 0}, Rational(5, 6));
    return p;
  }();
  static const QMPoly dg4 = [] {
    QMPoly p;
    p.add_term(Monomial{1, 1, 0}, -8);
    p.add_term(Monomial{0, 0, 1}, Rational(7, 10));
    return p;
  }();
  static const QMPoly dg6 = [] {
    QMPoly p;
    p.add_term(Monomial{1, 0, 1}, -12);
    p.add_term(Monomial{0, 2, 0}, Rational(400, 7));
    return p;
  }();

  QMPoly out;
  for (const auto& [m, c] : terms_) {
    if (m.g2 > 0) {
      out += dg2.scaled(c * m.g2) * from_term(Monomial{m.g2 - 1, m.g4, m.g6}, 1);
    }
    if (m.g4 > 0) {
      out += dg4.scaled(c * m.g4) * from_term(Monomial{m.g2, m.g4 - 1, m.g6}, 1);
    }
    if (m.g6 > 0) {
      out += dg6.scaled(c * m.g6) * from_term(Monomial{m.g2, m.g4, m.g6 - 1}, 1);
    }
  }
  return out;
}

QSeries eisenstein_series(int two_k, int truncation) {
  require_even_weight(two_k, "eisenstein_series");
  if (two_k < 2) throw std::invalid_argument("eisenstein_series requires weight >= 2");
  require_truncation(truncation);
  QSeries s(truncation);
  const unsigned m = static_cast<unsigned>(two_k);
  s.set_coefficient(0, -bernoulli(m) / Rational(2 * two_k));
  for (int n = 1; n <= truncation; ++n) {
    s.set_coefficient(n, Rational(sigma(m - 1, static_cast<std::uint64_t>(n))));
  }
  return s;
}

std::vector<Monomial> monomial_basis(int weight) {
  require_even_weight(weight, "monomial_basis");
  std::vector<Monomial> out;
  for (int c = 0; 6 * c <= weight; ++c) {
    for (int b = 0; 4 * b + 6 * c <= weight; ++b) {
      const int rem = weight - 4 * b - 6 * c;
      out.push_back(Monomial{rem / 2, b, c});
    }
  }
  std::sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) {
    return MonomialOrder{}(x, y);
  });
  return out;
}

std::vector<Monomial> monomial_basis_upto(int bound) {
  require_even_weight(bound, "monomial_basis_upto");
  std::vector<Monomial> out;
  for (int w = 0; w <= bound; w += 2) {
    auto part = monomial_basis(w);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

int dim_weight(int weight) { return static_cast<int>(monomial_basis(weight).size()); }

int dim_upto(int bound) { return static_cast<int>(monomial_basis_upto(bound).size()); }

namespace {

// Process-wide cache of monomial q-expansions. Entries are grown on demand;
// generator powers are built incrementally so a power chain costs one series
// product per new exponent.
std::mutex& expand_mutex() {
  static std::mutex mu;
  return mu;
}

using SeriesCache = std::map<Monomial, QSeries, MonomialOrder>;

SeriesCache& expand_cache() {
  static SeriesCache cache;
  return cache;
}

const QSeries& generator_power_unlocked(int generator_weight, int exponent, int truncation) {
  Monomial m{0, 0, 0};
  (generator_weight == 2 ? m.g2 : generator_weight == 4 ? m.g4 : m.g6) = exponent;
  SeriesCache& cache = expand_cache();
  auto it = cache.find(m);
  if (it != cache.end() && it->second.truncation() >= truncation) return it->second;
  if (exponent == 1) {
    auto inserted = cache.insert_or_assign(m, eisenstein_series(generator_weight, truncation));
    return inserted.first->second;
  }
  const QSeries& lower = generator_power_unlocked(generator_weight, exponent - 1, truncation);
  const QSeries& base = generator_power_unlocked(generator_weight, 1, truncation);
  auto inserted = cache.insert_or_assign(m, lower * base);
  return inserted.first->second;
}

const QSeries& monomial_series_unlocked(const Monomial& m, int truncation) {
  SeriesCache& cache = expand_cache();
  auto it = cache.find(m);
  if (it != cache.end() && it->second.truncation() >= truncation) return it->second;
  if (m.g2 == 0 && m.g4 == 0 && m.g6 == 0) {
    auto inserted = cache.insert_or_assign(m, QSeries::constant(1, truncation));
    return inserted.first->second;
  }
  // Pure powers go through the incremental chain; mixed monomials multiply
  // at most three cached power series.
  int parts = (m.g2 > 0) + (m.g4 > 0) + (m.g6 > 0);
  if (parts == 1) {
    const int gw = m.g2 > 0 ? 2 : m.g4 > 0 ? 4 : 6;
    const int e = m.g2 + m.g4 + m.g6;
    return generator_power_unlocked(gw, e, truncation);
  }
  QSeries acc = QSeries::constant(1, truncation);
  if (m.g2 > 0) acc = acc * generator_power_unlocked(2, m.g2, truncation);
  if (m.g4 > 0) acc = acc * generator_power_unlocked(4, m.g4, truncation);
  if (m.g6 > 0) acc = acc * generator_power_unlocked(6, m.g6, truncation);
  auto inserted = cache.insert_or_assign(m, std::move(acc));
  return inserted.first->second;
}

} // namespace

QSeries monomial_series(const Monomial& m, int truncation) {
  require_truncation(truncation);
  std::lock_guard<std::mutex> lock(expand_mutex());
  return monomial_series_unlocked(m, truncation).truncated(truncation);
}

QSeries expand(const QMPoly& p, int truncation) {
  require_truncation(truncation);
  QSeries out(truncation);
  std::lock_guard<std::mutex> lock(expand_mutex());
  for (const auto& [m, c] : p.terms()) {
    const QSeries& ms = monomial_series_unlocked(m, truncation);
    for (int n = 0; n <= truncation; ++n) {
      const Rational& v = ms.coefficient(n);
      if (!v.is_zero()) out.set_coefficient(n, out.coefficient(n) + c * v);
    }
  }
  return out;
}

const QMPoly& eisenstein_poly(int two_k) {
  require_even_weight(two_k, "eisenstein_poly");
  if (two_k < 2) throw std::invalid_argument("eisenstein_poly requires weight >= 2");

  static std::mutex mu;
  static std::map<int, QMPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(two_k);
  if (it != cache.end()) return it->second;

  QMPoly p;
  if (two_k == 2) {
    p = QMPoly::g2();
  } else if (two_k == 4) {
    p = QMPoly::g4();
  } else if (two_k == 6) {
    p = QMPoly::g6();
  } else {
    // Weight >= 8 Eisenstein series lie in the modular subring: solve for
    // the unique combination of g4^b g6^c of this weight.
    std::vector<Monomial> mons;
    for (const Monomial& m : monomial_basis(two_k)) {
      if (m.g2 == 0) mons.push_back(m);
    }
    int t = static_cast<int>(mons.size()) + 8;
    for (int attempt = 0;; ++attempt) {
      RatMatrix a(static_cast<std::size_t>(t) + 1, RatVector(mons.size()));
      for (std::size_t j = 0; j < mons.size(); ++j) {
        QSeries col = monomial_series(mons[j], t);
        for (int n = 0; n <= t; ++n) a[static_cast<std::size_t>(n)][j] = col.coefficient(n);
      }
      QSeries rhs = eisenstein_series(two_k, t);
      SolveResult res = solve_exact(a, RatVector(rhs.coefficients()));
      if (res.full_column_rank && res.consistent) {
        for (std::size_t j = 0; j < mons.size(); ++j) p.add_term(mons[j], res.solution[j]);
        break;
      }
      if (attempt >= 2) {
        throw std::logic_error("eisenstein_poly: modular monomials failed to capture the series");
      }
      t *= 2;
    }
  }
  auto inserted = cache.emplace(two_k, std::move(p));
  return inserted.first->second;
}

QMPoly delta_poly() {
  QMPoly p;
  p.add_term(Monomial{0, 3, 0}, 8000);
  p.add_term(Monomial{0, 0, 2}, -147);
  return p;
}

QSeries delta_series(int truncation) { return expand(delta_poly(), truncation); }

int cusp_dim(int weight) {
  if (weight < 12 || weight % 2 != 0) return 0;
  int count = 0;
  for (int c = 0; 6 * c <= weight - 12; ++c) {
    if ((weight - 12 - 6 * c) % 4 == 0) ++count;
  }
  return count;
}

std::vector<QSeries> cusp_basis(int weight, int truncation) {
  require_even_weight(weight, "cusp_basis");
  require_truncation(truncation);
  const int dim = cusp_dim(weight);
  if (dim == 0) return {};

  const int t = std::max(truncation, dim + 10);
  RatMatrix rows;
  rows.reserve(static_cast<std::size_t>(dim));
  for (int c = 0; 6 * c <= weight - 12; ++c) {
    if ((weight - 12 - 6 * c) % 4 != 0) continue;
    const int b = (weight - 12 - 6 * c) / 4;
    QSeries s = expand(delta_poly() * QMPoly::from_term(Monomial{0, b, c}, 1), t);
    if (!s.coefficient(0).is_zero()) throw std::logic_error("cusp expansion with constant term");
    RatVector row(static_cast<std::size_t>(t));
    for (int n = 1; n <= t; ++n) row[static_cast<std::size_t>(n - 1)] = s.coefficient(n);
    rows.push_back(std::move(row));
  }

  std::vector<int> pivots = rref(rows);
  for (int i = 0; i < dim; ++i) {
    if (static_cast<std::size_t>(i) >= pivots.size() || pivots[static_cast<std::size_t>(i)] != i) {
      throw std::logic_error("cusp basis is not unit upper-triangular in the first columns");
    }
  }

  std::vector<QSeries> out;
  out.reserve(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    QSeries s(truncation);
    for (int n = 1; n <= truncation; ++n) {
      s.set_coefficient(n, rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - 1)]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

int required_truncation(int weight_bound) {
  require_even_weight(weight_bound, "required_truncation");
  return dim_upto(weight_bound) + 10;
}

RecognizeOutcome recognize(const QSeries& s, int weight_bound) {
  require_even_weight(weight_bound, "recognize");
  const std::vector<Monomial> basis = monomial_basis_upto(weight_bound);
  const int t = s.truncation();
  if (t + 1 < static_cast<int>(basis.size())) {
    throw InsufficientTruncationError(
        "recognize: " + std::to_string(t + 1) + " coefficients cannot pin down " +
        std::to_string(basis.size()) + " monomials; extend the input series");
  }

  RatMatrix a(static_cast<std::size_t>(t) + 1, RatVector(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) {
    QSeries col = monomial_series(basis[j], t);
    for (int n = 0; n <= t; ++n) a[static_cast<std::size_t>(n)][j] = col.coefficient(n);
  }

  SolveResult res = solve_exact(a, s.coefficients());
  if (!res.full_column_rank) {
    throw InsufficientTruncationError(
        "recognize: monomial expansions are rank-deficient at truncation " + std::to_string(t) +
        "; extend the input series");
  }

  RecognizeOutcome out;
  if (res.consistent) {
    out.matched = true;
    for (std::size_t j = 0; j < basis.size(); ++j) out.poly.add_term(basis[j], res.solution[j]);
  } else {
    out.mismatch_index = res.first_mismatch;
    out.mismatch_value = res.mismatch_value;
  }
  return out;
}

bool Decomposition::cusp_free() const { return cusp_part.empty(); }

QSeries Decomposition::expansion(int truncation) const {
  QSeries out(truncation);
  for (const EisensteinTerm& term : eisenstein_part) {
    if (term.weight == 0) {
      out.set_coefficient(0, out.coefficient(0) + term.coeff);
      continue;
    }
    QSeries line = eisenstein_series(term.weight, truncation).derivative(term.r);
    out = out + line.scaled(term.coeff);
  }
  for (const CuspTerm& term : cusp_part) {
    if (term.series.truncation() < truncation) {
      // Re-derive from coordinates rather than reading past the stored series.
      std::vector<QSeries> basis = cusp_basis(term.weight, truncation);
      QSeries line(truncation);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        line = line + basis[i].scaled(term.coords[i]);
      }
      out = out + line.derivative(term.r);
    } else {
      out = out + term.series.truncated(truncation);
    }
  }
  return out;
}

namespace {

// Column layout for one graded solve: Eisenstein lines D^r G_{2k-2r} for
// r = 0..k-1, then each cusp space derivative block.
struct GradedLayout {
  int grade = 0; // 2k
  struct CuspBlock {
    int r = 0;
    int weight = 0;
    int dim = 0;
  };
  std::vector<CuspBlock> cusp_blocks;
  int eis_cols() const { return grade / 2; }
  int total_cols() const {
    int n = eis_cols();
    for (const auto& blk : cusp_blocks) n += blk.dim;
    return n;
  }
};

GradedLayout graded_layout(int grade) {
  GradedLayout layout;
  layout.grade = grade;
  const int k = grade / 2;
  for (int r = 0; r < k; ++r) {
    const int w = grade - 2 * r;
    const int dim = cusp_dim(w);
    if (dim > 0) layout.cusp_blocks.push_back({r, w, dim});
  }
  return layout;
}

} // namespace

Decomposition decompose(const QMPoly& p, int truncation) {
  if (truncation >= 0) require_truncation(truncation);
  Decomposition dec;

  for (int w : p.weights()) {
    const QMPoly piece = p.graded_piece(w);
    if (w == 0) {
      dec.eisenstein_part.push_back({0, 0, piece.terms().begin()->second});
      continue;
    }

    const GradedLayout layout = graded_layout(w);
    const int k = w / 2;
    int t = layout.total_cols() + 10;

    SolveResult res;
    for (int attempt = 0;; ++attempt) {
      RatMatrix a(static_cast<std::size_t>(t) + 1,
                  RatVector(static_cast<std::size_t>(layout.total_cols())));
      int col = 0;
      for (int r = 0; r < k; ++r, ++col) {
        QSeries line = eisenstein_series(w - 2 * r, t).derivative(r);
        for (int n = 0; n <= t; ++n) a[static_cast<std::size_t>(n)][col] = line.coefficient(n);
      }
      for (const auto& blk : layout.cusp_blocks) {
        std::vector<QSeries> basis = cusp_basis(blk.weight, t);
        for (const QSeries& elem : basis) {
          QSeries line = elem.derivative(blk.r);
          for (int n = 0; n <= t; ++n) a[static_cast<std::size_t>(n)][col] = line.coefficient(n);
          ++col;
        }
      }
      QSeries rhs = expand(piece, t);
      res = solve_exact(a, rhs.coefficients());
      if (res.full_column_rank) break;
      if (attempt >= 4) {
        throw InsufficientTruncationError(
            "decompose: graded basis stayed rank-deficient after doubling");
      }
      t *= 2;
    }
    if (!res.consistent) {
      throw std::logic_error("decompose: graded piece escaped the Eisenstein and cusp lines");
    }

    const int out_t = truncation >= 0 ? truncation : t;
    int col = 0;
    for (int r = 0; r < k; ++r, ++col) {
      if (!res.solution[static_cast<std::size_t>(col)].is_zero()) {
        dec.eisenstein_part.push_back({r, w - 2 * r, res.solution[static_cast<std::size_t>(col)]});
      }
    }
    for (const auto& blk : layout.cusp_blocks) {
      RatVector coords(res.solution.begin() + col, res.solution.begin() + col + blk.dim);
      col += blk.dim;
      bool all_zero = true;
      for (const Rational& c : coords) all_zero = all_zero && c.is_zero();
      if (all_zero) continue;
      std::vector<QSeries> basis = cusp_basis(blk.weight, out_t);
      QSeries combined(out_t);
      for (std::size_t i = 0; i < basis.size(); ++i) {
        combined = combined + basis[i].scaled(coords[i]);
      }
      dec.cusp_part.push_back({blk.r, blk.weight, std::move(coords), combined.derivative(blk.r)});
    }
  }
  return dec;
}

std::pair<int, int> dim_check(int two_k) {
  require_even_weight(two_k, "dim_check");
  const int left = dim_weight(two_k);
  if (two_k == 0) return {left, 1};
  const GradedLayout layout = graded_layout(two_k);
  return {left, layout.total_cols()};
}

} // namespace qforms
