#include "qforms/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace qforms {

namespace {

void check_rectangular(const RatMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m.front().size())
      throw std::invalid_argument("linalg: ragged matrix");
}

} // namespace

std::vector<int> rref(RatMatrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  check_rectangular(m);
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m.front().size());

  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i) {
      if (!m[i][c].is_zero()) { pivot = i; break; }
    }
    if (pivot < 0) continue;
    std::swap(m[r], m[pivot]);

    Rational inv = Rational(1) / m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational factor = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(RatMatrix m) {
  return static_cast<int>(rref(m).size());
}

SolveResult solve_exact(const RatMatrix& a, const RatVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("linalg: rows of A and b differ");
  SolveResult res;
  if (a.empty()) { res.full_column_rank = true; res.consistent = true; return res; }
  check_rectangular(a);
  const int rows = static_cast<int>(a.size());
  const int cols = static_cast<int>(a.front().size());

  // Online elimination: rows are absorbed in order into a fully reduced
  // pivot set. A row that reduces to zero on the A side but nonzero on the
  // right-hand side cannot be satisfied by any solution of the rows before
  // it, and its reduced right-hand entry is the same for every such
  // solution; that row index and residual are what gets reported.
  std::vector<int> pivot_cols;
  RatMatrix pivot_rows; // each row: cols A-entries then the reduced rhs

  for (int i = 0; i < rows; ++i) {
    RatVector row(a[i]);
    row.push_back(b[i]);
    for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
      const int c = pivot_cols[k];
      if (row[static_cast<std::size_t>(c)].is_zero()) continue;
      const Rational f = row[static_cast<std::size_t>(c)];
      for (int j = 0; j <= cols; ++j) {
        if (!pivot_rows[k][static_cast<std::size_t>(j)].is_zero())
          row[static_cast<std::size_t>(j)] -= f * pivot_rows[k][static_cast<std::size_t>(j)];
      }
    }
    int lead = -1;
    for (int j = 0; j < cols; ++j) {
      if (!row[static_cast<std::size_t>(j)].is_zero()) { lead = j; break; }
    }
    if (lead < 0) {
      if (!row[static_cast<std::size_t>(cols)].is_zero() && res.first_mismatch < 0) {
        res.first_mismatch = i;
        res.mismatch_value = row[static_cast<std::size_t>(cols)];
      }
      continue;
    }
    const Rational inv = Rational(1) / row[static_cast<std::size_t>(lead)];
    for (int j = lead; j <= cols; ++j) row[static_cast<std::size_t>(j)] *= inv;
    for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
      if (pivot_rows[k][static_cast<std::size_t>(lead)].is_zero()) continue;
      const Rational f = pivot_rows[k][static_cast<std::size_t>(lead)];
      for (int j = lead; j <= cols; ++j) {
        if (!row[static_cast<std::size_t>(j)].is_zero())
          pivot_rows[k][static_cast<std::size_t>(j)] -= f * row[static_cast<std::size_t>(j)];
      }
    }
    auto pos = std::lower_bound(pivot_cols.begin(), pivot_cols.end(), lead);
    pivot_rows.insert(pivot_rows.begin() + (pos - pivot_cols.begin()), std::move(row));
    pivot_cols.insert(pos, lead);
  }

  res.full_column_rank = (static_cast<int>(pivot_cols.size()) == cols);
  res.consistent = (res.first_mismatch < 0);
  res.solution.assign(static_cast<std::size_t>(cols), Rational());
  for (std::size_t k = 0; k < pivot_rows.size(); ++k) {
    res.solution[static_cast<std::size_t>(pivot_cols[k])] = pivot_rows[k][static_cast<std::size_t>(cols)];
  }
  return res;
}

std::vector<RatVector> nullspace(RatMatrix a) {
  if (a.empty()) return {};
  check_rectangular(a);
  const int cols = static_cast<int>(a.front().size());
  std::vector<int> pivots = rref(a);

  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  std::vector<RatVector> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    RatVector v(static_cast<std::size_t>(cols));
    v[static_cast<std::size_t>(free)] = Rational(1);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      v[static_cast<std::size_t>(pivots[i])] = -a[i][static_cast<std::size_t>(free)];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Integer> primitive_integer_vector(const RatVector& v) {
  Integer lcm_den = 1;
  for (const Rational& r : v) {
    Integer d = r.den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Integer> out;
  out.reserve(v.size());
  Integer content = 0;
  for (const Rational& r : v) {
    Integer scaled = r.num() * (lcm_den / r.den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), scaled.get_mpz_t());
    out.push_back(std::move(scaled));
  }
  if (content == 0) return out; // zero vector
  int lead_sign = 0;
  for (const Integer& x : out) {
    if (x != 0) { lead_sign = sgn(x); break; }
  }
  if (lead_sign < 0) content = -content;
  for (Integer& x : out) x /= content;
  return out;
}

} // namespace qforms
