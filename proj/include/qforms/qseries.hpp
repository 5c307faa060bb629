#ifndef QFORMS_QSERIES_HPP
#define QFORMS_QSERIES_HPP

#include "qforms/rational.hpp"

#include <vector>

namespace qforms {

// Truncated formal power series in q with exact rational coefficients.
// A series of truncation N carries exactly the coefficients of q^0..q^N;
// reading beyond N throws InsufficientTruncationError rather than returning
// a silent zero. Binary operations truncate to the shorter operand.
class QSeries {
public:
  explicit QSeries(int truncation);
  QSeries(int truncation, std::vector<Rational> coeffs);

  static QSeries constant(const Rational& c, int truncation);

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Rational& coefficient(int n) const;
  void set_coefficient(int n, Rational value);

  const std::vector<Rational>& coefficients() const { return coeffs_; }

  bool is_zero() const;

  // q d/dq applied m times: coefficient of q^n picks up a factor n^m.
  QSeries derivative(int m = 1) const;

  QSeries scaled(const Rational& c) const;

  // Prefix of the first min(n, truncation())+1 coefficients.
  QSeries truncated(int n) const;

  // Equality of all coefficients up to the shorter truncation. Anything
  // beyond is invisible, so this is agreement, not series identity.
  bool agrees_with(const QSeries& other) const;

  friend QSeries operator+(const QSeries& a, const QSeries& b);
  friend QSeries operator-(const QSeries& a, const QSeries& b);
  friend QSeries operator*(const QSeries& a, const QSeries& b); // Cauchy product, O(N^2)
  QSeries operator-() const;

private:
  std::vector<Rational> coeffs_; // coeffs_[n] multiplies q^n; size = truncation + 1
};

} // namespace qforms

#endif
