#include "qforms/qseries.hpp"

#include "qforms/errors.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace qforms {

QSeries::QSeries(int truncation) {
  if (truncation < 0) throw std::invalid_argument("qseries: negative truncation");
  coeffs_.assign(static_cast<std::size_t>(truncation) + 1, Rational());
}

QSeries::QSeries(int truncation, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (truncation < 0) throw std::invalid_argument("qseries: negative truncation");
  if (coeffs_.size() != static_cast<std::size_t>(truncation) + 1)
    throw std::invalid_argument("qseries: coefficient count does not match truncation");
}

QSeries QSeries::constant(const Rational& c, int truncation) {
  QSeries s(truncation);
  s.coeffs_[0] = c;
  return s;
}

const Rational& QSeries::coefficient(int n) const {
  if (n < 0) throw std::invalid_argument("qseries: negative index");
  if (n > truncation())
    throw InsufficientTruncationError("qseries: coefficient " + std::to_string(n) +
                                      " requested beyond truncation " + std::to_string(truncation()));
  return coeffs_[static_cast<std::size_t>(n)];
}

void QSeries::set_coefficient(int n, Rational value) {
  if (n < 0 || n > truncation())
    throw std::invalid_argument("qseries: set_coefficient index out of range");
  coeffs_[static_cast<std::size_t>(n)] = std::move(value);
}

bool QSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
}

QSeries QSeries::derivative(int m) const {
  if (m < 0) throw std::invalid_argument("qseries: negative derivative order");
  QSeries out(truncation());
  for (int n = 0; n <= truncation(); ++n) {
    if (coeffs_[n].is_zero()) continue;
    Integer factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(m));
    out.coeffs_[n] = coeffs_[n] * Rational(factor);
  }
  return out;
}

QSeries QSeries::scaled(const Rational& c) const {
  QSeries out(truncation());
  if (c.is_zero()) return out;
  for (int n = 0; n <= truncation(); ++n) out.coeffs_[n] = coeffs_[n] * c;
  return out;
}

QSeries QSeries::truncated(int n) const {
  if (n < 0) throw std::invalid_argument("qseries: negative truncation");
  int t = std::min(n, truncation());
  QSeries out(t);
  std::copy(coeffs_.begin(), coeffs_.begin() + t + 1, out.coeffs_.begin());
  return out;
}

bool QSeries::agrees_with(const QSeries& other) const {
  int t = std::min(truncation(), other.truncation());
  for (int n = 0; n <= t; ++n)
    if (coeffs_[n] != other.coeffs_[n]) return false;
  return true;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
  int t = std::min(a.truncation(), b.truncation());
  QSeries out(t);
  for (int n = 0; n <= t; ++n) out.coeffs_[n] = a.coeffs_[n] + b.coeffs_[n];
  return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
  int t = std::min(a.truncation(), b.truncation());
  QSeries out(t);
  for (int n = 0; n <= t; ++n) out.coeffs_[n] = a.coeffs_[n] - b.coeffs_[n];
  return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  int t = std::min(a.truncation(), b.truncation());
  QSeries out(t);
  // Schoolbook convolution on raw mpq to avoid temporary churn in the hot loop.
  mpq_t prod;
  mpq_init(prod);
  std::vector<mpq_class> acc(static_cast<std::size_t>(t) + 1);
  for (int i = 0; i <= t; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    const mpq_srcptr ai = a.coeffs_[i].raw().get_mpq_t();
    for (int j = 0; j + i <= t; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      mpq_mul(prod, ai, b.coeffs_[j].raw().get_mpq_t());
      mpq_add(acc[i + j].get_mpq_t(), acc[i + j].get_mpq_t(), prod);
    }
  }
  mpq_clear(prod);
  for (int n = 0; n <= t; ++n) out.coeffs_[n] = Rational(acc[n].get_num(), acc[n].get_den());
  return out;
}

QSeries QSeries::operator-() const {
  QSeries out(truncation());
  for (int n = 0; n <= truncation(); ++n) out.coeffs_[n] = -coeffs_[n];
  return out;
}

} // namespace qforms
