#include "qforms/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace qforms {

namespace {

void check_nonzero_den(const Integer& den) {
  if (sgn(den) == 0) throw std::invalid_argument("rational: zero denominator");
}

} // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  check_nonzero_den(Integer(den));
  v_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
  check_nonzero_den(den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
  v_ /= o.v_;
  return *this;
}

Rational Rational::from_string(std::string_view s) {
  auto is_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };

  std::string_view num_part = s;
  std::string_view den_part;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    num_part = s.substr(0, slash);
    den_part = s.substr(slash + 1);
    if (!is_int(den_part) || den_part[0] == '-' || den_part[0] == '+')
      throw std::invalid_argument("rational: malformed denominator in '" + std::string(s) + "'");
  }
  if (!is_int(num_part))
    throw std::invalid_argument("rational: malformed number '" + std::string(s) + "'");
  if (num_part[0] == '+') num_part.remove_prefix(1); // mpz rejects an explicit plus

  Integer num(std::string(num_part), 10);
  Integer den = den_part.empty() ? Integer(1) : Integer(std::string(den_part), 10);
  return Rational(num, den);
}

std::string Rational::str() const {
  if (is_integer()) return num().get_str();
  return num().get_str() + "/" + den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

} // namespace qforms
