#include "pmcone/rational.hpp"

#include <stdexcept>

namespace pmcone {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

} // namespace

Rational::Rational(std::int64_t value) : value_(mpz_class(std::to_string(value))) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  value_ = mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  std::string n(num);
  if (n[0] == '+') n.erase(0, 1);
  mpz_class zn(n), zd{std::string(den)};
  if (zd == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(zn, zd));
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational &Rational::operator+=(const Rational &o) {
  value_ += o.value_;
  return *this;
}

Rational &Rational::operator-=(const Rational &o) {
  value_ -= o.value_;
  return *this;
}

Rational &Rational::operator*=(const Rational &o) {
  value_ *= o.value_;
  return *this;
}

Rational &Rational::operator/=(const Rational &o) {
  if (o.is_zero()) throw std::domain_error("rational division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::operator-() const { return Rational(mpq_class(-value_)); }

Rational Rational::inverse_power_of_two(unsigned n) {
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 2, n);
  return Rational(mpq_class(mpz_class(1), den));
}

std::uint64_t Rational::fingerprint() const {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : to_string()) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

} // namespace pmcone
