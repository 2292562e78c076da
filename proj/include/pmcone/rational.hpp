#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

namespace pmcone {

/// Exact rational scalar. Always held in canonical form (reduced, positive
/// denominator); every distance, norm and construction parameter in the
/// library is one of these.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value); // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  /// Parses "p/q", "-p/q" or a bare integer. Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  std::string to_string() const;

  std::string numerator() const { return value_.get_num().get_str(); }
  std::string denominator() const { return value_.get_den().get_str(); }
  bool is_integer() const { return value_.get_den() == 1; }

  int sign() const { return sgn(value_); }
  bool is_zero() const { return sign() == 0; }

  /// Floating approximation, for display only.
  double approx() const { return value_.get_d(); }

  Rational &operator+=(const Rational &o);
  Rational &operator-=(const Rational &o);
  Rational &operator*=(const Rational &o);
  Rational &operator/=(const Rational &o);

  friend Rational operator+(Rational a, const Rational &b) { return a += b; }
  friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational &b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational &b) { return a /= b; }
  Rational operator-() const;

  friend bool operator==(const Rational &a, const Rational &b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational &a, const Rational &b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream &operator<<(std::ostream &os, const Rational &r) {
    return os << r.to_string();
  }

  /// 2^-n as an exact rational.
  static Rational inverse_power_of_two(unsigned n);

  /// FNV-1a hash of the canonical text form. Deterministic across runs.
  std::uint64_t fingerprint() const;

private:
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  mpq_class value_{0};
};

inline Rational abs(const Rational &r) { return r.sign() < 0 ? -r : r; }
inline const Rational &min(const Rational &a, const Rational &b) { return b < a ? b : a; }
inline const Rational &max(const Rational &a, const Rational &b) { return a < b ? b : a; }

} // namespace pmcone
