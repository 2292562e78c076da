#pragma once

#include "pmcone/cone.hpp"
#include "pmcone/oracle.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace pmcone::test {

/// Matrix from rows of rational literals such as {"0", "1/2"}.
inline Matrix mat(std::initializer_list<std::initializer_list<const char *>> rows) {
  Matrix m(rows.size());
  std::size_t i = 0;
  for (const auto &row : rows) {
    std::size_t j = 0;
    for (const char *v : row) m(i, j++) = Rational::parse(v);
    ++i;
  }
  return m;
}

inline std::vector<std::string> labels(std::initializer_list<const char *> names) {
  return {names.begin(), names.end()};
}

inline SpacePtr space(std::initializer_list<const char *> names, const Matrix &m) {
  return Space::create(labels(names), m);
}

/// All off-diagonal distances 1.
inline SpacePtr discrete(std::size_t n, const std::string &prefix = "p") {
  Matrix m(n, Rational(1));
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(0);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i));
  return Space::create(names, m);
}

/// The path p - q - r with unit steps.
inline SpacePtr path3() { return space({"p", "q", "r"}, mat({{"0", "1", "2"}, {"1", "0", "1"}, {"2", "1", "0"}})); }

inline Pseudometric pm(const SpacePtr &s, const Matrix &m) { return validate_pseudometric(s, m); }

// Brute-force references, written directly from the definitions.

inline bool brute_is_pseudometric(const Matrix &m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m(i, i).is_zero()) return false;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) != m(j, i) || m(i, j).sign() < 0) return false;
      for (std::size_t k = 0; k < n; ++k)
        if (m(i, k) > m(i, j) + m(j, k)) return false;
    }
  }
  return true;
}

inline Rational brute_sup(const Matrix &m) {
  Rational best;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      if (best < m(i, j)) best = m(i, j);
  return best;
}

inline Rational brute_lip(const Pseudometric &d) {
  Rational best;
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (i != j) {
        const Rational r = d(i, j) / d.space().distance(i, j);
        if (best < r) best = r;
      }
  return best;
}

inline std::size_t brute_count_maximizers(const Matrix &m) {
  const Rational top = brute_sup(m);
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = i + 1; j < m.size(); ++j)
      if (m(i, j) == top) ++count;
  return count;
}

/// Some violation shows T(probe) = 0 where the candidate bijection predicts a positive value.
inline bool has_zero_vs_positive(const CheckReport &r) {
  for (const Violation &v : r.violations)
    if (v.observed && v.expected && v.observed->is_zero() && v.expected->sign() > 0) return true;
  return false;
}

} // namespace pmcone::test
