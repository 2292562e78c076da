#pragma once

#include "pmcone/rational.hpp"

#include <cassert>
#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

namespace pmcone {

/// Position of a point inside its Space's canonical label ordering.
using PointId = std::size_t;

/// Unordered pair of distinct points, stored sorted.
class Doubleton {
public:
  Doubleton(PointId a, PointId b);

  PointId first() const { return first_; }
  PointId second() const { return second_; }
  bool contains(PointId p) const { return p == first_ || p == second_; }

  friend bool operator==(const Doubleton &, const Doubleton &) = default;
  friend auto operator<=>(const Doubleton &, const Doubleton &) = default;

private:
  PointId first_;
  PointId second_;
};

/// Dense square matrix of rationals, row-major.
class Matrix {
public:
  Matrix() = default;
  explicit Matrix(std::size_t n) : n_(n), data_(n * n) {}
  Matrix(std::size_t n, const Rational &fill) : n_(n), data_(n * n, fill) {}

  std::size_t size() const { return n_; }

  Rational &operator()(std::size_t i, std::size_t j) {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }
  const Rational &operator()(std::size_t i, std::size_t j) const {
    assert(i < n_ && j < n_);
    return data_[i * n_ + j];
  }

  /// Writes v at (i, j) and (j, i).
  void set_symmetric(std::size_t i, std::size_t j, const Rational &v) {
    (*this)(i, j) = v;
    (*this)(j, i) = v;
  }

  friend bool operator==(const Matrix &, const Matrix &) = default;

private:
  std::size_t n_ = 0;
  std::vector<Rational> data_;
};

/// All doubletons of an n-point set in lexicographic order.
std::vector<Doubleton> all_doubletons(std::size_t n);

} // namespace pmcone
