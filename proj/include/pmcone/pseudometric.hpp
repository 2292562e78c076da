#pragma once

#include "pmcone/space.hpp"

namespace pmcone {

/// A pseudometric on the points of a Space. Values are immutable once built;
/// every public constructor path either validates the axioms or combines
/// pseudometrics with operations the cone is closed under.
class Pseudometric {
public:
  static Pseudometric zero(SpacePtr space);
  /// The base metric d_Z viewed as an element of the cone.
  static Pseudometric base(SpacePtr space);
  /// Wraps a matrix the caller has already established to satisfy the axioms.
  static Pseudometric trusted(SpacePtr space, Matrix values);

  const Space &space() const { return *space_; }
  const SpacePtr &space_ptr() const { return space_; }
  const Matrix &values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  const Rational &operator()(PointId a, PointId b) const { return values_(a, b); }
  const Rational &operator()(const Doubleton &d) const { return values_(d.first(), d.second()); }

  bool is_zero() const;

  /// t·d for t >= 0.
  Pseudometric scaled(const Rational &t) const;
  /// d / t for t > 0.
  Pseudometric divided(const Rational &t) const;
  /// min(d, c) entrywise off the diagonal, c >= 0.
  Pseudometric truncated(const Rational &c) const;
  Pseudometric pointwise_max(const Pseudometric &other) const;

  friend Pseudometric operator+(const Pseudometric &a, const Pseudometric &b);
  friend bool operator==(const Pseudometric &a, const Pseudometric &b);

private:
  Pseudometric(SpacePtr space, Matrix values) : space_(std::move(space)), values_(std::move(values)) {}

  SpacePtr space_;
  Matrix values_;
};

/// Validates the pseudometric axioms; throws AxiomViolation with a witness.
Pseudometric validate_pseudometric(const SpacePtr &space, Matrix matrix);

/// Entrywise difference a - b as a raw matrix (not a pseudometric in general).
Matrix difference(const Pseudometric &a, const Pseudometric &b);

/// Largest absolute entry of a matrix; the sup-norm distance when applied to
/// a difference.
Rational sup_abs(const Matrix &m);

void require_same_space(const Pseudometric &a, const Pseudometric &b);

} // namespace pmcone
