#pragma once

#include "pmcone/pseudometric.hpp"

#include <functional>
#include <vector>

namespace pmcone {

/// A pseudometric known only on a subset A of a Space.
class PartialPseudometric {
public:
  /// `subset` lists distinct points of `space`; `values` is indexed by
  /// position in `subset` and must satisfy the pseudometric axioms.
  static PartialPseudometric create(SpacePtr space, std::vector<PointId> subset, Matrix values);

  /// Restriction of a full pseudometric to `subset`.
  static PartialPseudometric restrict(const Pseudometric &d, std::vector<PointId> subset);

  const Space &space() const { return *space_; }
  const SpacePtr &space_ptr() const { return space_; }
  const std::vector<PointId> &subset() const { return subset_; }
  const Matrix &values() const { return values_; }

  /// Largest value on the subset.
  Rational sup_norm() const;
  /// max over distinct a, b in A of d(a, b) / d_Z(a, b); 0 when |A| = 1.
  Rational lip() const;

private:
  PartialPseudometric(SpacePtr space, std::vector<PointId> subset, Matrix values)
      : space_(std::move(space)), subset_(std::move(subset)), values_(std::move(values)) {}

  SpacePtr space_;
  std::vector<PointId> subset_;
  Matrix values_;
};

/// Extends pd over the whole space keeping the values on A, the sup-norm and
/// the Lipschitz constant. With L = lip on A the result is
///
///   min( ‖d‖, min( L·d_Z(x, y), min_{a,b ∈ A} L·d_Z(x, a) + d(a, b) + L·d_Z(b, y) ) )
///
/// i.e. the largest L-Lipschitz pseudometric agreeing with d on A, truncated
/// at ‖d‖. Deterministic. A singleton subset extends to zero.
Pseudometric extend_lip_preserving(const PartialPseudometric &pd);

/// Keeps values on A and the sup-norm. At finite scale every pseudometric is
/// Lipschitz, so this is the same operator.
Pseudometric extend_norm_preserving(const PartialPseudometric &pd);

/// Pluggable extension step, so harnesses can inject faults.
using Extender = std::function<Pseudometric(const PartialPseudometric &)>;

} // namespace pmcone
