#pragma once

#include "pmcone/errors.hpp"
#include "pmcone/types.hpp"

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmcone {

/// Finite point set with an admissible base metric d_Z. Immutable; shared by
/// every pseudometric built over it.
class Space {
public:
  /// Validates labels (distinct, nonempty) and the base metric (symmetric,
  /// zero diagonal, strictly positive off the diagonal, triangle inequality).
  static std::shared_ptr<const Space> create(std::vector<std::string> labels, Matrix base_metric);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::string &label(PointId p) const { return labels_.at(p); }
  std::optional<PointId> find(std::string_view label) const;
  /// Throws Error when the label is unknown.
  PointId index_of(std::string_view label) const;

  const Matrix &base_metric() const { return metric_; }
  const Rational &distance(PointId a, PointId b) const { return metric_(a, b); }
  /// ‖d_Z‖, the largest base distance.
  const Rational &diameter() const { return diameter_; }

  std::string describe(const Doubleton &d) const;

  friend bool operator==(const Space &a, const Space &b) {
    return a.labels_ == b.labels_ && a.metric_ == b.metric_;
  }

private:
  Space(std::vector<std::string> labels, Matrix metric);

  std::vector<std::string> labels_;
  Matrix metric_;
  Rational diameter_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Scans a square matrix for the first pseudometric axiom violation.
/// With require_separation, a zero off-diagonal entry also counts.
std::optional<AxiomViolation> find_axiom_violation(const Matrix &m, bool require_separation);

} // namespace pmcone
