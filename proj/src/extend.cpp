#include "pmcone/extend.hpp"

#include <optional>
#include <set>

namespace pmcone {

PartialPseudometric PartialPseudometric::create(SpacePtr space, std::vector<PointId> subset,
                                                Matrix values) {
  if (subset.empty()) throw Error("subset must be nonempty");
  std::set<PointId> seen;
  for (PointId p : subset) {
    if (p >= space->size()) throw Error("subset point " + std::to_string(p) + " out of range");
    if (!seen.insert(p).second) throw Error("duplicate subset point " + space->label(p));
  }
  if (values.size() != subset.size())
    throw AxiomViolation(AxiomKind::Dimension, {0, 0, 0},
                         "values are " + std::to_string(values.size()) + "x" +
                             std::to_string(values.size()) + " for a subset of " +
                             std::to_string(subset.size()) + " points");
  if (auto v = find_axiom_violation(values, false)) throw *v;
  return PartialPseudometric(std::move(space), std::move(subset), std::move(values));
}

PartialPseudometric PartialPseudometric::restrict(const Pseudometric &d,
                                                  std::vector<PointId> subset) {
  Matrix values(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j) {
      if (subset[i] >= d.size() || subset[j] >= d.size()) throw Error("subset point out of range");
      values(i, j) = d(subset[i], subset[j]);
    }
  return create(d.space_ptr(), std::move(subset), std::move(values));
}

Rational PartialPseudometric::sup_norm() const {
  Rational best;
  for (std::size_t i = 0; i < subset_.size(); ++i)
    for (std::size_t j = i + 1; j < subset_.size(); ++j) best = max(best, values_(i, j));
  return best;
}

Rational PartialPseudometric::lip() const {
  Rational best;
  for (std::size_t i = 0; i < subset_.size(); ++i)
    for (std::size_t j = i + 1; j < subset_.size(); ++j)
      best = max(best, values_(i, j) / space_->distance(subset_[i], subset_[j]));
  return best;
}

Pseudometric extend_lip_preserving(const PartialPseudometric &pd) {
  const Space &z = pd.space();
  const std::size_t n = z.size();
  const auto &a = pd.subset();
  const std::size_t m = a.size();
  if (m == 1) return Pseudometric::zero(pd.space_ptr());

  const Rational lip = pd.lip();
  const Rational norm = pd.sup_norm();

  // reach(x, j) = min_i L·d_Z(x, a_i) + d(a_i, a_j): cheapest way from x to a_j
  // entering the subset anywhere.
  std::vector<std::vector<Rational>> reach(n, std::vector<Rational>(m));
  for (PointId x = 0; x < n; ++x)
    for (std::size_t j = 0; j < m; ++j) {
      std::optional<Rational> best;
      for (std::size_t i = 0; i < m; ++i) {
        Rational c = lip * z.distance(x, a[i]) + pd.values()(i, j);
        if (!best || c < *best) best = std::move(c);
      }
      reach[x][j] = *best;
    }

  Matrix out(n);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      Rational g = lip * z.distance(x, y);
      for (std::size_t j = 0; j < m; ++j) {
        Rational c = reach[x][j] + lip * z.distance(a[j], y);
        if (c < g) g = std::move(c);
      }
      out.set_symmetric(x, y, min(g, norm));
    }
  return Pseudometric::trusted(pd.space_ptr(), std::move(out));
}

Pseudometric extend_norm_preserving(const PartialPseudometric &pd) {
  return extend_lip_preserving(pd);
}

} // namespace pmcone
