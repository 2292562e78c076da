#include "pmcone/space.hpp"

#include <algorithm>
#include <set>

namespace pmcone {

Doubleton::Doubleton(PointId a, PointId b) : first_(std::min(a, b)), second_(std::max(a, b)) {
  if (a == b) throw DegeneratePair("doubleton needs two distinct points");
}

std::vector<Doubleton> all_doubletons(std::size_t n) {
  std::vector<Doubleton> out;
  out.reserve(n * (n > 0 ? n - 1 : 0) / 2);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

const char *to_string(AxiomKind kind) {
  switch (kind) {
  case AxiomKind::Dimension: return "dimension";
  case AxiomKind::Asymmetry: return "asymmetry";
  case AxiomKind::Negative: return "negative";
  case AxiomKind::NonzeroDiagonal: return "nonzero-diagonal";
  case AxiomKind::Triangle: return "triangle";
  case AxiomKind::NotSeparating: return "not-separating";
  }
  return "unknown";
}

AxiomViolation::AxiomViolation(AxiomKind kind, std::array<PointId, 3> witness,
                               const std::string &detail)
    : Error(std::string(to_string(kind)) + " violation: " + detail), kind_(kind),
      witness_(witness) {}

EmptyIntersection::EmptyIntersection(PointId y, PointId z1, PointId z2, std::string certificate)
    : Error("empty intersection of doubleton images: " + certificate), y_(y), z1_(z1), z2_(z2),
      certificate_(std::move(certificate)) {}

std::optional<AxiomViolation> find_axiom_violation(const Matrix &m, bool require_separation) {
  const std::size_t n = m.size();
  auto at = [](PointId i, PointId j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
  };
  for (PointId i = 0; i < n; ++i) {
    if (!m(i, i).is_zero())
      return AxiomViolation(AxiomKind::NonzeroDiagonal, {i, i, i},
                            "entry " + at(i, i) + " = " + m(i, i).to_string());
    for (PointId j = i + 1; j < n; ++j) {
      if (m(i, j) != m(j, i))
        return AxiomViolation(AxiomKind::Asymmetry, {i, j, j},
                              "entry " + at(i, j) + " = " + m(i, j).to_string() + " but " +
                                  at(j, i) + " = " + m(j, i).to_string());
      if (m(i, j).sign() < 0)
        return AxiomViolation(AxiomKind::Negative, {i, j, j},
                              "entry " + at(i, j) + " = " + m(i, j).to_string());
      if (require_separation && m(i, j).is_zero())
        return AxiomViolation(AxiomKind::NotSeparating, {i, j, j},
                              "entry " + at(i, j) + " is zero");
    }
  }
  for (PointId x = 0; x < n; ++x)
    for (PointId z = x + 1; z < n; ++z)
      for (PointId y = 0; y < n; ++y) {
        if (y == x || y == z) continue;
        if (m(x, z) > m(x, y) + m(y, z))
          return AxiomViolation(AxiomKind::Triangle, {x, y, z},
                                "d" + at(x, z) + " = " + m(x, z).to_string() + " > d" + at(x, y) +
                                    " + d" + at(y, z) + " = " + (m(x, y) + m(y, z)).to_string());
      }
  return std::nullopt;
}

Space::Space(std::vector<std::string> labels, Matrix metric)
    : labels_(std::move(labels)), metric_(std::move(metric)) {
  for (PointId i = 0; i < metric_.size(); ++i)
    for (PointId j = i + 1; j < metric_.size(); ++j) diameter_ = max(diameter_, metric_(i, j));
}

std::shared_ptr<const Space> Space::create(std::vector<std::string> labels, Matrix base_metric) {
  if (labels.empty()) throw DegenerateSpace("a space needs at least one point");
  std::set<std::string> seen;
  for (const auto &l : labels) {
    if (l.empty()) throw Error("point labels must be nonempty");
    if (!seen.insert(l).second) throw Error("duplicate point label '" + l + "'");
  }
  if (base_metric.size() != labels.size())
    throw AxiomViolation(AxiomKind::Dimension, {0, 0, 0},
                         "base metric is " + std::to_string(base_metric.size()) + "x" +
                             std::to_string(base_metric.size()) + " for " +
                             std::to_string(labels.size()) + " points");
  if (auto v = find_axiom_violation(base_metric, true)) throw *v;
  return std::shared_ptr<const Space>(new Space(std::move(labels), std::move(base_metric)));
}

std::optional<PointId> Space::find(std::string_view label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<PointId>(it - labels_.begin());
}

PointId Space::index_of(std::string_view label) const {
  if (auto p = find(label)) return *p;
  throw Error("unknown point label '" + std::string(label) + "'");
}

std::string Space::describe(const Doubleton &d) const {
  return "{" + label(d.first()) + "," + label(d.second()) + "}";
}

} // namespace pmcone
