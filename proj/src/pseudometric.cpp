#include "pmcone/pseudometric.hpp"

namespace pmcone {

Pseudometric Pseudometric::zero(SpacePtr space) {
  const std::size_t n = space->size();
  return Pseudometric(std::move(space), Matrix(n));
}

Pseudometric Pseudometric::base(SpacePtr space) {
  Matrix m = space->base_metric();
  return Pseudometric(std::move(space), std::move(m));
}

Pseudometric Pseudometric::trusted(SpacePtr space, Matrix values) {
  assert(values.size() == space->size());
  return Pseudometric(std::move(space), std::move(values));
}

bool Pseudometric::is_zero() const {
  for (PointId i = 0; i < size(); ++i)
    for (PointId j = i + 1; j < size(); ++j)
      if (!values_(i, j).is_zero()) return false;
  return true;
}

Pseudometric Pseudometric::scaled(const Rational &t) const {
  if (t.sign() < 0) throw Error("pseudometrics can only be scaled by t >= 0");
  Matrix m(size());
  for (PointId i = 0; i < size(); ++i)
    for (PointId j = i + 1; j < size(); ++j) m.set_symmetric(i, j, values_(i, j) * t);
  return Pseudometric(space_, std::move(m));
}

Pseudometric Pseudometric::divided(const Rational &t) const {
  if (t.sign() <= 0) throw Error("pseudometrics can only be divided by t > 0");
  Matrix m(size());
  for (PointId i = 0; i < size(); ++i)
    for (PointId j = i + 1; j < size(); ++j) m.set_symmetric(i, j, values_(i, j) / t);
  return Pseudometric(space_, std::move(m));
}

Pseudometric Pseudometric::truncated(const Rational &c) const {
  if (c.sign() < 0) throw Error("truncation level must be nonnegative");
  Matrix m(size());
  for (PointId i = 0; i < size(); ++i)
    for (PointId j = i + 1; j < size(); ++j) m.set_symmetric(i, j, min(values_(i, j), c));
  return Pseudometric(space_, std::move(m));
}

Pseudometric Pseudometric::pointwise_max(const Pseudometric &other) const {
  require_same_space(*this, other);
  Matrix m(size());
  for (PointId i = 0; i < size(); ++i)
    for (PointId j = i + 1; j < size(); ++j)
      m.set_symmetric(i, j, max(values_(i, j), other.values_(i, j)));
  return Pseudometric(space_, std::move(m));
}

Pseudometric operator+(const Pseudometric &a, const Pseudometric &b) {
  require_same_space(a, b);
  Matrix m(a.size());
  for (PointId i = 0; i < a.size(); ++i)
    for (PointId j = i + 1; j < a.size(); ++j) m.set_symmetric(i, j, a(i, j) + b(i, j));
  return Pseudometric(a.space_, std::move(m));
}

bool operator==(const Pseudometric &a, const Pseudometric &b) {
  if (a.space_ != b.space_ && !(*a.space_ == *b.space_)) return false;
  return a.values_ == b.values_;
}

Pseudometric validate_pseudometric(const SpacePtr &space, Matrix matrix) {
  if (matrix.size() != space->size())
    throw AxiomViolation(AxiomKind::Dimension, {0, 0, 0},
                         "matrix is " + std::to_string(matrix.size()) + "x" +
                             std::to_string(matrix.size()) + " for a space of " +
                             std::to_string(space->size()) + " points");
  if (auto v = find_axiom_violation(matrix, false)) throw *v;
  return Pseudometric::trusted(space, std::move(matrix));
}

Matrix difference(const Pseudometric &a, const Pseudometric &b) {
  require_same_space(a, b);
  Matrix m(a.size());
  for (PointId i = 0; i < a.size(); ++i)
    for (PointId j = 0; j < a.size(); ++j) m(i, j) = a(i, j) - b(i, j);
  return m;
}

Rational sup_abs(const Matrix &m) {
  Rational best;
  for (PointId i = 0; i < m.size(); ++i)
    for (PointId j = 0; j < m.size(); ++j) best = max(best, abs(m(i, j)));
  return best;
}

void require_same_space(const Pseudometric &a, const Pseudometric &b) {
  if (a.space_ptr() != b.space_ptr() && !(a.space() == b.space()))
    throw SpaceMismatch("pseudometrics live on different spaces");
}

} // namespace pmcone
