#include "pmcone/cone.hpp"

namespace pmcone {

Rational sup_norm(const Pseudometric &d) {
  Rational best;
  for (PointId i = 0; i < d.size(); ++i)
    for (PointId j = i + 1; j < d.size(); ++j) best = max(best, d(i, j));
  return best;
}

Rational lip_constant(const Pseudometric &d) {
  if (d.size() < 2) throw DegenerateSpace("lipschitz constant needs at least two points");
  const Space &z = d.space();
  Rational best;
  for (PointId i = 0; i < d.size(); ++i)
    for (PointId j = i + 1; j < d.size(); ++j) best = max(best, d(i, j) / z.distance(i, j));
  return best;
}

std::set<Doubleton> maximizer_doubletons(const Pseudometric &d) {
  const Rational norm = sup_norm(d);
  if (norm.is_zero())
    throw ZeroPseudometric("every pair attains the norm of the zero pseudometric");
  std::set<Doubleton> out;
  for (PointId i = 0; i < d.size(); ++i)
    for (PointId j = i + 1; j < d.size(); ++j)
      if (d(i, j) == norm) out.emplace(i, j);
  return out;
}

bool is_admissible(const Pseudometric &d) {
  for (PointId i = 0; i < d.size(); ++i)
    for (PointId j = i + 1; j < d.size(); ++j)
      if (d(i, j).sign() <= 0) return false;
  return true;
}

ConeReport cone_report(const Pseudometric &d, const Rational &k) {
  if (k.sign() <= 0) throw Error("cone parameter k must be positive");
  ConeReport r;
  r.k = k;
  r.sup_norm = sup_norm(d);
  r.lip = d.size() >= 2 ? lip_constant(d) : Rational{};
  r.is_admissible = is_admissible(d);
  if (!r.sup_norm.is_zero()) r.maximizers = maximizer_doubletons(d);
  r.in_pp = r.maximizers.size() == 1;
  r.in_lpmk = r.lip < k;
  r.in_lpmk_closure = r.lip <= k;
  return r;
}

Pseudometric d_of_F(const SpacePtr &space, const std::vector<std::vector<Rational>> &functions) {
  if (functions.empty()) throw EmptyFamily("d(F) needs at least one function");
  const std::size_t n = space->size();
  for (const auto &f : functions)
    if (f.size() != n)
      throw Error("function has " + std::to_string(f.size()) + " values for " +
                  std::to_string(n) + " points");
  Matrix m(n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j) {
      Rational best;
      for (const auto &f : functions) best = max(best, abs(f[i] - f[j]));
      m.set_symmetric(i, j, best);
    }
  return Pseudometric::trusted(space, std::move(m));
}

Perturbation perturb_to_admissible(const Pseudometric &d, const Rational &k, const Rational &eps) {
  if (k.sign() <= 0) throw Error("k must be positive");
  if (eps.sign() <= 0) throw Error("eps must be positive");
  const Rational lip = lip_constant(d);
  if (lip >= k)
    throw NotInLPMk("lip(d) = " + lip.to_string() + " is not below k = " + k.to_string());
  const Rational delta = min(eps / d.space().diameter(), k - lip) / Rational(2);
  return {delta, d + Pseudometric::base(d.space_ptr()).scaled(delta)};
}

Perturbation shrink_into_lpmk(const Pseudometric &d, const Rational &eps) {
  if (eps.sign() <= 0) throw Error("eps must be positive");
  const Rational norm = sup_norm(d);
  if (norm.is_zero()) throw ZeroPseudometric("cannot shrink the zero pseudometric");
  const Rational delta = min(Rational(1), eps / norm) / Rational(2);
  return {delta, d.scaled(Rational(1) - delta)};
}

SeparationWitness separation_radius(const Pseudometric &d, const Rational &k) {
  const Rational lip = lip_constant(d);
  if (lip <= k)
    throw InClosure("lip(d) = " + lip.to_string() + " <= k = " + k.to_string());
  const Space &z = d.space();
  std::optional<SeparationWitness> best;
  for (PointId i = 0; i < d.size(); ++i)
    for (PointId j = i + 1; j < d.size(); ++j) {
      Rational r = d(i, j) - k * z.distance(i, j);
      if (r.sign() > 0 && (!best || r > best->radius)) best = SeparationWitness{{i, j}, r};
    }
  return *best;
}

} // namespace pmcone
