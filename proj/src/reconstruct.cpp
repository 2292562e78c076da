#include "pmcone/reconstruct.hpp"

#include "pmcone/extend.hpp"
#include "pmcone/peaking.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace pmcone {

namespace {

std::string describe_points(const Space &s, const std::set<PointId> &pts) {
  std::string out = "{";
  for (PointId p : pts) {
    if (out.size() > 1) out += ",";
    out += s.label(p);
  }
  return out + "}";
}

/// Pseudometric on A = Φ{y,z1} ∪ Φ{y,z2} ∪ Φ{z1,z2} with value 1 on the first
/// two doubletons and 3 on the last: the shortest-path metric of those edges
/// over a background weight of 3.
std::string empty_intersection_certificate(const SpacePtr &x_space, const Space &y_space,
                                           PointId y, PointId z1, PointId z2,
                                           const Doubleton &first, const Doubleton &second,
                                           const Doubleton &third) {
  std::set<PointId> pts{first.first(), first.second(), second.first(), second.second(),
                        third.first(), third.second()};
  std::vector<PointId> a(pts.begin(), pts.end());
  auto pos = [&](PointId p) { return static_cast<std::size_t>(std::find(a.begin(), a.end(), p) - a.begin()); };

  Matrix w(a.size(), Rational(3));
  for (std::size_t i = 0; i < a.size(); ++i) w(i, i) = Rational(0);
  for (const Doubleton &d : {first, second}) w.set_symmetric(pos(d.first()), pos(d.second()), Rational(1));
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j)
        if (w(i, k) + w(k, j) < w(i, j)) w(i, j) = w(i, k) + w(k, j);

  const Rational v1 = w(pos(first.first()), pos(first.second()));
  const Rational v2 = w(pos(second.first()), pos(second.second()));
  const Rational v3 = w(pos(third.first()), pos(third.second()));
  const PartialPseudometric gadget = PartialPseudometric::create(x_space, a, w);
  const Pseudometric extended = extend_lip_preserving(gadget);

  std::ostringstream os;
  os << "Phi(" << y_space.describe({y, z1}) << ") = " << x_space->describe(first) << " and Phi("
     << y_space.describe({y, z2}) << ") = " << x_space->describe(second)
     << " are disjoint. The pseudometric d on " << describe_points(*x_space, pts)
     << " with d" << x_space->describe(first) << " = " << v1 << ", d"
     << x_space->describe(second) << " = " << v2 << ", d" << x_space->describe(third) << " = "
     << v3 << " extends to X with lip " << lip_constant(extended)
     << "; for any t >= 1 putting d/t in the cone, T(d/t)(" << y_space.label(z1) << ","
     << y_space.label(z2) << ") = " << v3 << "/t would exceed T(d/t)(" << y_space.label(y) << ","
     << y_space.label(z1) << ") + T(d/t)(" << y_space.label(y) << "," << y_space.label(z2)
     << ") = " << (v1 + v2) << "/t, violating the triangle inequality.";
  return os.str();
}

} // namespace

DoubletonTable recover_doubleton_map(IsometryOracle &oracle,
                                     const std::vector<Pseudometric> &seeds, std::size_t m) {
  if (m == 0) throw Error("at least one probe per doubleton is required");
  if (seeds.empty()) throw Error("at least one seed pseudometric is required");
  const SpacePtr &y_space = oracle.codomain();
  const SpacePtr &x_space = oracle.domain();
  for (const auto &s : seeds)
    if (s.space_ptr() != y_space && !(s.space() == *y_space))
      throw SpaceMismatch("seeds must live on the codomain space");
  if (y_space->size() < 2) throw DegenerateSpace("reconstruction needs at least two points");

  const ConeFamily &family = oracle.family();
  DoubletonTable table;
  std::map<Doubleton, Doubleton> claimed; // image -> codomain pair
  for (const Doubleton &pair : all_doubletons(y_space->size())) {
    PairEvidence ev{pair, {}};
    for (std::size_t j = 0; j < m; ++j) {
      const Pseudometric &seed = seeds[j % seeds.size()];
      const Pseudometric peaked = seed + build_peaking(seed, pair.first(), pair.second()).rho;
      Rational lambda(1);
      if (family.is_lpmk())
        lambda = max(Rational(1), Rational(2) * lip_constant(peaked) / family.k());
      const Rational round(static_cast<std::int64_t>(1 + j / seeds.size()));
      const Pseudometric probe = peaked.divided(lambda * round);

      const Pseudometric image = oracle.inverse(probe);
      ++table.probes_used;
      const ConeReport r = cone_report(image, Rational(1));
      if (!r.in_pp)
        throw NotPpPreserving(pair, j,
                              "T^-1 of probe " + std::to_string(j) + " peaked at " +
                                  y_space->describe(pair) + " has " +
                                  std::to_string(r.maximizers.size()) + " maximizing doubletons");
      const Doubleton found = *r.maximizers.begin();
      if (!ev.probe_maximizers.empty() && found != ev.probe_maximizers.front())
        throw Inconsistent(pair, 0, j, ev.probe_maximizers.front(), found,
                           "probes 0 and " + std::to_string(j) + " peaked at " +
                               y_space->describe(pair) + " pull back to " +
                               x_space->describe(ev.probe_maximizers.front()) + " and " +
                               x_space->describe(found));
      ev.probe_maximizers.push_back(found);
    }
    const Doubleton image = ev.probe_maximizers.front();
    if (auto it = claimed.find(image); it != claimed.end())
      throw Inconsistent(pair, 0, 0, image, image,
                         "doubletons " + y_space->describe(it->second) + " and " +
                             y_space->describe(pair) + " both map to " +
                             x_space->describe(image));
    claimed.emplace(image, pair);
    table.map.emplace(pair, image);
    table.evidence.push_back(std::move(ev));
  }
  return table;
}

ReconstructionResult recover_point_map(const DoubletonTable &table, const SpacePtr &x_space,
                                       const SpacePtr &y_space) {
  const std::size_t n = y_space->size();
  if (x_space->size() != n) throw SpaceMismatch("spaces have different cardinalities");
  if (n < 2) throw DegenerateSpace("reconstruction needs at least two points");
  for (const Doubleton &p : all_doubletons(n))
    if (!table.map.contains(p)) throw Error("doubleton table is missing " + y_space->describe(p));

  auto phi_of = [&](PointId a, PointId b) { return table.map.at(Doubleton(a, b)); };

  if (n == 2)
    return {Bijection::identity(2), table.map, table.probes_used, table.evidence, true};

  std::vector<PointId> images(n);
  for (PointId y = 0; y < n; ++y) {
    std::vector<PointId> others;
    for (PointId z = 0; z < n; ++z)
      if (z != y) others.push_back(z);
    for (std::size_t i = 0; i < others.size(); ++i)
      for (std::size_t j = i + 1; j < others.size(); ++j) {
        const Doubleton a = phi_of(y, others[i]);
        const Doubleton b = phi_of(y, others[j]);
        if (!a.contains(b.first()) && !a.contains(b.second()))
          throw EmptyIntersection(y, others[i], others[j],
                                  empty_intersection_certificate(
                                      x_space, *y_space, y, others[i], others[j], a, b,
                                      phi_of(others[i], others[j])));
      }
    std::set<PointId> common;
    {
      const Doubleton first = phi_of(y, others.front());
      common = {first.first(), first.second()};
    }
    for (PointId z : others) {
      const Doubleton d = phi_of(y, z);
      std::erase_if(common, [&](PointId p) { return !d.contains(p); });
    }
    if (common.size() != 1)
      throw NotSingleton(y, "images of the doubletons through " + y_space->label(y) +
                                " share " + std::to_string(common.size()) + " points " +
                                describe_points(*x_space, common));
    images[y] = *common.begin();
  }

  std::optional<Bijection> phi;
  try {
    phi = Bijection::create(images);
  } catch (const Error &) {
    for (PointId y = 0; y < n; ++y)
      for (PointId z = y + 1; z < n; ++z)
        if (images[y] == images[z])
          throw NotSingleton(z, "points " + y_space->label(y) + " and " + y_space->label(z) +
                                    " both map to " + x_space->label(images[y]));
    throw;
  }
  for (const auto &[pair, image] : table.map)
    if (image != Doubleton((*phi)(pair.first()), (*phi)(pair.second())))
      throw Error("doubleton table is not induced by the recovered point map at " +
                  y_space->describe(pair));
  return {*phi, table.map, table.probes_used, table.evidence, false};
}

CheckReport verify_composition_formula(IsometryOracle &oracle, const Bijection &phi,
                                       const std::vector<Pseudometric> &probes) {
  CheckReport report;
  report.check = "composition-formula";
  // Reports one pair per probe, preferring T(d) = 0 against a positive prediction.
  auto first_mismatch = [&](std::size_t i, const Pseudometric &image,
                            const Pseudometric &expected) -> std::optional<Violation> {
    std::optional<Doubleton> at;
    for (PointId a = 0; a < image.size(); ++a)
      for (PointId b = a + 1; b < image.size(); ++b) {
        if (image(a, b) == expected(a, b)) continue;
        if (!at) at = Doubleton(a, b);
        if (image(a, b).sign() == 0) {
          at = Doubleton(a, b);
          a = image.size();
          break;
        }
      }
    if (!at) return std::nullopt;
    const Rational &seen = image(*at);
    const Rational &want = expected(*at);
    return Violation{i, "forward",
                     "T(d)" + oracle.codomain()->describe(*at) + " = " + seen.to_string() +
                         " but d(phi, phi) = " + want.to_string(),
                     *at, seen, want};
  };
  for (std::size_t i = 0; i < probes.size(); ++i) {
    try {
      const Pseudometric image = oracle.forward(probes[i]);
      ++report.evaluations;
      if (auto v = first_mismatch(i, image, pullback(probes[i], phi, oracle.codomain())))
        report.violations.push_back(std::move(*v));
    } catch (const BudgetExhausted &) {
      throw;
    } catch (const Error &e) {
      report.violations.push_back(
          {i, "forward", std::string("oracle raised: ") + e.what(), {}, {}, {}});
    }
  }
  return report;
}

Pseudometric separating_probe(const SpacePtr &x_space, const Bijection &phi, const Bijection &psi,
                              const ConeFamily &family) {
  const std::size_t n = phi.size();
  if (n < 3) throw DegenerateSpace("bijections of a two-point space cannot be separated");
  if (psi.size() != n || x_space->size() != n) throw SpaceMismatch("bijection sizes differ");
  PointId x = 0;
  while (x < n && phi(x) == psi(x)) ++x;
  if (x == n) throw Error("phi and psi coincide");
  PointId y = 0;
  while (y == x || y == phi.preimage(psi(x))) ++y;

  std::set<PointId> pts{phi(x), phi(y), psi(x), psi(y)};
  std::vector<PointId> subset(pts.begin(), pts.end());
  const std::set<PointId> collapsed{phi(x), phi(y)};
  Matrix values(subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (!(collapsed.contains(subset[i]) && collapsed.contains(subset[j])))
        values.set_symmetric(i, j, Rational(1));
  Pseudometric probe =
      extend_lip_preserving(PartialPseudometric::create(x_space, std::move(subset), values));
  if (family.is_lpmk()) {
    const Rational t = max(Rational(1), Rational(2) * lip_constant(probe) / family.k());
    probe = probe.divided(t);
  }
  return probe;
}

const char *to_string(Verdict v) {
  switch (v) {
  case Verdict::UniformHomeomorphism: return "uniform-homeomorphism";
  case Verdict::BiLipschitz: return "bi-lipschitz";
  case Verdict::Isometry: return "isometry";
  }
  return "?";
}

namespace {

/// Largest two-sided distortion of phi: max over pairs of the ratio and its inverse.
Rational distortion(const Space &x, const Space &y, const Bijection &phi) {
  Rational best(1);
  for (PointId a = 0; a < y.size(); ++a)
    for (PointId b = a + 1; b < y.size(); ++b) {
      const Rational r = x.distance(phi(a), phi(b)) / y.distance(a, b);
      best = max(best, max(r, Rational(1) / r));
    }
  return best;
}

} // namespace

ClassificationCertificate classify(IsometryOracle &oracle, const ReconstructionResult &result,
                                   std::optional<Rational> k) {
  const SpacePtr &xs = oracle.domain();
  const SpacePtr &ys = oracle.codomain();
  const Bijection &phi = result.phi;
  const Pseudometric dx = Pseudometric::base(xs);
  const Pseudometric dy = Pseudometric::base(ys);
  const std::size_t n = ys->size();
  ClassificationCertificate cert;

  auto fail = [&](std::string what) {
    cert.verified = false;
    cert.witnesses.push_back("FAILED: " + std::move(what));
  };

  if (!oracle.family().is_lpmk()) {
    const Rational lf = lip_constant(oracle.forward(dx));
    const Rational li = lip_constant(oracle.inverse(dy));
    const Rational lambda = max(lf, li);
    cert.lambda = lambda;
    cert.witnesses.push_back("lip(T(d_X)) = " + lf.to_string());
    cert.witnesses.push_back("lip(T^-1(d_Y)) = " + li.to_string());
    for (PointId a = 0; a < n; ++a)
      for (PointId b = a + 1; b < n; ++b) {
        const Rational mapped = xs->distance(phi(a), phi(b));
        const Rational base = ys->distance(a, b);
        if (!(base / lambda <= mapped && mapped <= lambda * base))
          fail("(1/λ)·d_Y <= d_X(phi, phi) <= λ·d_Y at " + ys->describe({a, b}) + ": d_Y = " +
               base.to_string() + ", d_X(phi, phi) = " + mapped.to_string());
      }
    if (cert.verified) {
      cert.witnesses.push_back("(1/" + lambda.to_string() + ")·d_Y <= d_X(phi, phi) <= " +
                               lambda.to_string() + "·d_Y on all " +
                               std::to_string(n * (n - 1) / 2) + " pairs");
      cert.verdict = lambda == Rational(1) ? Verdict::Isometry : Verdict::BiLipschitz;
    }
    return cert;
  }

  const Rational kk = k.value_or(oracle.family().k());
  for (const Rational &frac : {Rational(1, 2), Rational(3, 4), Rational(7, 8)}) {
    KPrimeStep step{.k_prime = kk * frac, .forward_lip = {}, .inverse_lip = {}, .holds = true};
    const Pseudometric px = dx.scaled(step.k_prime);
    const Pseudometric py = dy.scaled(step.k_prime);
    if (lip_constant(px) >= kk || lip_constant(py) >= kk)
      throw NotInCone("k'·d has lip >= k for k' = " + step.k_prime.to_string());
    try {
      step.forward_lip = lip_constant(oracle.forward(px));
      step.inverse_lip = lip_constant(oracle.inverse(py));
    } catch (const BudgetExhausted &) {
      throw;
    } catch (const Error &e) {
      step.holds = false;
      fail("k' = " + step.k_prime.to_string() + ": oracle raised: " + e.what());
      cert.chain.push_back(step);
      continue;
    }
    step.holds = step.forward_lip < kk && step.inverse_lip < kk;
    for (PointId a = 0; a < n && step.holds; ++a)
      for (PointId b = a + 1; b < n; ++b) {
        const Rational lhs = step.k_prime * xs->distance(phi(a), phi(b));
        const Rational mid = step.forward_lip * ys->distance(a, b);
        if (!(lhs <= mid && mid < kk * ys->distance(a, b))) step.holds = false;
        const PointId pa = phi.preimage(a);
        const PointId pb = phi.preimage(b);
        const Rational lhs_inv = step.k_prime * ys->distance(pa, pb);
        const Rational mid_inv = step.inverse_lip * xs->distance(a, b);
        if (!(lhs_inv <= mid_inv && mid_inv < kk * xs->distance(a, b))) step.holds = false;
      }
    if (step.holds)
      cert.witnesses.push_back("k' = " + step.k_prime.to_string() + ": lip(T(k'd_X)) = " +
                               step.forward_lip.to_string() + " < " + kk.to_string() +
                               ", lip(T^-1(k'd_Y)) = " + step.inverse_lip.to_string() + " < " +
                               kk.to_string());
    else
      fail("k' chain at k' = " + step.k_prime.to_string());
    cert.chain.push_back(step);
  }

  bool isometric = true;
  for (PointId a = 0; a < n; ++a)
    for (PointId b = a + 1; b < n; ++b)
      if (xs->distance(phi(a), phi(b)) != ys->distance(a, b)) {
        isometric = false;
        fail("d_X(phi, phi) = d_Y at " + ys->describe({a, b}) + ": " +
             xs->distance(phi(a), phi(b)).to_string() + " vs " +
             ys->distance(a, b).to_string());
      }
  if (isometric && cert.verified) {
    cert.witnesses.push_back("d_X(phi(y), phi(z)) = d_Y(y, z) on all pairs");
    cert.verdict = Verdict::Isometry;
    cert.lambda = Rational(1);
  } else {
    cert.lambda = distortion(*xs, *ys, phi);
    cert.verdict = Verdict::BiLipschitz;
  }
  return cert;
}

} // namespace pmcone
