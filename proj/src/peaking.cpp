#include "pmcone/peaking.hpp"

namespace pmcone {

namespace {

Pseudometric unit_peak_metric(const SpacePtr &space, PointId x, PointId y) {
  const std::size_t n = space->size();
  const Rational scale = space->distance(x, y);
  Matrix m(n);
  for (PointId i = 0; i < n; ++i)
    for (PointId j = i + 1; j < n; ++j)
      m.set_symmetric(i, j, min(space->distance(i, j) / scale, Rational(1)));
  return Pseudometric::trusted(space, std::move(m));
}

Rational row_max(const Pseudometric &d, PointId p) {
  Rational best;
  for (PointId z = 0; z < d.size(); ++z) best = max(best, d(p, z));
  return best;
}

Rational row_min_positive(const Pseudometric &d, PointId p) {
  std::optional<Rational> best;
  for (PointId z = 0; z < d.size(); ++z)
    if (z != p && (!best || d(p, z) < *best)) best = d(p, z);
  return *best;
}

} // namespace

AnnulusBlock build_annulus_block(const Pseudometric &d_prime, PointId x, PointId y,
                                 const Rational &a, const Rational &b, unsigned n) {
  if (n < 1) throw Error("annulus level starts at 1");
  const Rational outer_radius = a * Rational::inverse_power_of_two(n);
  const Rational inner_radius = a * Rational::inverse_power_of_two(n + 1);

  enum class Block { NearX, NearY, Outer, Gap };
  Annulus part;
  part.n = n;
  std::vector<Block> block(d_prime.size(), Block::Gap);
  std::vector<PointId> members;
  for (PointId z = 0; z < d_prime.size(); ++z) {
    if (d_prime(x, z) <= inner_radius) {
      block[z] = Block::NearX;
      part.near_x.push_back(z);
    } else if (d_prime(y, z) <= inner_radius) {
      block[z] = Block::NearY;
      part.near_y.push_back(z);
    } else if (d_prime(x, z) >= outer_radius && d_prime(y, z) >= outer_radius) {
      block[z] = Block::Outer;
      part.outer.push_back(z);
    } else {
      continue;
    }
    members.push_back(z);
  }

  const Rational four_b = b * Rational(4);
  const Rational two_b = b * Rational(2);
  Matrix values(members.size());
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Block bi = block[members[i]];
      const Block bj = block[members[j]];
      if (bi == bj) continue;
      values.set_symmetric(i, j, (bi == Block::Outer || bj == Block::Outer) ? two_b : four_b);
    }
  return {std::move(part),
          PartialPseudometric::create(d_prime.space_ptr(), std::move(members), std::move(values))};
}

PeakingTranscript build_peaking(const Pseudometric &d, PointId x, PointId y,
                                const Extender &extend) {
  if (x == y) throw DegeneratePair("peaking needs two distinct points");
  const SpacePtr &space = d.space_ptr();
  if (space->size() < 2) throw DegenerateSpace("peaking needs at least two points");
  if (x >= space->size() || y >= space->size()) throw Error("peak point out of range");

  PeakingTranscript t{
      .x = x,
      .y = y,
      .e = unit_peak_metric(space, x, y),
      .d_prime = Pseudometric::zero(space),
      .a = {},
      .b = {},
      .n0 = 1,
      .annuli = {},
      .rho_n = {},
      .rho = Pseudometric::zero(space),
  };
  t.d_prime = d + t.e;
  t.a = t.d_prime(x, y);
  t.b = min(row_max(t.d_prime, x), row_max(t.d_prime, y));

  // d' is a metric, so both balls shrink to their centres once the radius
  // a/2^n drops to the nearest neighbour distance; the blocks are fixed from
  // that level on.
  const Rational nearest = min(row_min_positive(t.d_prime, x), row_min_positive(t.d_prime, y));
  unsigned terminal = 1;
  while (t.a * Rational::inverse_power_of_two(terminal) > nearest) ++terminal;

  for (unsigned n = 1; n <= terminal; ++n) {
    AnnulusBlock level = build_annulus_block(t.d_prime, x, y, t.a, t.b, n);
    t.rho_n.push_back(extend(level.block));
    t.annuli.push_back(std::move(level.partition));
  }
  unsigned n0 = terminal;
  while (n0 > 1 && t.rho_n[n0 - 2] == t.rho_n[terminal - 1]) --n0;
  t.n0 = n0;
  t.rho_n.erase(t.rho_n.begin() + n0, t.rho_n.end());
  t.annuli.erase(t.annuli.begin() + n0, t.annuli.end());

  Pseudometric rho = t.e;
  for (unsigned n = 1; n < n0; ++n)
    rho = rho + t.rho_n[n - 1].scaled(Rational::inverse_power_of_two(n));
  // Σ_{n >= n0} 2^-n = 2^(1 - n0)
  rho = rho + t.rho_n[n0 - 1].scaled(Rational::inverse_power_of_two(n0 - 1));
  t.rho = std::move(rho);
  return t;
}

Pseudometric peaking_partial_sum(const PeakingTranscript &t, unsigned levels) {
  Pseudometric sum = t.e;
  for (unsigned n = 1; n <= levels; ++n) {
    const Pseudometric &level = t.rho_n[std::min<std::size_t>(n, t.n0) - 1];
    sum = sum + level.scaled(Rational::inverse_power_of_two(n));
  }
  return sum;
}

Rational peaking_lip_bound(const PeakingTranscript &t, const Pseudometric &d) {
  const Rational lip_e = lip_constant(t.e);
  return lip_e + Rational(24) * t.b * (lip_constant(d) + lip_e) / t.a;
}

PeakCheck verify_peak_property(const Pseudometric &d, const Pseudometric &rho, PointId x,
                               PointId y) {
  require_same_space(d, rho);
  const Rational peak = d(x, y) + rho(x, y);
  const Doubleton target(x, y);
  for (PointId z = 0; z < d.size(); ++z)
    for (PointId w = z; w < d.size(); ++w) {
      if (z != w && Doubleton(z, w) == target) continue;
      if (rho(z, w) > rho(x, y))
        return {false, std::pair{z, w},
                "rho(z,w) = " + rho(z, w).to_string() + " exceeds rho(x,y) = " +
                    rho(x, y).to_string()};
      if (!(peak > d(z, w) + rho(z, w)))
        return {false, std::pair{z, w},
                "(d+rho)(z,w) = " + (d(z, w) + rho(z, w)).to_string() +
                    " is not below (d+rho)(x,y) = " + peak.to_string()};
    }
  return {};
}

} // namespace pmcone
