#pragma once

#include "pmcone/cone.hpp"
#include "pmcone/extend.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pmcone {

/// Partition of W_n into the closed x-ball, the closed y-ball (both of radius
/// a/2^(n+1) in d') and the outer set (points at d'-distance >= a/2^n from
/// both x and y).
struct Annulus {
  unsigned n = 0;
  std::vector<PointId> near_x;
  std::vector<PointId> near_y;
  std::vector<PointId> outer;
};

struct AnnulusBlock {
  Annulus partition;
  /// 4b across the two balls, 2b between outer and either ball, 0 inside a block.
  PartialPseudometric block;
};

AnnulusBlock build_annulus_block(const Pseudometric &d_prime, PointId x, PointId y,
                                 const Rational &a, const Rational &b, unsigned n);

/// Everything build_peaking computed on the way to rho.
struct PeakingTranscript {
  PointId x = 0;
  PointId y = 0;
  Pseudometric e;       // min{d_Z / d_Z(x, y), 1}
  Pseudometric d_prime; // d + e
  Rational a;           // d'(x, y)
  Rational b;           // min of sup_z d'(x, z) and sup_z d'(y, z)
  /// First level from which every rho_n is identical; the tail of the
  /// series from n0 on is summed in closed form.
  unsigned n0 = 1;
  std::vector<Annulus> annuli;      // levels 1..n0
  std::vector<Pseudometric> rho_n;  // levels 1..n0, extended to the full space
  Pseudometric rho;                 // e + Σ rho_n / 2^n
};

/// Builds rho such that d + rho peaks strictly and uniquely at {x, y}:
/// rho(x, y) >= rho(z, w) and d(x, y) + rho(x, y) > d(z, w) + rho(z, w) for
/// every other pair. Throws DegeneratePair when x == y.
PeakingTranscript build_peaking(const Pseudometric &d, PointId x, PointId y,
                                const Extender &extend = extend_lip_preserving);

/// e + Σ_{n <= levels} rho_n / 2^n, with rho_n = rho_{n0} beyond n0.
Pseudometric peaking_partial_sum(const PeakingTranscript &t, unsigned levels);

/// lip(e) + 24·b·(lip(d) + lip(e)) / a.
Rational peaking_lip_bound(const PeakingTranscript &t, const Pseudometric &d);

struct PeakCheck {
  bool holds = true;
  /// First ordered pair (z, w) breaking one of the two inequalities.
  std::optional<std::pair<PointId, PointId>> violating;
  std::string reason;
};

PeakCheck verify_peak_property(const Pseudometric &d, const Pseudometric &rho, PointId x,
                               PointId y);

} // namespace pmcone
