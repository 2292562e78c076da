#pragma once

#include "pmcone/pseudometric.hpp"

#include <set>
#include <vector>

namespace pmcone {

/// ‖d‖, the largest entry.
Rational sup_norm(const Pseudometric &d);

/// lip(d) = max over distinct pairs of d(x, y) / d_Z(x, y).
/// Throws DegenerateSpace on a one-point space.
Rational lip_constant(const Pseudometric &d);

/// Unordered pairs attaining ‖d‖. Throws ZeroPseudometric when ‖d‖ = 0.
std::set<Doubleton> maximizer_doubletons(const Pseudometric &d);

/// All off-diagonal entries strictly positive.
bool is_admissible(const Pseudometric &d);

/// Membership summary of d in the cones of interest for a given k > 0.
///
/// The zero pseudometric reports an empty maximizer set and is never in Pp:
/// every pair ties at 0, so there is no unique peak.
struct ConeReport {
  Rational k;
  Rational sup_norm;
  Rational lip;
  bool is_admissible = false;
  std::set<Doubleton> maximizers;
  bool in_pp = false;
  bool in_lpmk = false;         // lip < k
  bool in_lpmk_closure = false; // lip <= k
};

ConeReport cone_report(const Pseudometric &d, const Rational &k);

/// Pointwise maximum of |f(x) - f(y)| over a family of point functions,
/// each given by its values in point order. Throws EmptyFamily.
Pseudometric d_of_F(const SpacePtr &space, const std::vector<std::vector<Rational>> &functions);

/// d + δ·d_Z with δ = min{eps/‖d_Z‖, k - lip(d)} / 2: admissible, still in
/// LPM_k, and within eps of d. Throws NotInLPMk when lip(d) >= k.
struct Perturbation {
  Rational delta;
  Pseudometric result;
};
Perturbation perturb_to_admissible(const Pseudometric &d, const Rational &k, const Rational &eps);

/// (1 - δ)·d with δ = min{1, eps/‖d‖} / 2. Pulls a boundary element
/// (lip(d) = k) strictly inside LPM_k while moving less than eps.
Perturbation shrink_into_lpmk(const Pseudometric &d, const Rational &eps);

/// Witness that d lies outside the closed cone lip <= k, together with a
/// sup-distance radius inside which every pseudometric stays outside.
struct SeparationWitness {
  Doubleton pair;
  Rational radius; // d(x, y) - k·d_Z(x, y) > 0
};

/// Picks the pair with the largest radius (lexicographically first on ties).
/// Throws InClosure when lip(d) <= k.
SeparationWitness separation_radius(const Pseudometric &d, const Rational &k);

} // namespace pmcone
