#pragma once

#include "pmcone/oracle.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pmcone {

/// Maximizers observed for one codomain doubleton, one entry per probe.
struct PairEvidence {
  Doubleton pair;
  std::vector<Doubleton> probe_maximizers;
};

/// Φ : D(Y) -> D(X) as recovered from peaking probes.
struct DoubletonTable {
  std::map<Doubleton, Doubleton> map;
  std::size_t probes_used = 0;
  std::vector<PairEvidence> evidence;
};

/// For every doubleton {x, y} of the codomain, builds `m` probes peaked at
/// {x, y}: probe j is (s + rho) / λ scaled by 1 / (1 + ⌊j / |seeds|⌋), where
/// s = seeds[j mod |seeds|], rho peaks s at {x, y}, and λ = max(1, 2·lip(s + rho)/k)
/// for LPM_k (λ = 1 otherwise). Each probe is pulled back through T^-1 and
/// must have a unique maximizer; all m maximizers must agree.
///
/// Throws NotPpPreserving, Inconsistent (including two doubletons sharing an
/// image) or BudgetExhausted.
DoubletonTable recover_doubleton_map(IsometryOracle &oracle,
                                     const std::vector<Pseudometric> &seeds, std::size_t m = 3);

struct ReconstructionResult {
  Bijection phi;                             // Y -> X
  std::map<Doubleton, Doubleton> phi_map;    // Φ({y, z}) = {phi(y), phi(z)}
  std::size_t probes_used = 0;
  std::vector<PairEvidence> consistency;
  /// Two-point spaces: both bijections realise the same operator, the
  /// lexicographically least one is returned.
  bool ambiguity = false;
};

/// phi(y) = the common point of all Φ({y, z}), z ≠ y. Throws EmptyIntersection
/// (with a triangle-inequality certificate) or NotSingleton.
ReconstructionResult recover_point_map(const DoubletonTable &table, const SpacePtr &x_space,
                                       const SpacePtr &y_space);

/// T(d)(y1, y2) = d(phi(y1), phi(y2)) entrywise for every domain probe.
CheckReport verify_composition_formula(IsometryOracle &oracle, const Bijection &phi,
                                       const std::vector<Pseudometric> &probes);

/// Domain probe that tells phi and psi apart: zero on {phi(x), phi(y)} and
/// positive on {psi(x), psi(y)} for suitable x, y, extended to X and scaled
/// into the family's cone. Needs |Y| >= 3 and phi != psi.
Pseudometric separating_probe(const SpacePtr &x_space, const Bijection &phi, const Bijection &psi,
                              const ConeFamily &family);

enum class Verdict { UniformHomeomorphism, BiLipschitz, Isometry };
const char *to_string(Verdict v);

/// One rung of the k' chain: lip(T(k'·d_X)) and lip(T^-1(k'·d_Y)) stay below k.
struct KPrimeStep {
  Rational k_prime;
  Rational forward_lip;
  Rational inverse_lip;
  bool holds = false;
};

struct ClassificationCertificate {
  Verdict verdict = Verdict::UniformHomeomorphism;
  bool uniform_homeomorphism = true;
  std::optional<Rational> lambda;
  std::vector<KPrimeStep> chain;
  std::vector<std::string> witnesses;
  /// Every stated inequality was checked and held.
  bool verified = true;
};

/// For PM / LPM: λ = max(lip(T(d_X)), lip(T^-1(d_Y))) with the two-sided bound
/// checked on every pair; λ = 1 upgrades to isometry. For LPM_k: the k' chain
/// for k' in {k/2, 3k/4, 7k/8} followed by the exact isometry test.
ClassificationCertificate classify(IsometryOracle &oracle, const ReconstructionResult &result,
                                   std::optional<Rational> k = std::nullopt);

} // namespace pmcone
