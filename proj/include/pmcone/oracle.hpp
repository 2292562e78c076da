#pragma once

#include "pmcone/cone.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pmcone {

/// Which cone of pseudometrics an isometry acts on.
class ConeFamily {
public:
  enum class Tag { PM, LPM, LPMk };

  static ConeFamily pm() { return ConeFamily(Tag::PM, {}); }
  static ConeFamily lpm() { return ConeFamily(Tag::LPM, {}); }
  static ConeFamily lpmk(const Rational &k);
  /// "pm", "lpm" or "lpmk:<rational>".
  static ConeFamily parse(std::string_view text);

  Tag tag() const { return tag_; }
  /// Only meaningful for LPMk.
  const Rational &k() const { return k_; }
  bool is_lpmk() const { return tag_ == Tag::LPMk; }

  /// PM and LPM contain every pseudometric on a finite space.
  bool contains(const Pseudometric &d) const;
  std::string to_string() const;

  friend bool operator==(const ConeFamily &, const ConeFamily &) = default;

private:
  ConeFamily(Tag tag, Rational k) : tag_(tag), k_(std::move(k)) {}

  Tag tag_;
  Rational k_;
};

/// Bijection from the codomain points (Y) onto the domain points (X),
/// stored as the image of each codomain index.
class Bijection {
public:
  static Bijection create(std::vector<PointId> images);
  static Bijection identity(std::size_t n);

  std::size_t size() const { return images_.size(); }
  PointId operator()(PointId y) const { return images_.at(y); }
  PointId preimage(PointId x) const { return preimages_.at(x); }
  const std::vector<PointId> &images() const { return images_; }
  Bijection inverted() const { return create(preimages_); }

  friend bool operator==(const Bijection &a, const Bijection &b) { return a.images_ == b.images_; }

private:
  Bijection(std::vector<PointId> images, std::vector<PointId> preimages)
      : images_(std::move(images)), preimages_(std::move(preimages)) {}

  std::vector<PointId> images_;
  std::vector<PointId> preimages_;
};

/// Matrix on `target` with entry (p, q) = d(map(p), map(q)).
Pseudometric pullback(const Pseudometric &d, const Bijection &map, const SpacePtr &target);

/// Black-box isometry T between two cones, queried one pseudometric at a
/// time. Every query is counted against a budget; inputs are checked against
/// the declared cone and outputs are validated before they are handed back,
/// so a misbehaving implementation surfaces as an exception rather than as a
/// corrupted Pseudometric.
///
/// Instances carry a mutable query counter and are not thread-safe.
class IsometryOracle {
public:
  static constexpr std::size_t kDefaultBudget = 1'000'000;

  IsometryOracle(SpacePtr domain, SpacePtr codomain, ConeFamily family, std::size_t budget);
  virtual ~IsometryOracle() = default;

  /// T(d) for d in the domain cone. Throws NotInCone, FamilyMismatch,
  /// OracleFault or BudgetExhausted.
  Pseudometric forward(const Pseudometric &d);
  /// T^-1(rho) for rho in the codomain cone.
  Pseudometric inverse(const Pseudometric &rho);

  const SpacePtr &domain() const { return domain_; }
  const SpacePtr &codomain() const { return codomain_; }
  const ConeFamily &family() const { return family_; }
  std::size_t queries_used() const { return used_; }
  std::size_t budget() const { return budget_; }

  virtual std::string name() const = 0;

protected:
  virtual Matrix apply_forward(const Pseudometric &d) = 0;
  virtual Matrix apply_inverse(const Pseudometric &rho) = 0;

private:
  Pseudometric query(const Pseudometric &input, const SpacePtr &from, const SpacePtr &to,
                     bool forward);

  SpacePtr domain_;
  SpacePtr codomain_;
  ConeFamily family_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

/// Composition operator S(d)(y1, y2) = d(phi(y1), phi(y2)).
class CompositionOracle final : public IsometryOracle {
public:
  CompositionOracle(SpacePtr domain, SpacePtr codomain, Bijection phi, ConeFamily family,
                    std::size_t budget);

  const Bijection &phi() const { return phi_; }
  std::string name() const override { return "composition"; }

protected:
  Matrix apply_forward(const Pseudometric &d) override;
  Matrix apply_inverse(const Pseudometric &rho) override;

private:
  Bijection phi_;
};

/// Composition oracle along phi: codomain -> domain. For LPMk families the
/// caller is responsible for phi being distance-compatible; images that leave
/// the cone raise FamilyMismatch when queried.
CompositionOracle compose(SpacePtr domain, SpacePtr codomain, Bijection phi, ConeFamily family,
                          std::size_t budget = IsometryOracle::kDefaultBudget);

/// Deliberately dishonest oracles, each built around a base bijection.
enum class BrokenKind {
  ConstantShift,    // pullback + 1 on every off-diagonal entry
  Squaring,         // pullback with every entry squared
  ProbePermutation, // pullback along a permutation chosen from the probe's hash
  PeakFlattening,   // max(pullback, ‖d‖ on every pair): destroys unique peaks
};

const char *to_string(BrokenKind kind);
std::optional<BrokenKind> parse_broken_kind(std::string_view name);

std::unique_ptr<IsometryOracle> make_broken_oracle(BrokenKind kind, SpacePtr domain,
                                                   SpacePtr codomain, Bijection phi,
                                                   ConeFamily family,
                                                   std::size_t budget = IsometryOracle::kDefaultBudget);

// ---------------------------------------------------------------------------
// Preservation checks

struct Violation {
  std::size_t probe = 0;
  std::string direction; // "forward" or "inverse"
  std::string detail;
  std::optional<Doubleton> pair;
  std::optional<Rational> observed;
  std::optional<Rational> expected;
};

struct CheckReport {
  std::string check;
  std::size_t evaluations = 0;
  std::vector<Violation> violations;
  /// Probes that failed a precondition and were not evaluated.
  std::vector<std::string> skipped;

  bool passed() const { return violations.empty(); }
};

/// Probes for the two directions: domain probes are fed to T, codomain
/// probes to T^-1.
struct ProbeSet {
  std::vector<Pseudometric> domain;
  std::vector<Pseudometric> codomain;
};

/// ‖T(d)‖ = ‖d‖, ‖T^-1(rho)‖ = ‖rho‖, and T(0) = 0, T^-1(0) = 0.
CheckReport check_norm_preserving(IsometryOracle &oracle, const ProbeSet &probes);

/// T(t·d) = t·T(d) entrywise for every probe and t in [0, 1], both directions.
CheckReport check_scalar_preserving(IsometryOracle &oracle, const ProbeSet &probes,
                                    const std::vector<Rational> &scalars);

/// Images of Pp probes are in Pp, both directions. Probes that are not in Pp
/// are listed under `skipped`.
CheckReport check_pp_preserving(IsometryOracle &oracle, const ProbeSet &probes);

} // namespace pmcone
