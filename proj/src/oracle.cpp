#include "pmcone/oracle.hpp"

#include <functional>

namespace pmcone {

// ---------------------------------------------------------------------------
// ConeFamily

ConeFamily ConeFamily::lpmk(const Rational &k) {
  if (k.sign() <= 0) throw Error("LPM_k needs k > 0");
  return ConeFamily(Tag::LPMk, k);
}

ConeFamily ConeFamily::parse(std::string_view text) {
  if (text == "pm") return pm();
  if (text == "lpm") return lpm();
  if (text.starts_with("lpmk:")) {
    try {
      return lpmk(Rational::parse(text.substr(5)));
    } catch (const std::invalid_argument &e) {
      throw Error(std::string("bad cone family '") + std::string(text) + "': " + e.what());
    }
  }
  throw Error("unknown cone family '" + std::string(text) + "' (expected pm, lpm or lpmk:<k>)");
}

bool ConeFamily::contains(const Pseudometric &d) const {
  if (tag_ != Tag::LPMk || d.size() < 2) return true;
  return lip_constant(d) < k_;
}

std::string ConeFamily::to_string() const {
  switch (tag_) {
  case Tag::PM: return "pm";
  case Tag::LPM: return "lpm";
  case Tag::LPMk: return "lpmk:" + k_.to_string();
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Bijection

Bijection Bijection::create(std::vector<PointId> images) {
  std::vector<PointId> pre(images.size(), images.size());
  for (PointId y = 0; y < images.size(); ++y) {
    const PointId x = images[y];
    if (x >= images.size() || pre[x] != images.size())
      throw Error("map is not a bijection at index " + std::to_string(y));
    pre[x] = y;
  }
  return Bijection(std::move(images), std::move(pre));
}

Bijection Bijection::identity(std::size_t n) {
  std::vector<PointId> id(n);
  for (PointId i = 0; i < n; ++i) id[i] = i;
  return create(std::move(id));
}

Pseudometric pullback(const Pseudometric &d, const Bijection &map, const SpacePtr &target) {
  if (map.size() != target->size() || map.size() != d.size())
    throw SpaceMismatch("bijection size does not match the spaces");
  Matrix m(map.size());
  for (PointId p = 0; p < map.size(); ++p)
    for (PointId q = p + 1; q < map.size(); ++q) m.set_symmetric(p, q, d(map(p), map(q)));
  return Pseudometric::trusted(target, std::move(m));
}

// ---------------------------------------------------------------------------
// IsometryOracle

IsometryOracle::IsometryOracle(SpacePtr domain, SpacePtr codomain, ConeFamily family,
                               std::size_t budget)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), family_(std::move(family)),
      budget_(budget) {
  if (budget_ == 0) throw Error("oracle budget must be positive");
}

Pseudometric IsometryOracle::forward(const Pseudometric &d) {
  return query(d, domain_, codomain_, true);
}

Pseudometric IsometryOracle::inverse(const Pseudometric &rho) {
  return query(rho, codomain_, domain_, false);
}

Pseudometric IsometryOracle::query(const Pseudometric &input, const SpacePtr &from,
                                   const SpacePtr &to, bool forward) {
  const char *dir = forward ? "forward" : "inverse";
  if (input.space_ptr() != from && !(input.space() == *from))
    throw SpaceMismatch(std::string(dir) + " query on the wrong space");
  if (!family_.contains(input))
    throw NotInCone(std::string(dir) + " query outside " + family_.to_string());
  if (used_ >= budget_)
    throw BudgetExhausted("oracle budget of " + std::to_string(budget_) + " queries exhausted");
  ++used_;
  Matrix out = forward ? apply_forward(input) : apply_inverse(input);
  Pseudometric image = [&] {
    try {
      return validate_pseudometric(to, std::move(out));
    } catch (const AxiomViolation &e) {
      throw OracleFault(std::string(dir) + " image is not a pseudometric: " + e.what());
    }
  }();
  if (!family_.contains(image))
    throw FamilyMismatch(std::string(dir) + " image has lip " +
                         lip_constant(image).to_string() + ", outside " + family_.to_string());
  return image;
}

// ---------------------------------------------------------------------------
// Composition operators

CompositionOracle::CompositionOracle(SpacePtr domain, SpacePtr codomain, Bijection phi,
                                     ConeFamily family, std::size_t budget)
    : IsometryOracle(std::move(domain), std::move(codomain), std::move(family), budget),
      phi_(std::move(phi)) {
  if (this->domain()->size() != this->codomain()->size() || phi_.size() != this->domain()->size())
    throw SpaceMismatch("composition needs equally sized spaces and a matching bijection");
}

Matrix CompositionOracle::apply_forward(const Pseudometric &d) {
  return pullback(d, phi_, codomain()).values();
}

Matrix CompositionOracle::apply_inverse(const Pseudometric &rho) {
  return pullback(rho, phi_.inverted(), domain()).values();
}

CompositionOracle compose(SpacePtr domain, SpacePtr codomain, Bijection phi, ConeFamily family,
                          std::size_t budget) {
  return CompositionOracle(std::move(domain), std::move(codomain), std::move(phi),
                           std::move(family), budget);
}

// ---------------------------------------------------------------------------
// Broken fixtures

namespace {

using Transform = std::function<Matrix(const Pseudometric &pulled, const Pseudometric &input)>;

class BrokenOracle final : public IsometryOracle {
public:
  BrokenOracle(BrokenKind kind, SpacePtr domain, SpacePtr codomain, Bijection phi,
               ConeFamily family, std::size_t budget)
      : IsometryOracle(std::move(domain), std::move(codomain), std::move(family), budget),
        kind_(kind), phi_(std::move(phi)), phi_inv_(phi_.inverted()) {}

  std::string name() const override { return to_string(kind_); }

protected:
  Matrix apply_forward(const Pseudometric &d) override { return distort(d, phi_, codomain()); }
  Matrix apply_inverse(const Pseudometric &rho) override {
    return distort(rho, phi_inv_, domain());
  }

private:
  Matrix distort(const Pseudometric &input, const Bijection &map, const SpacePtr &target) const {
    const std::size_t n = input.size();
    if (kind_ == BrokenKind::ProbePermutation) {
      std::uint64_t h = 0;
      for (PointId i = 0; i < n; ++i)
        for (PointId j = i + 1; j < n; ++j) h = h * 31 + input(i, j).fingerprint();
      const std::size_t shift = h % n;
      std::vector<PointId> rotated(n);
      for (PointId p = 0; p < n; ++p) rotated[p] = map((p + shift) % n);
      return pullback(input, Bijection::create(std::move(rotated)), target).values();
    }
    Matrix m = pullback(input, map, target).values();
    const Rational norm = sup_norm(input);
    for (PointId i = 0; i < n; ++i)
      for (PointId j = i + 1; j < n; ++j) {
        const Rational v = m(i, j);
        switch (kind_) {
        case BrokenKind::ConstantShift: m.set_symmetric(i, j, v + Rational(1)); break;
        case BrokenKind::Squaring: m.set_symmetric(i, j, v * v); break;
        case BrokenKind::PeakFlattening: m.set_symmetric(i, j, max(v, norm)); break;
        case BrokenKind::ProbePermutation: break;
        }
      }
    return m;
  }

  BrokenKind kind_;
  Bijection phi_;
  Bijection phi_inv_;
};

} // namespace

const char *to_string(BrokenKind kind) {
  switch (kind) {
  case BrokenKind::ConstantShift: return "constant-shift";
  case BrokenKind::Squaring: return "squaring";
  case BrokenKind::ProbePermutation: return "probe-permutation";
  case BrokenKind::PeakFlattening: return "peak-flattening";
  }
  return "?";
}

std::optional<BrokenKind> parse_broken_kind(std::string_view name) {
  for (BrokenKind k : {BrokenKind::ConstantShift, BrokenKind::Squaring,
                       BrokenKind::ProbePermutation, BrokenKind::PeakFlattening})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::unique_ptr<IsometryOracle> make_broken_oracle(BrokenKind kind, SpacePtr domain,
                                                   SpacePtr codomain, Bijection phi,
                                                   ConeFamily family, std::size_t budget) {
  if (domain->size() != codomain->size() || phi.size() != domain->size())
    throw SpaceMismatch("broken oracle needs equally sized spaces and a matching bijection");
  return std::make_unique<BrokenOracle>(kind, std::move(domain), std::move(codomain),
                                        std::move(phi), std::move(family), budget);
}

// ---------------------------------------------------------------------------
// Checks

namespace {

template <class Body>
void guarded(CheckReport &report, std::size_t probe, const char *direction, Body &&body) {
  try {
    body();
  } catch (const BudgetExhausted &) {
    throw;
  } catch (const Error &e) {
    report.violations.push_back({probe, direction, std::string("oracle raised: ") + e.what(), {},
                                 {}, {}});
  }
}

void compare_entries(CheckReport &report, std::size_t probe, const char *direction,
                     const Pseudometric &observed, const Pseudometric &expected,
                     const std::string &what) {
  for (PointId i = 0; i < observed.size(); ++i)
    for (PointId j = i + 1; j < observed.size(); ++j)
      if (observed(i, j) != expected(i, j)) {
        report.violations.push_back({probe, direction,
                                     what + " differs at " +
                                         observed.space().describe({i, j}),
                                     Doubleton(i, j), observed(i, j), expected(i, j)});
        return;
      }
}

} // namespace

CheckReport check_norm_preserving(IsometryOracle &oracle, const ProbeSet &probes) {
  CheckReport report;
  report.check = "norm-preserving";
  auto norm_case = [&](std::size_t idx, const char *dir, const Pseudometric &probe, bool fwd) {
    guarded(report, idx, dir, [&] {
      const Pseudometric image = fwd ? oracle.forward(probe) : oracle.inverse(probe);
      ++report.evaluations;
      const Rational in = sup_norm(probe);
      const Rational out = sup_norm(image);
      if (in != out)
        report.violations.push_back({idx, dir,
                                     "norm " + out.to_string() + " of image differs from " +
                                         in.to_string(),
                                     {}, out, in});
    });
  };
  // Probe index 0 in each direction is the zero pseudometric.
  norm_case(0, "forward", Pseudometric::zero(oracle.domain()), true);
  norm_case(0, "inverse", Pseudometric::zero(oracle.codomain()), false);
  for (std::size_t i = 0; i < probes.domain.size(); ++i)
    norm_case(i + 1, "forward", probes.domain[i], true);
  for (std::size_t i = 0; i < probes.codomain.size(); ++i)
    norm_case(i + 1, "inverse", probes.codomain[i], false);
  return report;
}

CheckReport check_scalar_preserving(IsometryOracle &oracle, const ProbeSet &probes,
                                    const std::vector<Rational> &scalars) {
  CheckReport report;
  report.check = "scalar-preserving";
  for (const Rational &t : scalars)
    if (t.sign() < 0 || t > Rational(1))
      throw Error("scalar check uses t in [0, 1], got " + t.to_string());
  auto run = [&](const std::vector<Pseudometric> &list, const char *dir, bool fwd) {
    for (std::size_t i = 0; i < list.size(); ++i)
      for (const Rational &t : scalars)
        guarded(report, i, dir, [&] {
          auto apply = [&](const Pseudometric &p) {
            return fwd ? oracle.forward(p) : oracle.inverse(p);
          };
          const Pseudometric lhs = apply(list[i].scaled(t));
          const Pseudometric rhs = apply(list[i]).scaled(t);
          ++report.evaluations;
          compare_entries(report, i, dir, lhs, rhs, "T(t·d) vs t·T(d) at t = " + t.to_string());
        });
  };
  run(probes.domain, "forward", true);
  run(probes.codomain, "inverse", false);
  return report;
}

CheckReport check_pp_preserving(IsometryOracle &oracle, const ProbeSet &probes) {
  CheckReport report;
  report.check = "Pp-preserving";
  auto run = [&](const std::vector<Pseudometric> &list, const char *dir, bool fwd) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const ConeReport in = cone_report(list[i], Rational(1));
      if (!in.in_pp) {
        report.skipped.push_back(std::string(dir) + " probe " + std::to_string(i) +
                                 " is not in Pp");
        continue;
      }
      guarded(report, i, dir, [&] {
        const Pseudometric image = fwd ? oracle.forward(list[i]) : oracle.inverse(list[i]);
        ++report.evaluations;
        const ConeReport out = cone_report(image, Rational(1));
        if (!out.in_pp)
          report.violations.push_back({i, dir,
                                       "image has " + std::to_string(out.maximizers.size()) +
                                           " maximizing doubletons",
                                       {}, {}, {}});
      });
    }
  };
  run(probes.domain, "forward", true);
  run(probes.codomain, "inverse", false);
  return report;
}

} // namespace pmcone
