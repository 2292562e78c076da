#include "pmcone/fuzz.hpp"

#include "pmcone/document.hpp"
#include "pmcone/peaking.hpp"
#include "pmcone/random.hpp"
#include "pmcone/reconstruct.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace pmcone {

namespace {

using Failure = std::optional<std::string>;

std::string instance_text(const Pseudometric &d) {
  return to_json(make_document(d.space(), {{"d", d}})).dump();
}

Failure check_peaking(const Pseudometric &d, PointId x, PointId y, const Extender &extend) {
  const PeakingTranscript t = build_peaking(d, x, y, extend);
  const Rational four_b = Rational(4) * t.b;
  const Rational peak = four_b + Rational(1);
  if (t.rho(x, y) != peak)
    return "rho(x,y) = " + t.rho(x, y).to_string() + ", expected 4b+1 = " + peak.to_string();
  if (sup_norm(t.rho) != peak)
    return "‖rho‖ = " + sup_norm(t.rho).to_string() + ", expected " + peak.to_string();
  for (std::size_t n = 0; n < t.rho_n.size(); ++n)
    if (sup_norm(t.rho_n[n]) != four_b)
      return "‖rho_" + std::to_string(n + 1) + "‖ = " + sup_norm(t.rho_n[n]).to_string() +
             ", expected 4b = " + four_b.to_string();

  const PeakCheck star = verify_peak_property(d, t.rho, x, y);
  if (!star.holds) return "peak property fails: " + star.reason;

  const Pseudometric sum = d + t.rho;
  if (sup_norm(sum) != d(x, y) + peak)
    return "‖d+rho‖ = " + sup_norm(sum).to_string() + ", expected " + (d(x, y) + peak).to_string();
  if (maximizer_doubletons(sum) != std::set<Doubleton>{Doubleton(x, y)})
    return "d+rho is not uniquely maximized at the target pair";

  const Rational bound = peaking_lip_bound(t, d);
  if (lip_constant(t.rho) > bound)
    return "lip(rho) = " + lip_constant(t.rho).to_string() + " exceeds " + bound.to_string();

  const unsigned big_n = t.n0 + 10;
  const Pseudometric &last = t.rho_n.back();
  const Pseudometric s_big = peaking_partial_sum(t, big_n);
  const Pseudometric s_n0 = peaking_partial_sum(t, t.n0);
  const Rational gap = Rational::inverse_power_of_two(t.n0) - Rational::inverse_power_of_two(big_n);
  if (difference(s_big, s_n0) != last.scaled(gap).values())
    return "partial sums S_N - S_n0 differ from rho_n0·(2^-n0 - 2^-N)";
  if (difference(t.rho, s_big) != last.scaled(Rational::inverse_power_of_two(big_n)).values())
    return "closed-form tail differs from the partial sum S_N by more than rho_n0·2^-N";
  return std::nullopt;
}

Failure check_extension(const Pseudometric &source, const std::vector<PointId> &subset,
                        const Extender &extend) {
  const PartialPseudometric pd = PartialPseudometric::restrict(source, subset);
  const Pseudometric ext = extend(pd);
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = 0; j < subset.size(); ++j)
      if (ext(subset[i], subset[j]) != pd.values()(i, j))
        return "extension changes the value at (" + source.space().label(subset[i]) + "," +
               source.space().label(subset[j]) + ")";
  if (sup_norm(ext) != pd.sup_norm())
    return "‖ext‖ = " + sup_norm(ext).to_string() + ", subset norm " + pd.sup_norm().to_string();
  if (lip_constant(ext) != pd.lip())
    return "lip(ext) = " + lip_constant(ext).to_string() + ", subset lip " + pd.lip().to_string();
  validate_pseudometric(source.space_ptr(), ext.values());
  return std::nullopt;
}

Failure check_reconstruction(Rng &rng, std::size_t n, const ConeFamily &family) {
  const SpacePtr y_space = random_space(rng, n, 16, "y");
  const Bijection phi = random_bijection(rng, n);
  const SpacePtr x_space =
      family.is_lpmk() ? transport_space(*y_space, phi, "x") : random_space(rng, n, 16, "x");
  CompositionOracle oracle = compose(x_space, y_space, phi, family);

  const DoubletonTable table = recover_doubleton_map(
      oracle, {Pseudometric::zero(y_space), Pseudometric::base(y_space)}, 3);
  const ReconstructionResult result = recover_point_map(table, x_space, y_space);

  std::vector<Pseudometric> probes;
  for (int i = 0; i < 10; ++i)
    probes.push_back(family.is_lpmk() ? random_lpmk_member(rng, x_space, family.k())
                                      : random_pseudometric(rng, x_space));

  if (n == 2) {
    if (!result.ambiguity) return std::string("two-point reconstruction without the ambiguity flag");
    for (const Bijection &psi : all_bijections(2))
      if (!verify_composition_formula(oracle, psi, probes).passed())
        return std::string("a two-point bijection fails the composition formula");
    return std::nullopt;
  }
  if (result.ambiguity) return std::string("ambiguity flag set for more than two points");
  if (!(result.phi == phi)) return std::string("recovered bijection differs from the true one");
  const CheckReport report = verify_composition_formula(oracle, result.phi, probes);
  if (!report.passed()) return "composition formula fails: " + report.violations.front().detail;
  const ClassificationCertificate cert = classify(oracle, result);
  if (!cert.verified) return std::string("classification certificate is not verified");
  if (family.is_lpmk() && cert.verdict != Verdict::Isometry)
    return std::string("LPMk round trip along an isometry classified as ") + to_string(cert.verdict);
  return std::nullopt;
}

struct TrialOutcome {
  bool peaking = false;
  bool extension = false;
  bool reconstruction = false;
  std::string transcript;
};

template <class F> Failure guarded(F &&f) {
  try {
    return f();
  } catch (const std::exception &e) {
    return std::string("exception: ") + e.what();
  }
}

TrialOutcome run_trial(const FuzzOptions &opt, std::size_t index) {
  const std::uint64_t seed = derive_seed(opt.seed, index);
  Rng rng(seed);
  const Extender extend =
      opt.break_extension ? Extender(extend_without_truncation) : Extender(extend_lip_preserving);
  const std::size_t n = static_cast<std::size_t>(rng.between(2, static_cast<std::int64_t>(opt.max_points)));
  const SpacePtr space = random_space(rng, n);

  std::ostringstream log;
  TrialOutcome out;

  const Pseudometric d = random_pseudometric(rng, space);
  const PointId x = rng.below(n);
  PointId y = rng.below(n - 1);
  if (y >= x) ++y;
  const Failure peak = guarded([&] { return check_peaking(d, x, y, extend); });
  out.peaking = !peak;
  if (peak)
    log << "peaking at {" << space->label(x) << "," << space->label(y) << "}: " << *peak << "\n"
        << "  input: " << instance_text(d) << "\n";

  const Pseudometric source = random_pseudometric(rng, space);
  const std::vector<PointId> subset = random_subset(rng, n);
  const Failure ext = guarded([&] { return check_extension(source, subset, extend); });
  out.extension = !ext;
  if (ext) {
    log << "extension from {";
    for (std::size_t i = 0; i < subset.size(); ++i) log << (i ? "," : "") << space->label(subset[i]);
    log << "}: " << *ext << "\n  input: " << instance_text(source) << "\n";
  }

  const Failure rec = guarded([&] { return check_reconstruction(rng, n, opt.family); });
  out.reconstruction = !rec;
  if (rec) log << "reconstruction on " << n << " points: " << *rec << "\n";

  if (peak || ext || rec) {
    std::ostringstream head;
    head << "trial " << index << " (derived seed " << seed << ")\n";
    out.transcript = head.str() + log.str();
  }
  return out;
}

} // namespace

Pseudometric extend_without_truncation(const PartialPseudometric &pd) {
  const Space &z = pd.space();
  const std::size_t n = z.size();
  const auto &a = pd.subset();
  if (a.size() == 1) return Pseudometric::zero(pd.space_ptr());
  const Rational lip = pd.lip();
  Matrix m(n);
  for (PointId x = 0; x < n; ++x)
    for (PointId y = x + 1; y < n; ++y) {
      Rational g = lip * z.distance(x, y);
      for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j)
          g = min(g, lip * z.distance(x, a[i]) + pd.values()(i, j) + lip * z.distance(a[j], y));
      m.set_symmetric(x, y, g);
    }
  return Pseudometric::trusted(pd.space_ptr(), std::move(m));
}

FuzzSummary run_fuzz(const FuzzOptions &options) {
  if (options.max_points < 2) throw Error("--max-points must be at least 2");
  FuzzSummary summary;
  summary.options = options;
  std::vector<TrialOutcome> outcomes(options.trials);

  const unsigned jobs = std::max(1u, options.jobs);
  auto worker = [&](unsigned w) {
    for (std::size_t i = w; i < options.trials; i += jobs) outcomes[i] = run_trial(options, i);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
  }

  auto tally = [](SuiteTally &t, bool ok) { ++(ok ? t.passed : t.failed); };
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const TrialOutcome &o = outcomes[i];
    tally(summary.peaking, o.peaking);
    tally(summary.extension, o.extension);
    tally(summary.reconstruction, o.reconstruction);
    if (!o.transcript.empty() && !summary.first_failure_trial) {
      summary.first_failure_trial = i;
      summary.first_failure = o.transcript;
    }
  }
  return summary;
}

std::string FuzzSummary::report() const {
  std::ostringstream os;
  os << "trials: " << options.trials << "\n"
     << "max-points: " << options.max_points << "\n"
     << "seed: " << options.seed << "\n"
     << "family: " << options.family.to_string() << "\n";
  if (options.break_extension) os << "fault injection: extension without truncation\n";
  auto line = [&](const char *name, const SuiteTally &t) {
    os << name << ": " << t.passed << " passed, " << t.failed << " failed\n";
  };
  line("peaking", peaking);
  line("extension", extension);
  line("reconstruction", reconstruction);
  os << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  if (first_failure_trial) os << "first failure:\n" << first_failure;
  return os.str();
}

} // namespace pmcone
