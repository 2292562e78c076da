#include "pmcone/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

std::size_t default_trials() {
  if (const char *env = std::getenv("PMCONE_FUZZ_TRIALS")) {
    try {
      return std::stoul(env);
    } catch (const std::exception &) {
      std::cerr << "warning: ignoring malformed PMCONE_FUZZ_TRIALS='" << env << "'\n";
    }
  }
  return 100;
}

} // namespace

int main(int argc, char **argv) {
  using namespace pmcone;
  CLI::App app{"Exact computations in cones of pseudometrics over finite metric spaces"};
  app.require_subcommand(1);

  ValidateOptions validate;
  auto *v = app.add_subcommand("validate", "Check the space and every named pseudometric");
  v->add_option("file", validate.file, "Document")->required();
  v->add_option("-k,--k", validate.k, "Lipschitz bound for the LPM_k membership report");

  ExtendOptions extend;
  auto *e = app.add_subcommand("extend", "Extend a pseudometric from a subset to the whole space");
  e->add_option("file", extend.file, "Document")->required();
  e->add_option("--subset", extend.subset, "Comma-separated labels");
  e->add_option("--metric", extend.metric, "Name of the pseudometric to extend");
  e->add_flag("--check", extend.check, "Re-verify restriction, sup-norm and lip");
  e->add_option("-o,--output", extend.output, "Write the document here instead of stdout");

  PeakOptions peak;
  auto *p = app.add_subcommand("peak", "Build a peaking pseudometric at a pair");
  p->add_option("file", peak.file, "Document")->required();
  p->add_option("--metric", peak.metric, "Name of the pseudometric d");
  p->add_option("--pair", peak.pair, "Target pair x,y")->required();
  p->add_flag("--transcript", peak.transcript, "Include a, b, n0, the annuli and every rho_n");
  p->add_option("-o,--output", peak.output, "Write the document here instead of stdout");

  ReconstructOptions rec;
  auto *r = app.add_subcommand("reconstruct", "Recover the point bijection behind an isometry");
  r->add_option("file_x", rec.file_x, "Domain document")->required();
  r->add_option("file_y", rec.file_y, "Codomain document")->required();
  r->add_option("--oracle", rec.oracle,
                "identity | composition:FILE | constant-shift|squaring|probe-permutation|"
                "peak-flattening[:FILE]");
  r->add_option("--family", rec.family, "pm | lpm | lpmk:k");
  r->add_option("--probes", rec.probes, "Peaking probes per doubleton");
  r->add_option("--verify-probes", rec.verify_probes, "Random probes for the checks");
  r->add_option("--seed", rec.seed, "Seed for the random probes");

  FuzzOptions fuzz;
  fuzz.trials = default_trials();
  std::string fuzz_family = "pm";
  auto *f = app.add_subcommand("fuzz", "Randomised peaking, extension and reconstruction checks");
  f->add_option("--trials", fuzz.trials, "Number of trials (default: $PMCONE_FUZZ_TRIALS or 100)");
  f->add_option("--max-points", fuzz.max_points, "Largest space size");
  f->add_option("--seed", fuzz.seed, "Master seed");
  f->add_option("--family", fuzz_family, "pm | lpm | lpmk:k");
  f->add_flag("--break-extension", fuzz.break_extension, "Inject an extension that skips truncation");
  f->add_option("--jobs", fuzz.jobs, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &err) {
    const int code = app.exit(err);
    return code == 0 ? kExitPass : kExitInputError;
  }

  if (*v) return cmd_validate(validate, std::cout, std::cerr);
  if (*e) return cmd_extend(extend, std::cout, std::cerr);
  if (*p) return cmd_peak(peak, std::cout, std::cerr);
  if (*r) return cmd_reconstruct(rec, std::cout, std::cerr);
  try {
    fuzz.family = ConeFamily::parse(fuzz_family);
  } catch (const std::exception &err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitInputError;
  }
  return cmd_fuzz(fuzz, std::cout, std::cerr);
}
