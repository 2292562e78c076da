#include "pmcone/commands.hpp"

#include "pmcone/document.hpp"
#include "pmcone/random.hpp"
#include "pmcone/reconstruct.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace pmcone {

namespace {

std::vector<std::string> split_labels(const std::string &text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    const auto first = cur.find_first_not_of(" \t");
    const auto last = cur.find_last_not_of(" \t");
    out.push_back(first == std::string::npos ? "" : cur.substr(first, last - first + 1));
  }
  return out;
}

std::vector<PointId> resolve(const Space &space, const std::vector<std::string> &labels) {
  std::vector<PointId> ids;
  for (const auto &l : labels) ids.push_back(space.index_of(l));
  return ids;
}

std::string witness_labels(const std::vector<std::string> &labels, const AxiomViolation &v) {
  const auto &w = v.witness();
  auto name = [&](PointId p) { return p < labels.size() ? labels[p] : std::to_string(p); };
  if (v.kind() == AxiomKind::Triangle)
    return "(" + name(w[0]) + ", " + name(w[1]) + ", " + name(w[2]) + ")";
  if (v.kind() == AxiomKind::Dimension) return "-";
  return "(" + name(w[0]) + ", " + name(w[1]) + ")";
}

const char *error_kind(const std::exception &e) {
  if (dynamic_cast<const NotPpPreserving *>(&e)) return "NotPpPreserving";
  if (dynamic_cast<const Inconsistent *>(&e)) return "Inconsistent";
  if (dynamic_cast<const EmptyIntersection *>(&e)) return "EmptyIntersection";
  if (dynamic_cast<const NotSingleton *>(&e)) return "NotSingleton";
  if (dynamic_cast<const BudgetExhausted *>(&e)) return "BudgetExhausted";
  if (dynamic_cast<const OracleFault *>(&e)) return "OracleFault";
  if (dynamic_cast<const FamilyMismatch *>(&e)) return "FamilyMismatch";
  if (dynamic_cast<const NotInCone *>(&e)) return "NotInCone";
  if (dynamic_cast<const AxiomViolation *>(&e)) return "AxiomViolation";
  if (dynamic_cast<const DegeneratePair *>(&e)) return "DegeneratePair";
  if (dynamic_cast<const DocumentError *>(&e)) return "DocumentError";
  return "Error";
}

void write_output(const std::string &text, const std::optional<std::string> &path, std::ostream &out) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw Error("cannot write " + *path);
  f << text;
}

const char *yes_no(bool b) { return b ? "yes" : "no"; }

std::string describe_maximizers(const Space &s, const std::set<Doubleton> &m) {
  if (m.empty()) return "none (zero pseudometric)";
  std::string out;
  for (const Doubleton &d : m) out += (out.empty() ? "" : " ") + s.describe(d);
  return out;
}

/// Probe in the family's cone: d itself, or d / t with lip(d / t) = k/2.
Pseudometric into_cone(const Pseudometric &d, const ConeFamily &family) {
  if (!family.is_lpmk() || d.size() < 2) return d;
  const Rational lip = lip_constant(d);
  if (lip < family.k()) return d;
  return d.divided(Rational(2) * lip / family.k());
}

Pseudometric random_probe(Rng &rng, const SpacePtr &space, const ConeFamily &family) {
  return into_cone(random_pseudometric(rng, space), family);
}

Pseudometric random_peaked_probe(Rng &rng, const SpacePtr &space, const ConeFamily &family) {
  const Pseudometric seed = random_pseudometric(rng, space);
  const PointId x = rng.below(space->size());
  PointId y = rng.below(space->size() - 1);
  if (y >= x) ++y;
  return into_cone(seed + build_peaking(seed, x, y).rho, family);
}

void print_check(std::ostream &out, const CheckReport &r) {
  out << "check " << r.check << ": " << (r.passed() ? "pass" : "FAIL") << " (" << r.evaluations
      << " evaluations";
  if (!r.skipped.empty()) out << ", " << r.skipped.size() << " probes skipped";
  out << ")\n";
  if (!r.passed()) {
    const Violation &v = r.violations.front();
    out << "  first violation: probe " << v.probe << " (" << v.direction << "): " << v.detail << "\n";
  }
}

} // namespace

int cmd_validate(const ValidateOptions &opt, std::ostream &out, std::ostream &err) {
  Document doc;
  Rational k;
  try {
    doc = read_document(opt.file);
    k = Rational::parse(opt.k);
    if (k.sign() <= 0) throw Error("k must be positive");
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  SpacePtr space;
  try {
    space = build_space(doc);
  } catch (const AxiomViolation &v) {
    out << "space: invalid base metric: " << v.what() << "\n"
        << "  witness: " << witness_labels(doc.points, v) << "\n"
        << "result: FAIL\n";
    return kExitVerificationFailure;
  } catch (const Error &e) {
    out << "space: invalid: " << e.what() << "\nresult: FAIL\n";
    return kExitVerificationFailure;
  }
  out << "space: " << space->size() << " points, admissible base metric, diameter "
      << space->diameter() << "\n";

  bool ok = true;
  for (const NamedMatrix &nm : doc.pseudometrics) {
    try {
      const Pseudometric d = validate_pseudometric(space, nm.values);
      out << nm.name << ": valid pseudometric\n";
      const ConeReport r = cone_report(d, k);
      out << "  sup-norm: " << r.sup_norm << "\n"
          << "  lip: " << r.lip << "\n"
          << "  admissible: " << yes_no(r.is_admissible) << "\n"
          << "  maximizers: " << describe_maximizers(*space, r.maximizers) << "\n"
          << "  in Pp: " << yes_no(r.in_pp) << "\n"
          << "  in LPM_k (k = " << k << "): " << yes_no(r.in_lpmk) << "\n"
          << "  in closure of LPM_k: " << yes_no(r.in_lpmk_closure) << "\n";
    } catch (const AxiomViolation &v) {
      ok = false;
      out << nm.name << ": invalid: " << v.what() << "\n"
          << "  witness: " << witness_labels(doc.points, v) << "\n";
    }
  }
  out << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitVerificationFailure;
}

int cmd_extend(const ExtendOptions &opt, std::ostream &out, std::ostream &log) {
  try {
    const Document doc = read_document(opt.file);
    const SpacePtr space = build_space(doc);

    std::vector<std::string> labels;
    if (opt.subset) labels = split_labels(*opt.subset);
    else if (doc.subset) labels = *doc.subset;
    else throw Error("no subset given (use --subset or a \"subset\" key)");
    const std::vector<PointId> subset = resolve(*space, labels);

    if (doc.pseudometrics.empty()) throw Error("document has no pseudometrics to extend");
    const NamedMatrix *nm = opt.metric ? doc.find(*opt.metric) : &doc.pseudometrics.front();
    if (!nm) throw Error("no pseudometric named " + *opt.metric);

    const PartialPseudometric pd =
        nm->values.size() == space->size()
            ? PartialPseudometric::restrict(validate_pseudometric(space, nm->values), subset)
        : nm->values.size() == subset.size()
            ? PartialPseudometric::create(space, subset, nm->values)
            : throw Error("pseudometric " + nm->name + " is " + std::to_string(nm->values.size()) +
                          "x" + std::to_string(nm->values.size()) +
                          ", expected the space or the subset size");
    const Pseudometric ext = extend_lip_preserving(pd);

    bool ok = true;
    if (opt.check) {
      bool restriction = true;
      for (std::size_t i = 0; i < subset.size(); ++i)
        for (std::size_t j = 0; j < subset.size(); ++j)
          restriction = restriction && ext(subset[i], subset[j]) == pd.values()(i, j);
      const bool norm = sup_norm(ext) == pd.sup_norm();
      const Rational lip = space->size() > 1 ? lip_constant(ext) : Rational(0);
      const bool lip_ok = lip == pd.lip();
      bool valid = true;
      try {
        validate_pseudometric(space, ext.values());
      } catch (const AxiomViolation &) {
        valid = false;
      }
      log << "restriction to subset: " << (restriction ? "holds" : "FAILS") << "\n"
          << "sup-norm: " << sup_norm(ext) << " vs " << pd.sup_norm() << ": "
          << (norm ? "holds" : "FAILS") << "\n"
          << "lip: " << lip << " vs " << pd.lip() << ": " << (lip_ok ? "holds" : "FAILS") << "\n"
          << "pseudometric axioms: " << (valid ? "hold" : "FAIL") << "\n";
      ok = restriction && norm && lip_ok && valid;
    }

    Document result = make_document(*space, {{nm->name, ext}});
    result.subset = labels;
    write_output(print_document(result), opt.output, out);
    return ok ? kExitPass : kExitVerificationFailure;
  } catch (const std::exception &e) {
    log << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_peak(const PeakOptions &opt, std::ostream &out, std::ostream &log) {
  try {
    const Document doc = read_document(opt.file);
    const SpacePtr space = build_space(doc);
    std::string name = "d";
    Pseudometric d = Pseudometric::zero(space);
    if (opt.metric) {
      name = *opt.metric;
      d = build_pseudometric(doc, space, name);
    } else if (!doc.pseudometrics.empty()) {
      name = doc.pseudometrics.front().name;
      d = build_pseudometric(doc, space, name);
    }

    const std::vector<std::string> pair = split_labels(opt.pair);
    if (pair.size() != 2) throw Error("--pair expects two labels x,y");
    const PointId x = space->index_of(pair[0]);
    const PointId y = space->index_of(pair[1]);
    const PeakingTranscript t = build_peaking(d, x, y);
    const Pseudometric sum = d + t.rho;
    const PeakCheck check = verify_peak_property(d, t.rho, x, y);
    const std::set<Doubleton> peaks = maximizer_doubletons(sum);

    log << "peak at " << space->describe({x, y}) << ": a = " << t.a << ", b = " << t.b
        << ", n0 = " << t.n0 << "\n"
        << "rho(x,y) = " << t.rho(x, y) << ", ‖d+rho‖ = " << sup_norm(sum)
        << ", maximizers: " << describe_maximizers(*space, peaks) << "\n"
        << "peak property: " << (check.holds ? "holds" : "FAILS: " + check.reason) << "\n";

    nlohmann::ordered_json j = to_json(make_document(*space, {{name, d}, {"rho", t.rho}, {"d+rho", sum}}));
    if (opt.transcript) j["transcript"] = to_json(t);
    write_output(j.dump(2) + "\n", opt.output, out);
    return check.holds ? kExitPass : kExitVerificationFailure;
  } catch (const std::exception &e) {
    log << "error: " << error_kind(e) << ": " << e.what() << "\n";
    return kExitInputError;
  }
}

int cmd_reconstruct(const ReconstructOptions &opt, std::ostream &out, std::ostream &err) {
  SpacePtr x_space, y_space;
  std::unique_ptr<IsometryOracle> oracle;
  std::optional<ConeFamily> family;
  try {
    x_space = build_space(read_document(opt.file_x));
    y_space = build_space(read_document(opt.file_y));
    family = ConeFamily::parse(opt.family);
    if (x_space->size() != y_space->size())
      throw Error("spaces have " + std::to_string(x_space->size()) + " and " +
                  std::to_string(y_space->size()) + " points");
    if (y_space->size() < 2) throw Error("reconstruction needs at least two points");
    if (opt.probes == 0) throw Error("--probes must be at least 1");

    const auto colon = opt.oracle.find(':');
    const std::string kind = opt.oracle.substr(0, colon);
    const std::optional<std::string> file =
        colon == std::string::npos ? std::nullopt : std::optional(opt.oracle.substr(colon + 1));
    const Bijection phi = file ? build_bijection(read_document(*file), *x_space, *y_space)
                               : Bijection::identity(y_space->size());
    if (kind == "identity" || kind == "composition") {
      if (kind == "composition" && !file) throw Error("composition oracle needs a bijection file");
      oracle = std::make_unique<CompositionOracle>(x_space, y_space, phi, *family,
                                                   IsometryOracle::kDefaultBudget);
    } else if (auto broken = parse_broken_kind(kind)) {
      oracle = make_broken_oracle(*broken, x_space, y_space, phi, *family);
    } else {
      throw Error("unknown oracle '" + opt.oracle + "'");
    }
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  out << "oracle: " << oracle->name() << ", family " << family->to_string() << ", "
      << y_space->size() << " points\n";

  Rng rng(opt.seed);
  ProbeSet probes, peaked;
  for (std::size_t i = 0; i < opt.verify_probes; ++i) {
    probes.domain.push_back(random_probe(rng, x_space, *family));
    probes.codomain.push_back(random_probe(rng, y_space, *family));
    peaked.domain.push_back(random_peaked_probe(rng, x_space, *family));
    peaked.codomain.push_back(random_peaked_probe(rng, y_space, *family));
  }

  bool ok = true;
  try {
    for (const CheckReport &r :
         {check_norm_preserving(*oracle, probes),
          check_scalar_preserving(*oracle, probes,
                                  {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)}),
          check_pp_preserving(*oracle, peaked)}) {
      print_check(out, r);
      ok = ok && r.passed();
    }

    const DoubletonTable table = recover_doubleton_map(
        *oracle, {Pseudometric::zero(y_space), Pseudometric::base(y_space)}, opt.probes);
    const ReconstructionResult result = recover_point_map(table, x_space, y_space);
    out << "doubleton map:\n";
    for (const PairEvidence &ev : result.consistency)
      out << "  " << y_space->describe(ev.pair) << " -> " << x_space->describe(result.phi_map.at(ev.pair))
          << " (" << ev.probe_maximizers.size() << " probes agree)\n";
    out << "phi:\n";
    for (PointId y = 0; y < y_space->size(); ++y)
      out << "  " << y_space->label(y) << " -> " << x_space->label(result.phi(y)) << "\n";
    out << "ambiguity: " << yes_no(result.ambiguity) << "\n";

    const CheckReport verify = verify_composition_formula(*oracle, result.phi, probes.domain);
    print_check(out, verify);
    ok = ok && verify.passed();
    if (result.ambiguity) {
      for (const Bijection &psi : all_bijections(y_space->size())) {
        if (psi == result.phi) continue;
        const CheckReport other = verify_composition_formula(*oracle, psi, probes.domain);
        out << "  the other bijection: " << (other.passed() ? "passes too" : "fails") << "\n";
      }
    }

    const ClassificationCertificate cert = classify(*oracle, result);
    out << "classification: " << to_string(cert.verdict);
    if (cert.lambda) out << ", lambda = " << *cert.lambda;
    out << "\n";
    for (const KPrimeStep &s : cert.chain)
      out << "  k' = " << s.k_prime << ": lip(T(k'd_X)) = " << s.forward_lip
          << ", lip(T^-1(k'd_Y)) = " << s.inverse_lip << ": " << (s.holds ? "< k" : "NOT < k") << "\n";
    for (const std::string &w : cert.witnesses) out << "  " << w << "\n";
    out << "certificate verified: " << yes_no(cert.verified) << "\n";
    ok = ok && cert.verified;
    out << "reconstruction probes: " << result.probes_used << "\n";
  } catch (const Error &e) {
    ok = false;
    out << "reconstruction failed: " << error_kind(e) << ": " << e.what() << "\n";
    if (auto *inc = dynamic_cast<const Inconsistent *>(&e))
      out << "  witness: codomain pair " << y_space->describe(inc->pair()) << ", probes "
          << inc->probe_a() << " and " << inc->probe_b() << " give "
          << x_space->describe(inc->image_a()) << " and " << x_space->describe(inc->image_b()) << "\n";
    if (auto *npp = dynamic_cast<const NotPpPreserving *>(&e))
      out << "  witness: codomain pair " << y_space->describe(npp->pair()) << ", probe "
          << npp->probe() << "\n";
  }
  out << "oracle queries: " << oracle->queries_used() << "\n"
      << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitVerificationFailure;
}

int cmd_fuzz(const FuzzOptions &opt, std::ostream &out, std::ostream &err) {
  try {
    const FuzzSummary summary = run_fuzz(opt);
    out << summary.report();
    return summary.passed() ? kExitPass : kExitVerificationFailure;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

} // namespace pmcone
