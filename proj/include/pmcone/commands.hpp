#pragma once

#include "pmcone/fuzz.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace pmcone {

enum ExitCode : int { kExitPass = 0, kExitVerificationFailure = 1, kExitInputError = 2 };

struct ValidateOptions {
  std::string file;
  std::string k = "1";
};

struct ExtendOptions {
  std::string file;
  /// Comma-separated labels; falls back to the document's subset.
  std::optional<std::string> subset;
  /// Defaults to the first pseudometric in the document. The matrix may cover
  /// the whole space or only the subset (rows in subset order).
  std::optional<std::string> metric;
  bool check = false;
  std::optional<std::string> output;
};

struct PeakOptions {
  std::string file;
  /// Defaults to the first pseudometric, or zero when the document has none.
  std::optional<std::string> metric;
  std::string pair; // "x,y"
  bool transcript = false;
  std::optional<std::string> output;
};

struct ReconstructOptions {
  std::string file_x;
  std::string file_y;
  /// "identity", "composition:FILE", "<broken-kind>" or "<broken-kind>:FILE";
  /// FILE supplies the bijection (codomain label -> domain label).
  std::string oracle = "identity";
  std::string family = "pm";
  std::size_t probes = 3;
  std::size_t verify_probes = 10;
  std::uint64_t seed = 0;
};

// Documents go to `out`; reports and diagnostics go to `log` (which is `out`
// for commands that emit no document).
int cmd_validate(const ValidateOptions &opt, std::ostream &out, std::ostream &err);
int cmd_extend(const ExtendOptions &opt, std::ostream &out, std::ostream &log);
int cmd_peak(const PeakOptions &opt, std::ostream &out, std::ostream &log);
int cmd_reconstruct(const ReconstructOptions &opt, std::ostream &out, std::ostream &err);
int cmd_fuzz(const FuzzOptions &opt, std::ostream &out, std::ostream &err);

} // namespace pmcone
