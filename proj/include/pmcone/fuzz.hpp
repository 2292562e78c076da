#pragma once

#include "pmcone/extend.hpp"
#include "pmcone/oracle.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace pmcone {

struct FuzzOptions {
  std::size_t trials = 100;
  std::size_t max_points = 8;
  std::uint64_t seed = 0;
  ConeFamily family = ConeFamily::pm();
  /// Swap in an extension that skips the final truncation.
  bool break_extension = false;
  unsigned jobs = 1;
};

struct SuiteTally {
  std::size_t passed = 0;
  std::size_t failed = 0;
};

struct FuzzSummary {
  FuzzOptions options;
  SuiteTally peaking;
  SuiteTally extension;
  SuiteTally reconstruction;
  /// Trial index and transcript of the lowest-numbered failing trial.
  std::optional<std::size_t> first_failure_trial;
  std::string first_failure;

  bool passed() const { return !first_failure_trial.has_value(); }
  /// Byte-identical for identical options, whatever the job count.
  std::string report() const;
};

/// Each trial draws a space of 2..max_points points from its own derived seed
/// and runs the peaking, extension and reconstruction checks on it.
FuzzSummary run_fuzz(const FuzzOptions &options);

/// The extension without truncation at ‖d‖: still a pseudometric agreeing on
/// the subset, but the sup-norm is no longer preserved.
Pseudometric extend_without_truncation(const PartialPseudometric &pd);

} // namespace pmcone
