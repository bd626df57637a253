#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmr/dynr.hpp"
#include "cmr/potentials.hpp"

namespace cmr {

struct VerifyConfig {
  ModelCase model;
  int n = 3;
  double omega = 0.37;
  Family family = Family::caseI;
  std::uint64_t seed = 1;
  /// Overrides every per-check tolerance when set.
  std::optional<double> tol;
  bool exact = false;
  int samples = 20;
  /// 0 means: CMR_THREADS if set, otherwise the hardware concurrency.
  unsigned threads = 0;
};

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct CheckResult {
  std::string suite;
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  /// Pass when residual ≥ tol instead of residual ≤ tol.
  bool lower_bound = false;
  /// Residual was computed in exact arithmetic; pass requires exactly 0.
  bool exact = false;
  Status status = Status::skipped;
  /// "c64", "c128" or "exact"
  std::string arithmetic;
  std::string note;
};

/// identities, theorem1, prop2, theorem3, prop4, prop5, theorem6, cg, cybe, appendixB, appendixC
const std::vector<std::string>& suite_names();

/// Runs one suite, or every suite for "all". Throws ArgumentError for an
/// unknown suite or an invalid configuration.
std::vector<CheckResult> run_verification(const std::string& suite, const VerifyConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);

/// Schema "cmr-report/1", keys sorted.
std::string report_json(const VerifyConfig& cfg, const std::vector<CheckResult>& results);
std::string report_csv(const std::vector<CheckResult>& results);

/// Worker count from CMR_THREADS (at least 1), falling back to the hardware.
unsigned thread_count_from_env();

}  // namespace cmr
