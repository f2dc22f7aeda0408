#pragma once

// Acceptance checks shared by the test suite and `sixv verify`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace sixv {

struct VerifyOptions {
  bool quick = false;  // reduced sizes, Monte Carlo and large-N checks skipped
  std::uint64_t seed = 20240601;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail;  // deterministic for a fixed seed
  double seconds = 0;
};

inline constexpr int kCriterionCount = 14;

/// Criteria run in the given mode: all 14 in full mode, 1-4 and 6-11 in quick mode.
std::vector<int> criteria_ids(bool quick);

std::string criterion_title(int id);

/// Never throws; an exception inside a check is reported as a failure.
CriterionResult run_criterion(int id, const VerifyOptions& opt);

std::vector<CriterionResult> run_verify(const VerifyOptions& opt,
                                        const std::function<void(const CriterionResult&)>& on_result = {});

/// One line per criterion: `[PASS] 01 title (1.23 s): detail`.
std::string format_result(const CriterionResult& r);

}  // namespace sixv
