#pragma once

#include <string>
#include <vector>

#include "dgwave/experiments.hpp"

namespace dgwave {

/// A criterion evaluates to one summary row plus the individual checks it is
/// made of. A single-check criterion reports that check; otherwise the
/// summary's computed value is the number of failing checks.
struct CriterionResult {
  Claim summary;
  std::vector<Claim> details;
};

constexpr int kCriterionCount = 9;

/// Short description of criterion k (1-based).
std::string criterion_title(int k);

/// Evaluates criterion k in 1..kCriterionCount.
CriterionResult evaluate_criterion(int k);

/// All criteria: summary rows to <outdir>/verify/report.csv and the
/// individual checks to <outdir>/verify/details.csv.
VerificationReport verify_all(const std::string& outdir, std::vector<CriterionResult>* results = nullptr);

}  // namespace dgwave
