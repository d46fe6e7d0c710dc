#pragma once

// The acceptance suite: twelve numbered criteria, each run at its own fixed
// step and tolerance.

#include <string>
#include <vector>

namespace dflow {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;  ///< measured values, or the error that stopped the run
};

struct VerifyOptions {
    /// Multiplies every upper-bound tolerance. Lower bounds (convergence
    /// ratios, distinctness, growth) are fixed.
    double tolerance_scale = 1.0;
};

std::vector<CriterionResult> run_acceptance(const VerifyOptions& options = {});

/// "PASS  3  title: detail"
std::string format_criterion(const CriterionResult& result);

} // namespace dflow
