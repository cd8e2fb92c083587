#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lossy {

struct VerifyOptions {
    int trials = 200;
    std::uint64_t seed = 12345;
    // Appends a deliberately failing suite so the failure path (exit
    // code, report shape) can be exercised without breaking an invariant.
    bool inject_failure = false;
};

struct SuiteResult {
    std::string name;
    int cases = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string worst_case;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool all_passed = false;
};

/// Property suites cross-checking every closed form against its
/// brute-force or algebraic counterpart:
///   svd_reconstruction   V*diag(s)*U rebuilds random contractions
///   dilation_unitarity   dilations are unitary and embed the input block
///   oracle_equivalence   coincidence vs density-matrix oracle, grid + random
///   normalization        coincidence maps total 1
///   phase_invariance     port phase gauging changes no probability
///   netlist_roundtrip    compile(decompose(u)) = u; MZI netlist = dilation
///   crossing             bisection locates the bunching crossover loss
VerifyReport run_verify(const VerifyOptions& options);

nlohmann::json verify_report_to_json(const VerifyReport& report);

}  // namespace lossy
