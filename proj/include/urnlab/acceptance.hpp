#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace urnlab {

struct AcceptanceOptions {
    bool quick = false;       // analytic criteria only (skips the ensembles)
    std::uint64_t seed = 7;   // base seed for the ensemble criteria
    int threads = 0;          // 0 = URNLAB_THREADS / hardware
};

struct CriterionResult {
    std::string id;
    std::string title;
    bool pass = false;
    std::string detail;  // measured values, deterministically formatted
};

/// Run the verification suite. Quick mode runs A1-A5, A9, A10; the full suite
/// adds the trajectory-ensemble criteria A6-A8.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

bool all_passed(const std::vector<CriterionResult>& results);

/// One line per criterion plus a trailing summary line; byte-stable for fixed
/// options.
std::string acceptance_report(const std::vector<CriterionResult>& results);

}  // namespace urnlab
