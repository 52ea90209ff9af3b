// check.hpp -- built-in invariant suite behind the `check` CLI subcommand.
#pragma once

#include <string>
#include <vector>

namespace ecmm {

struct CheckRow {
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the embedded self-checks: kernel traces, moment-oracle agreement, bath
// reorganization identity, pinned-nuclei rotation vs the matrix exponential,
// decoupled-bath populations vs the analytic two-state result, and
// thread-count determinism. `quick` shrinks the Monte Carlo sizes.
std::vector<CheckRow> run_check_suite(bool quick);

}  // namespace ecmm
