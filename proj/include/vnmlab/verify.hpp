#pragma once

#include <string>
#include <vector>

namespace vnmlab {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Runs every module's invariant/property suite once at verification scale.
/// Deterministic: all randomness is derived from fixed seeds.
std::vector<CheckResult> run_all_checks();

} // namespace vnmlab
