#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qclone {

struct CheckResult {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifyOptions {
    std::vector<int> dims{2, 3};
    bool deep = false;  // adds d = 4, 5 and full-size Monte Carlo runs
    std::uint64_t seed = 12345;
    std::optional<double> tolerance_override;  // force every tolerance (testing hook)
};

/// Run the module invariant battery; one result per named check.
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

}  // namespace qclone
