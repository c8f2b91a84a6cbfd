#pragma once

// Seeded property suites: reconstruction roundtrips, operator identities, projection optimality.

#include <cstdint>
#include <string>
#include <vector>

namespace sobolev {

struct PropertyResult {
    std::string suite;
    std::string name;
    int trials = 0;
    int failures = 0;
    /// Largest observed defect (relative error, or violation size for optimality).
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;

    bool passed() const { return failures == 0 && trials > 0; }
};

struct VerifyOptions {
    std::uint64_t seed = 42;
    int trials = 100;
    int perturbations = 50;
};

std::vector<PropertyResult> verify_roundtrip(const VerifyOptions& opts = {});
std::vector<PropertyResult> verify_identities(const VerifyOptions& opts = {});
std::vector<PropertyResult> verify_optimality(const VerifyOptions& opts = {});
/// suite: roundtrip | identities | optimality | all
std::vector<PropertyResult> run_verify(const std::string& suite, const VerifyOptions& opts = {});

/// "PASS roundtrip forward N=2 trials=100 failures=0 worst=1.1e-15 tol=1e-10"
std::string format_result(const PropertyResult& r);

} // namespace sobolev
