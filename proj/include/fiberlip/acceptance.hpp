#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fiberlip::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double elapsed_ms = 0.0;
    std::string detail;
};

/// Runs the full acceptance battery. Each criterion carries its own runtime
/// budget; exceeding it fails the criterion.
std::vector<CriterionResult> run_all();

/// Prints one pass/fail line per criterion; returns the number of failures.
int print_results(const std::vector<CriterionResult>& results, std::ostream& os);

} // namespace fiberlip::acceptance
