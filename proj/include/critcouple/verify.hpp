#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace critcouple::verify {

struct CheckResult {
    std::string name;  ///< "<module>.<check>"
    bool passed;
    std::string detail;
    double seconds;
};

struct SuiteOptions {
    /// Comma-separated selectors; a check runs if its name starts with any of them
    /// (so "coupling" selects the whole module). Empty runs everything.
    std::string filter;
    /// Reference table of coupling quantities; see data/golden.csv.
    std::filesystem::path golden_path;
    std::uint64_t seed = 0;
};

/// Location of the golden table shipped with the sources.
std::filesystem::path default_golden_path();

/// All check names in execution order.
std::vector<std::string> check_names();

bool selected(const std::string& name, const std::string& filter);

/// Runs the selected checks. A check that throws is reported as failed with the
/// exception text as detail.
std::vector<CheckResult> run_suite(const SuiteOptions& opts);

/// {"passed": bool, "checks": [{"name", "passed", "detail", "seconds"}, ...]}
std::string summary_json(const std::vector<CheckResult>& results);

}  // namespace critcouple::verify
