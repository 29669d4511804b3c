#pragma once

// Named verification suites and the report they produce. Suites run
// concurrently; results are merged in the fixed order of suite_names().

#include "hdq/report.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace hdq {

struct SuiteConfig {
    std::uint64_t seed = 1729;
    int degree = 6;
    int coeff = 9;
    int order = 3;
    int samples = 100;
    /// Empty selects every suite.
    std::vector<std::string> suites;

    std::string base = "x";
    std::string base2 = "x^2 - x";
    /// Image of x under the derivation used on user-supplied modules.
    std::string derivation = "1";
    std::string module_file;
    std::string algebra_file;
    /// Basis index u of the inner derivation [u, -] on a user-supplied algebra.
    int inner = 0;

    /// Single-case invariance run; both must be set together.
    std::optional<int> k;
    std::optional<int> n;
    /// hasse or derivation.
    std::string family = "hasse";

    bool timings = false;
};

/// hd, ab, collapse, filter, invariance, trace, localize, extend, agreement,
/// symmetric, counterexample.
const std::vector<std::string>& suite_names();

struct TimedCheck {
    CheckReport report;
    double elapsed_ms = 0;
};

struct SuiteResult {
    std::string name;
    std::vector<TimedCheck> checks;
    /// Set when the suite threw; the suite then counts as failed.
    std::optional<std::string> error;
};

struct RunResult {
    std::vector<SuiteResult> suites;

    [[nodiscard]] std::size_t check_count() const;
    [[nodiscard]] std::size_t as_expected_count() const;
    /// Every check came out as expected and no suite threw.
    [[nodiscard]] bool ok() const;
};

/// Throws std::invalid_argument for bounds below their minimum, unknown suite
/// or family names, unparsable polynomials, F(base) not inside F(base2), or a
/// half-given k/n pair; std::runtime_error for unreadable module or algebra files.
void validate(const SuiteConfig& config);

/// Validates, then runs the selected suites.
RunResult run_suites(const SuiteConfig& config);

json report_json(const SuiteConfig& config, const RunResult& result);
std::string report_text(const SuiteConfig& config, const RunResult& result);

}  // namespace hdq
