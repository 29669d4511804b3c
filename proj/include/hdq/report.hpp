#pragma once

#include <nlohmann/json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hdq {

using json = nlohmann::ordered_json;

enum class Expectation { Pass, Fail };

/// Outcome of one verification check. Failures are data: the first failing
/// instance is kept as the witness and later failures only bump the count.
struct CheckReport {
    std::string id;
    std::string ref;
    Expectation expect = Expectation::Pass;
    bool passed = true;
    std::optional<int> order;
    std::size_t samples = 0;
    std::size_t failures = 0;
    json witness;
    json details = json::object();
    std::vector<std::string> notes;

    CheckReport() = default;
    CheckReport(std::string id_, std::string ref_, Expectation e = Expectation::Pass)
        : id(std::move(id_)), ref(std::move(ref_)), expect(e)
    {}

    void record_failure(json w)
    {
        if (passed) {
            witness = std::move(w);
        }
        passed = false;
        ++failures;
    }

    [[nodiscard]] bool as_expected() const noexcept { return passed == (expect == Expectation::Pass); }
    [[nodiscard]] json to_json() const;
};

}  // namespace hdq
