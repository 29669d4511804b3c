#include "hdq/report.hpp"

namespace hdq {

json CheckReport::to_json() const
{
    json j;
    j["id"] = id;
    j["ref"] = ref;
    j["expect"] = expect == Expectation::Pass ? "pass" : "fail";
    j["status"] = passed ? "pass" : "fail";
    j["ok"] = as_expected();
    if (order) {
        j["n"] = *order;
    }
    j["samples"] = samples;
    if (failures != 0) {
        j["failures"] = failures;
    }
    if (!witness.is_null()) {
        j["witness"] = witness;
    }
    if (!details.empty()) {
        j["details"] = details;
    }
    if (!notes.empty()) {
        j["notes"] = notes;
    }
    return j;
}

}  // namespace hdq
