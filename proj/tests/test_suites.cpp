#include <doctest.h>

#include "hdq/suites.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

SuiteConfig small(std::vector<std::string> suites)
{
    SuiteConfig c;
    c.samples = 20;
    c.order = 2;
    c.degree = 4;
    c.suites = std::move(suites);
    return c;
}

}  // namespace

TEST_CASE("suite order is fixed")
{
    const auto result = run_suites(small({"counterexample", "hd", "filter"}));
    REQUIRE(result.suites.size() == 3);
    CHECK(result.suites[0].name == "hd");
    CHECK(result.suites[1].name == "filter");
    CHECK(result.suites[2].name == "counterexample");
    CHECK(result.ok());
}

TEST_CASE("reports are reproducible and omit timings unless asked")
{
    SuiteConfig c = small({"ab", "symmetric", "counterexample"});
    const auto a = report_json(c, run_suites(c)).dump();
    const auto b = report_json(c, run_suites(c)).dump();
    CHECK(a == b);
    CHECK(a.find("elapsed_ms") == std::string::npos);

    c.timings = true;
    const json timed = report_json(c, run_suites(c));
    CHECK(timed["checks"][0].contains("elapsed_ms"));

    SuiteConfig other = small({"ab"});
    other.seed = 99;
    CHECK(report_json(other, run_suites(other)).dump() != report_json(small({"ab"}), run_suites(small({"ab"}))).dump());
}

TEST_CASE("counterexample suite carries the torsion values")
{
    const auto result = run_suites(small({"counterexample"}));
    const json doc = report_json(small({"counterexample"}), result);
    const json& hereditary = doc["checks"][1];
    CHECK(hereditary["id"] == "counterexample-hereditary");
    CHECK(hereditary["details"]["T(R)"] == "(x)");
    CHECK(hereditary["details"]["T(I)"] == "(x^2)");
    CHECK(doc["summary"]["ok"] == true);
}

TEST_CASE("expected failures count as success")
{
    const auto result = run_suites(small({"ab"}));
    int expected_failures = 0;
    for (const auto& t : result.suites[0].checks) {
        if (t.report.expect == Expectation::Fail) {
            ++expected_failures;
            CHECK_FALSE(t.report.passed);
        }
    }
    CHECK(expected_failures == 2);
    CHECK(result.ok());
}

TEST_CASE("single-case invariance")
{
    SuiteConfig c = small({"invariance"});
    c.base = "x^2 + 1";
    c.k = 2;
    c.n = 3;
    const auto result = run_suites(c);
    REQUIRE(result.suites[0].checks.size() == 2);
    CHECK(result.suites[0].checks[0].report.details["J"] == "(1 + 5*x^2 + 10*x^4 + 10*x^6 + 5*x^8 + x^10)");
    CHECK(result.ok());
}

TEST_CASE("an ill-defined family on a user module makes the run fail")
{
    SuiteConfig c = small({"extend"});
    c.module_file = HDQ_TEST_DATA "/two_generator.mat";
    CHECK_FALSE(run_suites(c).ok());
    c.derivation = "x^2 - x";
    CHECK(run_suites(c).ok());
}

TEST_CASE("configuration errors")
{
    SuiteConfig c;
    c.order = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = SuiteConfig{};
    c.suites = {"nope"};
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = SuiteConfig{};
    c.base = "x^2 - x";
    c.base2 = "x";
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c.suites = {"filter"};
    CHECK_NOTHROW(validate(c));
    c = SuiteConfig{};
    c.k = 1;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = SuiteConfig{};
    c.module_file = "/nonexistent/m.mat";
    CHECK_THROWS_AS(validate(c), std::runtime_error);
    c = SuiteConfig{};
    c.algebra_file = HDQ_TEST_DATA "/upper_triangular.alg";
    c.inner = 3;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
}
