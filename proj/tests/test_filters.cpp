#include <doctest.h>

#include "hdq/filters.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

Poly P(const char* s) { return parse_poly(s); }
PrincipalIdeal I(const char* s) { return PrincipalIdeal(P(s)); }

const std::vector<const char*> kBases{"x", "x^2 + 1", "x^2 - x"};

}  // namespace

TEST_CASE("filter membership")
{
    const RadicalPowerFilter fx(P("x"));
    CHECK(fx.contains(I("x^3")));
    CHECK_FALSE(fx.contains(I("x - 2")));
    CHECK(fx.contains(I("1")));
    CHECK_FALSE(fx.contains(PrincipalIdeal(Poly())));
    CHECK(RadicalPowerFilter(P("x^2 - x")).contains(I("x")));
    CHECK(RadicalPowerFilter(P("x^2 - x")).contains(I("x^5 - 3*x^4 + 3*x^3 - x^2")));  // x^2 (x-1)^3
    CHECK_FALSE(RadicalPowerFilter(P("x^2 + 1")).contains(I("x")));

    CHECK_THROWS_AS(RadicalPowerFilter{Poly()}, std::invalid_argument);
    CHECK_THROWS_AS(RadicalPowerFilter(P("5")), std::invalid_argument);
    CHECK_THROWS_AS(RadicalPowerFilter(parse_poly("x", CoeffDomain::Integer)), std::invalid_argument);

    CHECK(fx.power_index(I("x^4")) == 4);
    CHECK_FALSE(fx.power_index(I("x^2 + x")).has_value());
    CHECK(filter_subset(fx, RadicalPowerFilter(P("x^2 - x"))));
    CHECK_FALSE(filter_subset(RadicalPowerFilter(P("x^2 - x")), fx));
}

TEST_CASE("filters are upward closed and closed under intersection")
{
    Sampler sampler(8, 4, 5);
    for (const char* b : kBases) {
        const RadicalPowerFilter f(P(b));
        for (int t = 0; t < 60; ++t) {
            const Poly member = f.base().pow(static_cast<unsigned>(sampler.uniform(1, 3)));
            const Poly d = gcd(member, sampler.nonzero_poly() * f.base());
            const PrincipalIdeal bigger(d);  // (member) ⊆ (d)
            CHECK(f.contains(bigger));
            const PrincipalIdeal other(f.base().pow(static_cast<unsigned>(sampler.uniform(1, 2))));
            CHECK(f.contains(intersect(PrincipalIdeal(member), other)));
            const PrincipalIdeal outside(member * P("x - 7"));
            CHECK_FALSE(f.contains(outside));
        }
    }
}

TEST_CASE("gabriel axioms")
{
    const RadicalPowerFilter fx(P("x"));
    CHECK(colon_ideal(P("x"), I("x^2")) == I("x"));
    CHECK(fx.contains(colon_ideal(P("x"), I("x^2"))));
    CHECK(colon_ideal(P("x^2"), I("x^2")).is_whole_ring());
    const RadicalPowerFilter fq(P("x^2 + 1"));
    CHECK(colon_ideal(P("1"), I("x^2 + 1")) == I("x^2 + 1"));

    SampleSpec spec;
    spec.count = 120;
    for (const char* b : kBases) {
        const auto rep = gabriel_axiom_check(RadicalPowerFilter(P(b)), spec);
        CHECK_MESSAGE(rep.passed, b);
        CHECK(rep.samples == 120);
        CHECK(rep.details["axiom2_premise_instances"].get<int>() > 0);
    }
}

TEST_CASE("invariance witnesses")
{
    const auto hasse = HDFamily::hasse(8);
    const RadicalPowerFilter fx(P("x"));
    CHECK(invariance_witness(fx, hasse, I("x^2"), 1) == I("x^3"));
    CHECK(hasse.apply(1, P("x^3")) == P("3*x^2"));
    CHECK(invariance_witness(fx, hasse, I("x^2"), 0) == I("x^2"));

    const RadicalPowerFilter fq(P("x^2 + 1"));
    const Poly q = P("x^2 + 1");
    CHECK(invariance_witness(fq, hasse, PrincipalIdeal(q.pow(2)), 2) == PrincipalIdeal(q.pow(4)));
    // Frozen by hand: (1/2) d^2/dx^2 (x^2+1)^4 = (x^2+1)^2 (28 x^2 + 4).
    CHECK(hasse.apply(2, q.pow(4)) == q.pow(2) * P("28*x^2 + 4"));

    CHECK_THROWS_AS(invariance_witness(fx, hasse, I("x^2 + 1"), 1), std::invalid_argument);
    CHECK_THROWS_AS(invariance_witness(fx, hasse, I("x"), 9), std::out_of_range);
}

TEST_CASE("verify_invariance")
{
    SampleSpec spec;
    spec.count = 30;
    const auto hasse = HDFamily::hasse(8);
    const RadicalPowerFilter fx(P("x"));
    CHECK(verify_invariance(fx, hasse, I("x^2"), 1, I("x^3"), spec).passed);
    CHECK(verify_invariance(fx, hasse, I("x^2"), 0, I("x^2"), spec).passed);
    const RadicalPowerFilter fq(P("x^2 + 1"));
    const Poly q = P("x^2 + 1");
    CHECK(verify_invariance(fq, hasse, PrincipalIdeal(q.pow(2)), 2, PrincipalIdeal(q.pow(4)), spec).passed);

    const auto bad = verify_invariance(fx, hasse, I("x"), 1, I("x"), spec, Expectation::Fail);
    CHECK_FALSE(bad.passed);
    CHECK(bad.as_expected());
    CHECK(bad.witness["i"] == 1);
    CHECK(bad.witness["element"] == "x");
    CHECK(bad.witness["image"] == "1");

    CHECK(verify_invariance(fx, HDFamily::hasse(0), I("x"), 0, I("x"), spec).passed);
    CHECK_FALSE(verify_invariance(fx, hasse, I("x"), 0, I("x - 1"), spec, Expectation::Fail).passed);
}

TEST_CASE("base-power witnesses work for every small k and n")
{
    SampleSpec spec;
    spec.count = 10;
    const auto hasse = HDFamily::hasse(4);
    for (const char* b : kBases) {
        const RadicalPowerFilter f(P(b));
        for (int k = 1; k <= 4; ++k) {
            for (int n = 0; n <= 4; ++n) {
                const PrincipalIdeal target = f.power_ideal(k);
                const PrincipalIdeal witness = invariance_witness(f, hasse, target, n);
                CHECK(verify_invariance(f, hasse, target, n, witness, spec).passed);
                if (n >= 1) {
                    // One power short is too small for some i <= n.
                    CHECK_FALSE(verify_invariance(f, hasse, target, n, f.power_ideal(k + n - 1), spec,
                                                  Expectation::Fail)
                                    .passed);
                }
            }
        }
    }
}

TEST_CASE("invariance trace")
{
    SampleSpec spec;
    spec.count = 100;
    const RadicalPowerFilter fx(P("x"));

    const auto classical = invariance_trace(fx, HDFamily::hasse(4), ABContext{}, I("x^2"), 1, spec);
    CHECK(classical.passed);
    CHECK(classical.samples == 100);
    CHECK(classical.details["K"] == "(x^3)");

    CHECK(invariance_trace(fx, HDFamily::hasse(4), ABContext{}, I("x^2"), 0, spec).passed);

    const ABContext twisted{Automorphism(2, 0), Automorphism::identity()};
    const auto sigma = difference_family(twisted.alpha, twisted.beta, 2, 40);
    CHECK(sigma.apply(1, P("x")) == P("x"));
    SampleSpec low = spec;
    low.degree_bound = 4;
    CHECK(verify_ab_hd(sigma, twisted, 1, low).passed);
    const auto rep = invariance_trace(fx, sigma, twisted, I("x^3"), 1, spec);
    CHECK(rep.passed);
    CHECK(invariance_trace(fx, sigma, twisted, I("x^3"), 2, spec).passed);

    for (const char* b : kBases) {
        const RadicalPowerFilter f(P(b));
        for (int n = 1; n <= 3; ++n) {
            SampleSpec s = spec;
            s.count = 25;
            CHECK(invariance_trace(f, HDFamily::hasse(4), ABContext{}, f.power_ideal(2), n, s).passed);
        }
    }

    CHECK_THROWS_AS(invariance_trace(fx, HDFamily::hasse(2), ABContext{Automorphism(1, 1), Automorphism::identity()},
                                     I("x^2"), 1, spec),
                    std::invalid_argument);
    CHECK_THROWS_AS(invariance_trace(fx, HDFamily::hasse(2), ABContext{}, I("x^2 + x"), 1, spec),
                    std::invalid_argument);
}
