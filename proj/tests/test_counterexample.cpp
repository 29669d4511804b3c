#include <doctest.h>

#include "hdq/counterexample.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

Poly Z(const char* s) { return parse_poly(s, CoeffDomain::Integer); }
PrincipalIdeal I(const char* s) { return PrincipalIdeal(Z(s)); }

}  // namespace

TEST_CASE("tensoring with Z")
{
    CHECK(tensor_with_Z(I("1")).kernel == I("x"));
    CHECK(tensor_with_Z(I("x")).kernel == I("x^2"));
    CHECK(tensor_with_Z(I("x - 1")).kernel == I("x^2 - x"));
    CHECK(tensor_with_Z(I("2*x + 4")).quotient_generator == Z("2*x + 4"));
    CHECK_THROWS_AS(tensor_with_Z(PrincipalIdeal(parse_poly("x"))), std::invalid_argument);
    CHECK_THROWS_AS(tensor_with_Z(PrincipalIdeal(Poly({}, CoeffDomain::Integer))), std::invalid_argument);

    // Iterating T multiplies by x each time.
    CHECK(torsion_part(torsion_part(I("1"))) == I("x^2"));
    CHECK(torsion_part(torsion_part(torsion_part(I("1")))) == I("x^3"));

    SampleSpec spec;
    spec.count = 200;
    const auto rep = tensor_identity_check(spec);
    CHECK(rep.passed);
    CHECK(rep.samples == 200);
}

TEST_CASE("Z[x] intersections keep contents")
{
    CHECK(zx_lcm(Z("2*x"), Z("3*x")) == Z("6*x"));
    CHECK(zx_lcm(Z("2*x + 2"), Z("4")) == Z("4*x + 4"));
    CHECK(zx_lcm(Z("x"), Z("x^2 - x")) == Z("x^2 - x"));
    CHECK(zx_lcm(Z("-x"), Z("x")) == Z("x"));
    CHECK(zx_intersect(I("x"), I("x")) == I("x"));
    CHECK(zx_intersect(I("2"), I("x")) == I("2*x"));
    CHECK_THROWS_AS(zx_lcm(parse_poly("x"), Z("x")), std::invalid_argument);

    Sampler sampler(77, 3, 6);
    for (int t = 0; t < 100; ++t) {
        const Poly a = sampler.nonzero_poly(CoeffDomain::Integer);
        const Poly b = sampler.nonzero_poly(CoeffDomain::Integer);
        const Poly l = zx_lcm(a, b);
        CHECK(divides(a, l));
        CHECK(divides(b, l));
        // Any common multiple is a multiple of l; a b is one.
        CHECK(divides(l, a * b));
    }
}

TEST_CASE("not hereditary")
{
    const auto rep = hereditary_violation_check();
    CHECK(rep.passed);
    CHECK(rep.details["T(R)"] == "(x)");
    CHECK(rep.details["T(I)"] == "(x^2)");
    CHECK(rep.details["I ∩ T(R)"] == "(x)");
    CHECK(rep.details["witness"] == "x");
    CHECK(rep.details["witness_in_T(I)"] == false);
    CHECK(rep.details["T(T(T(R)))"] == "(x^3)");
}

TEST_CASE("derivations escape the torsion class")
{
    SampleSpec spec;
    spec.count = 100;
    const auto rep = derivative_escape_check(spec);
    CHECK(rep.passed);
    CHECK(rep.samples == 100);
    CHECK(rep.details["delta(x)"] == "1");
    CHECK(rep.details["x_in_T(R)"] == true);
    CHECK(rep.details["delta(x)_in_T(R)"] == false);
    CHECK(Z("x^3 + 2*x").derivative() == Z("3*x^2 + 2"));
}
