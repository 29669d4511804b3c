#include <doctest.h>

#include "hdq/poly.hpp"
#include "hdq/ring.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

Poly P(const char* s) { return parse_poly(s); }
Poly Z(const char* s) { return parse_poly(s, CoeffDomain::Integer); }

}  // namespace

TEST_CASE("poly arithmetic examples")
{
    CHECK(P("x + 1") * P("x - 1") == P("x^2 - 1"));

    const auto [q, r] = divmod(P("x^3"), P("x^2"));
    CHECK(q == P("x"));
    CHECK(r.is_zero());

    // Euclid by hand: x^2-1 = 1*(x^2-2x+1) + (2x-2); x^2-2x+1 = (x/2 - 1/2)(2x-2).
    CHECK(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")) == P("-1 + x"));
    CHECK(gcd(Poly(), Poly()).is_zero());
    CHECK(gcd(P("3*x"), Poly()) == P("x"));
    CHECK(lcm(P("x"), P("x^2 - x")) == P("x^2 - x"));
}

TEST_CASE("poly errors")
{
    CHECK_THROWS_AS(divmod(P("x"), Poly()), std::domain_error);
    CHECK_THROWS_AS(P("x") + Z("x"), std::invalid_argument);
    CHECK_THROWS_AS(divmod(Z("x^2"), Z("x")), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("1/2*x", CoeffDomain::Integer), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("x +"), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_poly("3/0"), std::invalid_argument);
}

TEST_CASE("text format")
{
    CHECK(to_string(P("x^3 - 2*x + 3")) == "3 - 2*x + x^3");
    CHECK(to_string(P("1/2*x^2 - x")) == "-x + 1/2*x^2");
    CHECK(to_string(Poly()) == "0");
    CHECK(to_string(P("-7/3")) == "-7/3");
    CHECK(P("(1/2)*x + (-3)") == P("-3 + 1/2*x"));
    CHECK(P("2x^2") == P("2*x^2"));
    CHECK(P("x^2 + x^2") == P("2*x^2"));

    Sampler sampler(7, 6, 9);
    for (int k = 0; k < 200; ++k) {
        const Poly p = sampler.poly();
        CHECK(parse_poly(to_string(p)) == p);
    }
}

TEST_CASE("Z[x] divisibility is exact over the integers")
{
    CHECK(divides(Z("x"), Z("x^2 + 3*x")));
    CHECK_FALSE(divides(Z("2*x"), Z("x^2")));
    CHECK(divides(P("2*x"), P("x^2")));
    CHECK(divides(Z("2"), Z("4*x + 6")));
    CHECK_FALSE(divides(Z("x"), Z("1")));
    CHECK(exact_quotient(Z("x^2 - x"), Z("x")) == Z("x - 1"));
    CHECK_THROWS_AS(exact_quotient(Z("x^2"), Z("2*x")), std::domain_error);
}

TEST_CASE("ring axioms on samples")
{
    Sampler sampler(11, 6, 9);
    for (int k = 0; k < 100; ++k) {
        const Poly a = sampler.poly();
        const Poly b = sampler.poly();
        const Poly c = sampler.poly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + b == b + a);
        CHECK(a - a == Poly());
        if (!b.is_zero()) {
            const auto [q, r] = divmod(a, b);
            CHECK(q * b + r == a);
            CHECK(r.degree() < b.degree());
        }
        const Poly g = gcd(a, b);
        if (!g.is_zero()) {
            CHECK(g.leading() == 1);
            CHECK(divides(g, a));
            CHECK(divides(g, b));
        }
    }
}

TEST_CASE("apply_automorphism examples")
{
    CHECK(Automorphism(2, 0)(P("x^2")) == P("4*x^2"));
    Sampler sampler(3, 6, 9);
    for (int k = 0; k < 10; ++k) {
        const Poly p = sampler.poly();
        CHECK(Automorphism::identity()(p) == p);
    }
    // Binomial expansion oracle: (x+1)^2 = sum C(2,k) x^k.
    std::vector<Rational> pascal{1, 2, 1};
    CHECK(Automorphism(1, 1)(P("x^2")) == Poly(pascal));
    CHECK_THROWS_AS(Automorphism(0, 1), std::invalid_argument);
    CHECK(parse_automorphism("2*x + 1") == Automorphism(2, 1));
    CHECK_THROWS_AS(parse_automorphism("x^2"), std::invalid_argument);
}

TEST_CASE("automorphisms are ring homomorphisms and invert")
{
    Sampler sampler(5, 6, 9);
    for (int k = 0; k < 120; ++k) {
        const Automorphism a = sampler.automorphism();
        const Automorphism b = sampler.automorphism();
        const Poly p = sampler.poly();
        const Poly q = sampler.poly();
        CHECK(a(p * q) == a(p) * a(q));
        CHECK(a(p + q) == a(p) + a(q));
        CHECK(a.inverse()(a(p)) == p);
        CHECK(compose(a, b)(p) == a(b(p)));
        CHECK(compose(a, b).inverse() == compose(b.inverse(), a.inverse()));
        CHECK(a.power(-2)(a.power(2)(p)) == p);
    }
}

TEST_CASE("colon ideal")
{
    CHECK(colon_ideal(P("x"), PrincipalIdeal(P("x^2"))) == PrincipalIdeal(P("x")));
    CHECK(colon_ideal(P("x^3 + x^2"), PrincipalIdeal(P("x^2"))).is_whole_ring());
    const PrincipalIdeal g(P("x^2 + 1"));
    CHECK(colon_ideal(P("1"), g) == g);
    CHECK(colon_ideal(Poly(), PrincipalIdeal(Poly())).is_whole_ring());
    CHECK(colon_ideal(P("x"), PrincipalIdeal(Poly())).generator().is_zero());

    Sampler sampler(13, 4, 5);
    const std::vector<Poly> gens{P("x^2"), P("x^2 - x"), P("x^3 + x"), P("x - 1")};
    for (int k = 0; k < 100; ++k) {
        const PrincipalIdeal J(gens[static_cast<std::size_t>(k) % gens.size()] * sampler.nonzero_poly());
        const Poly r = sampler.poly() * (k % 2 == 0 ? J.generator() : Poly::one()) + sampler.poly();
        const PrincipalIdeal colon = colon_ideal(r, J);
        for (int t = 0; t < 5; ++t) {
            Poly s = sampler.poly();
            if (t % 2 == 0) {
                s = s * colon.generator();
            }
            CHECK(J.contains(r * s) == colon.contains(s));
        }
    }
}

TEST_CASE("sampler is deterministic")
{
    Sampler a(99, 6, 9);
    Sampler b(99, 6, 9);
    for (int k = 0; k < 50; ++k) {
        CHECK(a.poly() == b.poly());
    }
    CHECK_THROWS_AS(Sampler(1, 6, 0), std::invalid_argument);
}
