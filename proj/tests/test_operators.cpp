#include <doctest.h>

#include "hdq/operators.hpp"

#include <stdexcept>

using namespace hdq;

namespace {

Poly P(const char* s) { return parse_poly(s); }

// Pascal's triangle, independent of the GMP binomial used by the library.
Rational pascal(int n, int k)
{
    std::vector<std::vector<Rational>> t(static_cast<std::size_t>(n + 1));
    for (int a = 0; a <= n; ++a) {
        t[a].assign(static_cast<std::size_t>(a + 1), Rational(1));
        for (int b = 1; b < a; ++b) {
            t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
        }
    }
    return (k < 0 || k > n) ? Rational(0) : t[n][k];
}

Rational multinomial(const std::vector<int>& parts)
{
    Rational out = 1;
    int total = 0;
    for (int k : parts) {
        total += k;
        out *= pascal(total, k);
    }
    return out;
}

// delta^n / n! via repeated differentiation; an independent route to Hasse.
Poly divided_derivative(const Poly& p, int n)
{
    Poly q = p;
    Rational fact = 1;
    for (int k = 1; k <= n; ++k) {
        q = q.derivative();
        fact *= k;
    }
    return q * (1 / fact);
}

OperatorWord W(const char* s, WordScope scope = WordScope::Free) { return parse_word(s, scope); }

}  // namespace

TEST_CASE("compositions")
{
    CHECK(compositions(2, 1) == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
    CHECK(compositions(4, 4) == std::vector<std::vector<int>>{{0, 0, 0, 0, 0}});
    CHECK(compositions(3, 1) == std::vector<std::vector<int>>{{0, 2}, {1, 1}, {2, 0}});
    for (int n = 1; n <= 10; ++n) {
        for (int i = 1; i <= n; ++i) {
            const auto comps = compositions(n, i);
            CHECK(Rational(static_cast<long>(comps.size())) == pascal(n, i));
            for (const auto& c : comps) {
                int sum = 0;
                for (int k : c) {
                    sum += k;
                }
                CHECK(sum == n - i);
                CHECK(static_cast<int>(c.size()) == i + 1);
            }
        }
    }
    CHECK_THROWS_AS(compositions(3, 0), std::invalid_argument);
    CHECK_THROWS_AS(compositions(3, 4), std::invalid_argument);
}

TEST_CASE("hd_apply")
{
    const auto hasse = HDFamily::hasse(8);
    CHECK(hasse.apply(2, P("x^3")) == P("3*x"));
    CHECK(hasse.apply(0, P("x^3 + 2")) == P("x^3 + 2"));
    CHECK(HDFamily::from_derivation(P("1"), 4).apply(2, P("x^2")) == P("1"));
    CHECK_THROWS_AS(hasse.apply(9, P("x")), std::out_of_range);
    CHECK_THROWS_AS(HDFamily::from_derivation(P("1"), 2).apply(1, parse_poly("x", CoeffDomain::Integer)),
                    std::invalid_argument);

    // Hasse closed form against repeated differentiation.
    const auto hasse10 = HDFamily::hasse(10);
    for (int k = 0; k <= 10; ++k) {
        for (int n = 0; n <= 10; ++n) {
            const Poly xk = Poly::monomial(1, static_cast<std::size_t>(k));
            const Poly expected =
                n > k ? Poly() : Poly::monomial(pascal(k, n), static_cast<std::size_t>(k - n));
            CHECK(hasse10.apply(n, xk) == expected);
            CHECK(divided_derivative(xk, n) == expected);
        }
    }

    // Integral coefficients are preserved over Z.
    const Poly z = parse_poly("3*x^5 - 2*x^2 + 7", CoeffDomain::Integer);
    CHECK(hasse.apply(3, z).domain() == CoeffDomain::Integer);
    CHECK(hasse.apply(3, z) == parse_poly("30*x^2", CoeffDomain::Integer));
}

TEST_CASE("families are additive")
{
    Sampler sampler(21, 6, 9);
    const std::vector<HDFamily> families{HDFamily::hasse(4), HDFamily::from_derivation(P("x^2 + 1"), 4),
                                         difference_family(Automorphism(2, 1), Automorphism::identity(), 2, 12)};
    for (const auto& f : families) {
        for (int k = 0; k < 40; ++k) {
            const Poly p = sampler.poly();
            const Poly q = sampler.poly();
            for (int n = 0; n <= f.order_bound(); ++n) {
                CHECK(f.apply(n, p + q) == f.apply(n, p) + f.apply(n, q));
            }
        }
    }
}

TEST_CASE("table families")
{
    const auto f = difference_family(Automorphism(2, 0), Automorphism::identity(), 1, 8);
    CHECK(f.kind() == HDFamily::Kind::Table);
    CHECK(f.degree_bound() == 8);
    // delta(x^k) = (2^k - 1) x^k.
    CHECK(f.apply(1, P("x^3")) == P("7*x^3"));
    CHECK_THROWS_AS(f.apply(1, P("x^9")), std::out_of_range);
    CHECK_THROWS_AS(HDFamily::table({{P("1"), P("x")}, {P("1")}}), std::invalid_argument);
}

TEST_CASE("operator word text form")
{
    const auto w = W("[d1, a^2, d3, b]");
    REQUIRE(w.symbols.size() == 4);
    CHECK(w.symbols[1] == Symbol::alpha_pow(2));
    CHECK(to_string(w) == "[d1, a^2, d3, b]");
    CHECK(to_string(W("[D, a, D1]")) == "[D, a^1, D]");
    CHECK(W("[]").symbols.empty());
    CHECK_THROWS_AS(W("d1, b"), std::invalid_argument);
    CHECK_THROWS_AS(W("[q]"), std::invalid_argument);
    CHECK_THROWS_AS(W("[a^x]"), std::invalid_argument);
}

TEST_CASE("normalize_word")
{
    const ABContext twisted{Automorphism(2, 0), Automorphism(3, 1)};
    const ABContext beta_id{Automorphism(2, 0), Automorphism::identity()};

    CHECK(normalize_word(W("[D, a^0, D]"), twisted).word == W("[d2]"));
    CHECK(normalize_word(W("[a^2]"), twisted).word == W("[a^2]"));
    CHECK(normalize_word(W("[d1, b, d2]"), beta_id).word == W("[d3]"));
    // beta is not the identity, so a first-product run is left alone.
    CHECK(normalize_word(W("[d1, d2]", WordScope::FirstProduct), twisted).word == W("[d1, d2]"));
    // Mixed runs merge inside second-product words and are flagged.
    const auto mixed = normalize_word(W("[d2, D]", WordScope::SecondProduct), twisted);
    CHECK(mixed.word == W("[d3]"));
    REQUIRE(mixed.merges.size() == 1);
    CHECK(mixed.merges[0].mixed);
    // alpha = id makes every alpha power an identity symbol.
    CHECK(normalize_word(W("[D, a^1, D]", WordScope::SecondProduct), ABContext{}).word == W("[d2]"));
}

TEST_CASE("normalize_word is idempotent on random words")
{
    Sampler sampler(31, 6, 9);
    const std::vector<ABContext> contexts{ABContext{}, ABContext{Automorphism(2, 0), Automorphism::identity()},
                                          ABContext{Automorphism::identity(), Automorphism(-1, 1)},
                                          ABContext{Automorphism(2, 0), Automorphism(3, 1)}};
    for (int k = 0; k < 300; ++k) {
        OperatorWord w{{}, static_cast<WordScope>(sampler.uniform(0, 2))};
        const int len = sampler.uniform(0, 7);
        for (int j = 0; j < len; ++j) {
            switch (sampler.uniform(0, 3)) {
            case 0:
                w.symbols.push_back(Symbol::alpha_pow(sampler.uniform(0, 2)));
                break;
            case 1:
                w.symbols.push_back(Symbol::beta());
                break;
            case 2:
                w.symbols.push_back(Symbol::delta(sampler.uniform(0, 3)));
                break;
            default:
                w.symbols.push_back(Symbol::delta_one());
                break;
            }
        }
        const auto& ctx = contexts[static_cast<std::size_t>(k) % contexts.size()];
        const auto once = normalize_word(w, ctx);
        const auto twice = normalize_word(once.word, ctx);
        CHECK(twice.word == once.word);
        CHECK(twice.merges.empty());

        // Hasse deltas satisfy delta_a delta_b = C(a+b, a) delta_{a+b}, so a
        // merge rescales the value by the run's multinomial coefficient.
        Rational scale = 1;
        for (const auto& ev : once.merges) {
            scale *= multinomial(ev.indices);
        }
        const auto hasse = HDFamily::hasse(30);
        const Poly p = sampler.poly();
        CHECK(eval_word(w, ctx, hasse, p) == eval_word(once.word, ctx, hasse, p) * scale);
    }
}

TEST_CASE("eval_word")
{
    const ABContext ctx{Automorphism(2, 0), Automorphism::identity()};
    const auto hasse = HDFamily::hasse(4);
    CHECK(eval_word(W("[a^1]"), ctx, hasse, P("x^2")) == P("4*x^2"));
    CHECK(eval_word(W("[d1, a^1]"), ctx, hasse, P("x")) == P("2"));
    CHECK(eval_word(W("[]"), ctx, hasse, P("x^3 + 1")) == P("x^3 + 1"));
    CHECK_THROWS_AS(eval_word(W("[d5]"), ctx, hasse, P("x")), std::out_of_range);
}

TEST_CASE("twisted Leibniz expansion reproduces the n = 1 and n = 2 forms")
{
    Sampler sampler(41, 6, 9);
    const auto family = HDFamily::from_derivation(P("x^2 - 3"), 2);
    for (int k = 0; k < 60; ++k) {
        const ABContext ctx{sampler.automorphism(), sampler.automorphism()};
        const Poly r = sampler.poly();
        const Poly s = sampler.poly();
        const auto& a = ctx.alpha;
        const auto& b = ctx.beta;
        auto d = [&](int n, const Poly& p) { return family.apply(n, p); };
        CHECK(ab_leibniz_rhs(family, ctx, 1, r, s) == d(1, r) * a(s) + b(r) * d(1, s));
        const Rational half(1, 2);
        const Poly n2 = d(2, r) * a(a(s)) + half * b(d(1, r)) * d(1, a(s)) + half * d(1, b(r)) * a(d(1, s)) +
                        b(b(r)) * d(2, s);
        CHECK(ab_leibniz_rhs(family, ctx, 2, r, s) == n2);
    }
}

TEST_CASE("twisted expansion with alpha = beta = id")
{
    // delta_3(x * x^2) = delta_3(x^3) = 1 for Hasse.
    const auto hasse = HDFamily::hasse(6);
    CHECK(ab_leibniz_rhs(hasse, ABContext{}, 3, P("x"), P("x^2")) == P("1"));
    CHECK(hasse.apply(3, P("x^3")) == P("1"));
    CHECK_THROWS_AS(ab_leibniz_rhs(hasse, ABContext{}, 0, P("x"), P("x")), std::invalid_argument);
    CHECK_THROWS_AS(ab_leibniz_rhs(hasse, ABContext{}, 7, P("x"), P("x")), std::out_of_range);
}

TEST_CASE("verify_ab_hd")
{
    SampleSpec spec;
    CHECK(verify_ab_hd(HDFamily::hasse(6), ABContext{}, 6, spec).passed);
    CHECK(verify_ab_hd(HDFamily::from_derivation(P("1"), 4), ABContext{}, 4, spec).passed);

    const auto neg = verify_ab_hd(HDFamily::hasse(1), ABContext{Automorphism(2, 0), Automorphism::identity()}, 1,
                                  spec, Expectation::Fail);
    CHECK_FALSE(neg.passed);
    CHECK(neg.as_expected());
    CHECK(neg.witness["r"] == "x");
    CHECK(neg.witness["s"] == "x");
    CHECK(neg.witness["lhs"] == "2*x");
    CHECK(neg.witness["rhs"] == "3*x");

    // alpha - beta is an (alpha, beta)-derivation.
    const ABContext twisted{Automorphism(2, 1), Automorphism(-1, 3)};
    SampleSpec small = spec;
    small.degree_bound = 4;
    CHECK(verify_ab_hd(difference_family(twisted.alpha, twisted.beta, 1, 8), twisted, 1, small).passed);
}

TEST_CASE("(alpha - id)^n / n! is an (alpha, id)-higher derivation through order 2 only")
{
    SampleSpec spec;
    spec.degree_bound = 4;
    spec.count = 40;
    const ABContext ctx{Automorphism(2, 1), Automorphism::identity()};
    const auto family = difference_family(ctx.alpha, ctx.beta, 3, 8);
    CHECK(verify_ab_hd(family, ctx, 2, spec).passed);
    const auto third = verify_ab_hd(family, ctx, 3, spec, Expectation::Fail);
    CHECK_FALSE(third.passed);
    CHECK(third.witness["n"] == 3);
}

TEST_CASE("classical law and collapse")
{
    SampleSpec spec;
    spec.count = 120;
    CHECK(verify_classical_hd(HDFamily::hasse(8), 8, spec, CoeffDomain::Integer).passed);
    CHECK(verify_classical_hd(HDFamily::from_derivation(P("x + 2"), 5), 5, spec).passed);
    const auto rep = collapse_check(HDFamily::hasse(6), 6, spec);
    CHECK(rep.passed);
    CHECK(rep.details["coefficient_identities"] == 55);

    // Coefficient check for n = 4, i = 2: (2! 2! / 4!) * C(4, 2) = 1.
    CHECK(Rational(2 * 2) / 24 * pascal(4, 2) == 1);

    // An additive family that is not a higher derivation breaks the law.
    const auto broken = HDFamily::table({{P("0"), P("1"), P("x"), P("x^2"), P("x^3"), P("x^4"), P("x^5")}});
    SampleSpec low = spec;
    low.degree_bound = 3;
    const auto bad = verify_classical_hd(broken, 1, low, CoeffDomain::Rational, Expectation::Fail);
    CHECK_FALSE(bad.passed);
    CHECK(bad.as_expected());
}
