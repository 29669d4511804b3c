#include "hdq/filters.hpp"

#include <algorithm>
#include <stdexcept>

namespace hdq {

RadicalPowerFilter::RadicalPowerFilter(Poly base)
{
    if (base.domain() != CoeffDomain::Rational) {
        throw std::invalid_argument("radical-power filters live over Q[x]");
    }
    if (base.is_zero() || base.is_constant()) {
        throw std::invalid_argument("filter base must be a nonzero nonunit");
    }
    base_ = base.monic();
}

bool RadicalPowerFilter::contains_generator(const Poly& g) const
{
    if (g.is_zero()) {
        return false;
    }
    if (g.is_constant()) {
        return true;
    }
    // Every irreducible factor of g divides base, each with multiplicity <= deg g.
    return divides(g, base_.pow(static_cast<unsigned>(std::max(1, g.degree()))));
}

bool RadicalPowerFilter::contains(const PrincipalIdeal& ideal) const
{
    return contains_generator(ideal.generator());
}

PrincipalIdeal RadicalPowerFilter::power_ideal(int k) const
{
    return PrincipalIdeal(base_.pow(static_cast<unsigned>(k)));
}

std::optional<int> RadicalPowerFilter::power_index(const PrincipalIdeal& ideal) const
{
    const Poly& g = ideal.generator();
    if (g.is_zero() || g.degree() % base_.degree() != 0) {
        return std::nullopt;
    }
    const int k = g.degree() / base_.degree();
    if (k >= 1 && base_.pow(static_cast<unsigned>(k)) == g) {
        return k;
    }
    return std::nullopt;
}

bool RadicalPowerFilter::invariant_under(const Automorphism& a) const
{
    return contains_generator(a(base_)) && contains_generator(a.inverse()(base_));
}

bool filter_subset(const RadicalPowerFilter& f1, const RadicalPowerFilter& f2)
{
    return f2.contains_generator(f1.base());
}

namespace {

Poly sample_member(const RadicalPowerFilter& filter, Sampler& sampler)
{
    // base^a times a divisor of a base power picked out by a linear factor.
    const Poly& base = filter.base();
    const Poly lin = Poly({Rational(sampler.uniform(-3, 3)), Rational(1)});
    const Poly piece = gcd(base.pow(static_cast<unsigned>(sampler.uniform(1, 3))),
                           lin.pow(static_cast<unsigned>(sampler.uniform(1, 3))));
    return base.pow(static_cast<unsigned>(sampler.uniform(0, 2))) * piece * sampler.nonzero_rational();
}

json ideal_json(const PrincipalIdeal& ideal) { return to_string(ideal); }

}  // namespace

CheckReport gabriel_axiom_check(const RadicalPowerFilter& filter, const SampleSpec& spec)
{
    CheckReport rep("filter-axioms", "gabriel-filter-axioms");
    rep.details["base"] = to_string(filter.base());
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);

    std::size_t axiom1 = 0;
    std::size_t axiom2_premise = 0;
    std::size_t closure = 0;
    for (int t = 0; t < spec.count; ++t) {
        const PrincipalIdeal member(sample_member(filter, sampler));
        if (!filter.contains(member)) {
            rep.record_failure({{"check", "sampled member"}, {"ideal", ideal_json(member)}});
            continue;
        }

        // (1) (r : I) stays in the filter; every other draw makes r an element of I.
        const Poly r = t % 3 == 0 ? member.generator() * sampler.poly() : sampler.poly();
        const PrincipalIdeal colon = colon_ideal(r, member);
        ++axiom1;
        if (!filter.contains(colon)) {
            rep.record_failure(
                {{"axiom", 1}, {"I", ideal_json(member)}, {"r", to_string(r)}, {"colon", ideal_json(colon)}});
        }

        // (2) with I = (g): (r : J) in F for every r in I iff (g : J) in F,
        // since (g t : J) contains (g : J) and the filter is upward closed.
        Poly h = sampler.nonzero_poly();
        if (t % 2 == 0) {
            h = sample_member(filter, sampler) * (t % 4 == 0 ? Poly::one() : h);
        }
        const PrincipalIdeal candidate(h);
        const bool premise = filter.contains(colon_ideal(member.generator(), candidate)) &&
                             filter.contains(colon_ideal(member.generator() * sampler.nonzero_poly(), candidate));
        if (premise) {
            ++axiom2_premise;
            if (!filter.contains(candidate)) {
                rep.record_failure({{"axiom", 2}, {"I", ideal_json(member)}, {"J", ideal_json(candidate)}});
            }
        }

        // Upward closure and intersection closure.
        const PrincipalIdeal bigger(exact_quotient(member.generator(),
                                                   gcd(member.generator(), sampler.nonzero_poly())));
        const PrincipalIdeal other(sample_member(filter, sampler));
        ++closure;
        if (!filter.contains(bigger) || !filter.contains(intersect(member, other))) {
            rep.record_failure({{"check", "closure"}, {"I", ideal_json(member)}, {"other", ideal_json(other)}});
        }
        ++rep.samples;
    }
    rep.details["axiom1_instances"] = axiom1;
    rep.details["axiom2_premise_instances"] = axiom2_premise;
    rep.details["closure_instances"] = closure;
    return rep;
}

PrincipalIdeal invariance_witness(const RadicalPowerFilter& filter, const HDFamily& family,
                                  const PrincipalIdeal& ideal, int n)
{
    const auto k = filter.power_index(ideal);
    if (!k) {
        throw std::invalid_argument("invariance witness is only claimed for base-power ideals, got " +
                                    to_string(ideal));
    }
    if (n < 0 || n > family.order_bound()) {
        throw std::out_of_range("order " + std::to_string(n) + " outside the family's bound");
    }
    return filter.power_ideal(*k + n);
}

CheckReport verify_invariance(const RadicalPowerFilter& filter, const HDFamily& family, const PrincipalIdeal& ideal,
                              int n, const PrincipalIdeal& witness, const SampleSpec& spec, Expectation expect)
{
    CheckReport rep("invariance", "higher-derivation-invariance", expect);
    rep.order = n;
    rep.details["base"] = to_string(filter.base());
    rep.details["I"] = ideal_json(ideal);
    rep.details["J"] = ideal_json(witness);
    rep.details["family"] = family.describe();

    if (!filter.contains(witness)) {
        rep.record_failure({{"check", "J not in filter"}, {"J", ideal_json(witness)}});
        return rep;
    }
    const Poly& g = witness.generator();
    for (int i = 0; i <= n; ++i) {
        const Poly image = family.apply(i, g);
        ++rep.samples;
        if (!ideal.contains(image)) {
            rep.record_failure({{"i", i}, {"element", to_string(g)}, {"image", to_string(image)}});
        }
    }
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        const Poly element = g * sampler.poly();
        for (int i = 0; i <= n; ++i) {
            const Poly image = family.apply(i, element);
            ++rep.samples;
            if (!ideal.contains(image)) {
                rep.record_failure({{"i", i}, {"element", to_string(element)}, {"image", to_string(image)}});
            }
        }
    }
    return rep;
}

CheckReport invariance_grid_check(const RadicalPowerFilter& filter, const HDFamily& family, int max_k, int max_n,
                                  const SampleSpec& spec)
{
    CheckReport rep("invariance-grid", "base-power-witnesses-suffice");
    rep.order = max_n;
    rep.details["base"] = to_string(filter.base());
    rep.details["family"] = family.describe();
    int cases = 0;
    int rejected = 0;
    for (int k = 1; k <= max_k; ++k) {
        const PrincipalIdeal target = filter.power_ideal(k);
        for (int n = 0; n <= max_n; ++n) {
            const PrincipalIdeal witness = invariance_witness(filter, family, target, n);
            const CheckReport good = verify_invariance(filter, family, target, n, witness, spec);
            rep.samples += good.samples;
            ++cases;
            if (!good.passed) {
                rep.record_failure({{"k", k}, {"n", n}, {"J", to_string(witness)}, {"failure", good.witness}});
            }
            if (n == 0) {
                continue;
            }
            const PrincipalIdeal small = filter.power_ideal(k + n - 1);
            const CheckReport bad = verify_invariance(filter, family, target, n, small, spec, Expectation::Fail);
            rep.samples += bad.samples;
            if (bad.passed) {
                rep.record_failure({{"k", k}, {"n", n}, {"undersized_J", to_string(small)}, {"check", "not rejected"}});
            } else {
                ++rejected;
            }
        }
    }
    rep.details["cases"] = cases;
    rep.details["undersized_rejected"] = rejected;
    return rep;
}

CheckReport invariance_trace(const RadicalPowerFilter& filter, const HDFamily& family, const ABContext& ctx,
                             const PrincipalIdeal& ideal, int n, const SampleSpec& spec)
{
    if (!filter.invariant_under(ctx.alpha) || !filter.invariant_under(ctx.beta)) {
        throw std::invalid_argument("filter is not alpha- and beta-invariant");
    }
    const auto k = filter.power_index(ideal);
    if (!k) {
        throw std::invalid_argument("trace needs I = (base^k), got " + to_string(ideal));
    }
    if (n < 0 || n > family.order_bound()) {
        throw std::out_of_range("order " + std::to_string(n) + " outside the family's bound");
    }

    CheckReport rep("invariance-trace", "alpha-beta-invariant-filter-is-delta-invariant");
    rep.order = n;
    rep.details["base"] = to_string(filter.base());
    rep.details["I"] = ideal_json(ideal);
    rep.details["family"] = family.describe();
    rep.details["alpha"] = to_string(ctx.alpha);
    rep.details["beta"] = to_string(ctx.beta);

    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    if (n == 0) {
        // J = I and delta_0 = id.
        rep.details["K"] = ideal_json(ideal);
        for (int t = 0; t < spec.count; ++t) {
            const Poly r = ideal.generator() * sampler.poly();
            ++rep.samples;
            if (!ideal.contains(family.apply(0, r))) {
                rep.record_failure({{"r", to_string(r)}});
            }
        }
        return rep;
    }

    // Auxiliary members: J_0 = I, J_i = (base^(k+n)) for 0 < i < n, J_n with
    // beta^n(J_n) ⊆ I, and J_alpha with alpha^n(J_alpha) ⊆ I.
    const Poly base_k = filter.base().pow(static_cast<unsigned>(*k));
    const Automorphism alpha_n = ctx.alpha.power(n);
    const Automorphism beta_n = ctx.beta.power(n);
    std::vector<PrincipalIdeal> aux{ideal};
    for (int i = 1; i < n; ++i) {
        aux.push_back(filter.power_ideal(*k + n));
    }
    aux.push_back(intersect(filter.power_ideal(*k + n), PrincipalIdeal(beta_n.inverse()(base_k))));
    const PrincipalIdeal j_alpha(alpha_n.inverse()(base_k));
    PrincipalIdeal K = j_alpha;
    json aux_json = json::array();
    for (const auto& j : aux) {
        K = intersect(K, j);
        aux_json.push_back(ideal_json(j));
        if (!filter.contains(j)) {
            rep.record_failure({{"check", "auxiliary ideal not in filter"}, {"ideal", ideal_json(j)}});
        }
    }
    rep.details["J_i"] = aux_json;
    rep.details["J_alpha"] = ideal_json(j_alpha);
    rep.details["K"] = ideal_json(K);
    if (!filter.contains(K) || !K.subset_of(ideal)) {
        rep.record_failure({{"check", "K must be a member inside I"}, {"K", ideal_json(K)}});
        return rep;
    }

    std::size_t formula_terms = 0;
    for (int t = 0; t < spec.count; ++t) {
        const Poly r = K.generator() * sampler.nonzero_poly();
        const Poly dn_r = family.apply(n, r);

        // J_i property on r in K: each first-product sum lands in I.
        for (int i = 1; i <= n; ++i) {
            const Poly sum = first_product_sum(family, ctx, n, i, r);
            if (!ideal.contains(sum)) {
                rep.record_failure({{"stage", "first-product sum"}, {"i", i}, {"r", to_string(r)}});
            }
        }

        const PrincipalIdeal colon = colon_ideal(alpha_n.inverse()(dn_r), K);
        const Poly s = colon.generator() * sampler.poly();
        ++rep.samples;

        if (!ideal.contains(dn_r * alpha_n(s))) {
            rep.record_failure({{"stage", "leading term"}, {"r", to_string(r)}, {"s", to_string(s)}});
        }
        const Poly rs = r * s;
        const ABExpansion expansion = ab_expansion(family, ctx, n, r, s);
        const Poly dn_rs = family.apply(n, rs);
        if (dn_rs != expansion.value) {
            rep.record_failure({{"stage", "twisted Leibniz rule"}, {"r", to_string(r)}, {"s", to_string(s)}});
        }
        for (const auto& term : expansion.terms) {
            ++formula_terms;
            if (!ideal.contains(term.value)) {
                rep.record_failure({{"stage", "expansion term"},
                                    {"i", term.i},
                                    {"r", to_string(r)},
                                    {"s", to_string(s)},
                                    {"term", to_string(term.value)}});
            }
        }
        // s in (r : J) means r s in K and delta_n(r s) in I.
        if (!K.contains(rs) || !ideal.contains(dn_rs)) {
            rep.record_failure({{"stage", "containment"},
                                {"r", to_string(r)},
                                {"s", to_string(s)},
                                {"delta_n(rs)", to_string(dn_rs)}});
        }
    }
    rep.details["expansion_terms_checked"] = formula_terms;
    return rep;
}

}  // namespace hdq
