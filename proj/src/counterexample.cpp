#include "hdq/counterexample.hpp"

#include <stdexcept>

namespace hdq {

namespace {

Poly zx(const char* text) { return parse_poly(text, CoeffDomain::Integer); }

Integer content(const Poly& p)
{
    Integer g = 0;
    for (const auto& c : p.coefficients()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    return g;
}

// Primitive integral multiple of a Q[x] polynomial with positive leading coefficient.
Poly primitive(const Poly& p)
{
    Integer den = 1;
    for (const auto& c : p.coefficients()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    }
    Poly q = p.with_domain(CoeffDomain::Rational) * Rational(den);
    Integer cont = content(q);
    if (q.leading() < 0) {
        cont = -cont;
    }
    q *= Rational(1) / Rational(cont);
    return q.with_domain(CoeffDomain::Integer);
}

void require_zx(const Poly& p)
{
    if (p.domain() != CoeffDomain::Integer) {
        throw std::invalid_argument("expected a Z[x] polynomial");
    }
}

}  // namespace

Poly zx_lcm(const Poly& a, const Poly& b)
{
    require_zx(a);
    require_zx(b);
    if (a.is_zero() || b.is_zero()) {
        return Poly({}, CoeffDomain::Integer);
    }
    Integer c;
    const Integer ca = content(a);
    const Integer cb = content(b);
    mpz_lcm(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    return primitive(lcm(a, b)) * Rational(c);
}

PrincipalIdeal zx_intersect(const PrincipalIdeal& a, const PrincipalIdeal& b)
{
    return PrincipalIdeal(zx_lcm(a.generator(), b.generator()));
}

TensorWithZ tensor_with_Z(const PrincipalIdeal& module)
{
    const Poly& g = module.generator();
    require_zx(g);
    if (g.is_zero()) {
        throw std::invalid_argument("tensor_with_Z needs a nonzero principal module");
    }
    return TensorWithZ{module, PrincipalIdeal(g * Poly::x(CoeffDomain::Integer)), g};
}

PrincipalIdeal torsion_part(const PrincipalIdeal& module) { return tensor_with_Z(module).kernel; }

CheckReport tensor_identity_check(const SampleSpec& spec)
{
    CheckReport rep("counterexample-tensor", "kernel-of-tensoring-with-Z");
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        const PrincipalIdeal m(sampler.nonzero_poly(CoeffDomain::Integer));
        const TensorWithZ tz = tensor_with_Z(m);
        Poly p = sampler.poly(CoeffDomain::Integer);
        if (t % 2 == 0) {
            p *= Poly::x(CoeffDomain::Integer);
        }
        // M -> M ⊗ Z sends g p to p(0) times the class of g.
        const bool in_kernel = tz.kernel.contains(m.generator() * p);
        ++rep.samples;
        if (in_kernel != (p.eval(0) == 0)) {
            rep.record_failure({{"M", to_string(m)}, {"p", to_string(p)}, {"in_kernel", in_kernel}});
        }
    }
    return rep;
}

CheckReport hereditary_violation_check()
{
    CheckReport rep("counterexample-hereditary", "torsion-class-not-hereditary");
    const PrincipalIdeal R(zx("1"));
    const PrincipalIdeal I(zx("x"));
    const PrincipalIdeal tR = torsion_part(R);
    const PrincipalIdeal tI = torsion_part(I);
    const PrincipalIdeal meet = zx_intersect(I, tR);

    rep.details["T(R)"] = to_string(tR);
    rep.details["T(I)"] = to_string(tI);
    rep.details["I ∩ T(R)"] = to_string(meet);
    rep.details["T(T(R))"] = to_string(torsion_part(tR));
    rep.details["T(T(T(R)))"] = to_string(torsion_part(torsion_part(tR)));
    rep.samples = 1;

    const Poly x = zx("x");
    const bool witness_ok = meet.contains(x) && !tI.contains(x);
    rep.details["witness"] = to_string(x);
    rep.details["witness_in_I ∩ T(R)"] = meet.contains(x);
    rep.details["witness_in_T(I)"] = tI.contains(x);
    if (!(tR == PrincipalIdeal(x))) {
        rep.record_failure({{"expected", "T(R) = (x)"}, {"got", to_string(tR)}});
    }
    if (!(tI == PrincipalIdeal(zx("x^2")))) {
        rep.record_failure({{"expected", "T(I) = (x^2)"}, {"got", to_string(tI)}});
    }
    if (!witness_ok || tI == meet) {
        rep.record_failure({{"expected", "T(I) != I ∩ T(R)"}, {"T(I)", to_string(tI)}, {"meet", to_string(meet)}});
    }
    if (!tI.subset_of(meet)) {
        rep.record_failure({{"expected", "T(I) ⊆ I ∩ T(R)"}});
    }
    if (!(zx_intersect(tR, R) == tR)) {
        rep.record_failure({{"expected", "T(R) ∩ R = T(R)"}});
    }
    return rep;
}

CheckReport derivative_escape_check(const SampleSpec& spec)
{
    CheckReport rep("counterexample-derivation", "torsion-class-not-differential");
    const auto d = [](const Poly& p) { return p.derivative(); };
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        const Poly r = sampler.poly(CoeffDomain::Integer);
        const Poly s = sampler.poly(CoeffDomain::Integer);
        ++rep.samples;
        if (d(r * s) != d(r) * s + r * d(s)) {
            rep.record_failure({{"check", "Leibniz"}, {"r", to_string(r)}, {"s", to_string(s)}});
        }
    }
    const Poly x = zx("x");
    if (d(x * x) != zx("2*x") || d(zx("x^3 + 2*x")) != zx("3*x^2 + 2")) {
        rep.record_failure({{"check", "worked derivatives"}});
    }

    const PrincipalIdeal tR = torsion_part(PrincipalIdeal(zx("1")));
    const Poly dx = d(x);
    rep.details["T(R)"] = to_string(tR);
    rep.details["delta(x)"] = to_string(dx);
    rep.details["x_in_T(R)"] = tR.contains(x);
    rep.details["delta(x)_in_T(R)"] = tR.contains(dx);
    if (!tR.contains(x) || tR.contains(dx)) {
        rep.record_failure({{"expected", "x in T(R) and delta(x) not in T(R)"}, {"delta(x)", to_string(dx)}});
    }
    return rep;
}

}  // namespace hdq
