#include "hdq/ring.hpp"

#include <stdexcept>
#include <utility>

namespace hdq {

Automorphism::Automorphism(Rational unit, Rational shift)
    : unit_(std::move(unit)), shift_(std::move(shift))
{
    if (unit_ == 0) {
        throw std::invalid_argument("automorphism unit must be nonzero");
    }
}

Poly Automorphism::apply(const Poly& p) const
{
    if (is_identity() || p.is_constant()) {
        return p;
    }
    const Poly image = Poly({shift_, unit_}, p.domain());
    Poly acc({}, p.domain());
    const auto cs = p.coefficients();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) {
        acc *= image;
        acc += Poly::constant(*it, p.domain());
    }
    return acc;
}

Automorphism Automorphism::inverse() const { return {1 / unit_, -shift_ / unit_}; }

Automorphism Automorphism::power(int exponent) const
{
    const Automorphism step = exponent < 0 ? inverse() : *this;
    Automorphism out;
    for (int k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) {
        out = compose(step, out);
    }
    return out;
}

Automorphism compose(const Automorphism& a, const Automorphism& b)
{
    // b(p) = p(v x + d); a(b(p)) = p(v (u x + c) + d).
    return {a.unit() * b.unit(), b.unit() * a.shift() + b.shift()};
}

std::string to_string(const Automorphism& a)
{
    return "x -> " + to_string(Poly({a.shift(), a.unit()}));
}

Automorphism parse_automorphism(std::string_view image_of_x)
{
    const Poly p = parse_poly(image_of_x);
    if (p.degree() != 1) {
        throw std::invalid_argument("automorphism image of x must have degree one");
    }
    return {p.coeff(1), p.coeff(0)};
}

namespace {

Poly normalize_generator(const Poly& g)
{
    if (g.domain() == CoeffDomain::Rational) {
        return g.monic();
    }
    return g.leading() < 0 ? -g : g;
}

}  // namespace

PrincipalIdeal::PrincipalIdeal(Poly generator) : gen_(normalize_generator(generator)) {}

bool PrincipalIdeal::is_whole_ring() const
{
    if (gen_.is_zero() || gen_.degree() > 0) {
        return false;
    }
    return gen_.domain() == CoeffDomain::Rational || abs(gen_.leading()) == 1;
}

PrincipalIdeal colon_ideal(const Poly& r, const PrincipalIdeal& ideal)
{
    const Poly& g = ideal.generator();
    if (g.domain() != CoeffDomain::Rational || r.domain() != CoeffDomain::Rational) {
        throw std::invalid_argument("colon_ideal requires Q[x]");
    }
    if (g.is_zero()) {
        // Annihilator of r in a domain.
        return PrincipalIdeal(r.is_zero() ? Poly::one() : Poly());
    }
    return PrincipalIdeal(exact_quotient(g, gcd(r, g)));
}

PrincipalIdeal intersect(const PrincipalIdeal& a, const PrincipalIdeal& b)
{
    return PrincipalIdeal(lcm(a.generator(), b.generator()));
}

std::string to_string(const PrincipalIdeal& ideal) { return "(" + to_string(ideal.generator()) + ")"; }

Sampler::Sampler(std::uint64_t seed, int degree_bound, int coeff_bound)
    : engine_(seed), degree_bound_(degree_bound), coeff_bound_(coeff_bound)
{
    if (degree_bound < 0 || coeff_bound < 1) {
        throw std::invalid_argument("sampler bounds must be positive");
    }
}

int Sampler::uniform(int lo, int hi)
{
    // Modulo reduction keeps draws identical across standard libraries.
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
}

Integer Sampler::integer() { return uniform(-coeff_bound_, coeff_bound_); }

Rational Sampler::rational()
{
    Rational q(uniform(-coeff_bound_, coeff_bound_), uniform(1, coeff_bound_));
    q.canonicalize();
    return q;
}

Rational Sampler::nonzero_rational()
{
    Rational q = 0;
    while (q == 0) {
        q = rational();
    }
    return q;
}

Poly Sampler::poly_of_degree_at_most(int degree, CoeffDomain domain)
{
    std::vector<Rational> cs(static_cast<std::size_t>(degree + 1));
    for (auto& c : cs) {
        c = domain == CoeffDomain::Integer ? Rational(integer()) : rational();
    }
    return Poly(std::move(cs), domain);
}

Poly Sampler::poly(CoeffDomain domain)
{
    return poly_of_degree_at_most(uniform(0, degree_bound_), domain);
}

Poly Sampler::nonzero_poly(CoeffDomain domain)
{
    Poly p;
    do {
        p = poly(domain);
    } while (p.is_zero());
    return p;
}

Automorphism Sampler::automorphism() { return {nonzero_rational(), rational()}; }

}  // namespace hdq
