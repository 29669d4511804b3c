#pragma once

#include "hdq/poly.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace hdq {

/// Affine substitution x -> unit*x + shift, acting on Q[x] coefficient-wise.
/// These are exactly the Q-algebra automorphisms of Q[x].
class Automorphism {
public:
    Automorphism() = default;
    Automorphism(Rational unit, Rational shift);

    static Automorphism identity() { return {}; }

    [[nodiscard]] const Rational& unit() const noexcept { return unit_; }
    [[nodiscard]] const Rational& shift() const noexcept { return shift_; }
    [[nodiscard]] bool is_identity() const noexcept { return unit_ == 1 && shift_ == 0; }

    /// p(unit*x + shift).
    [[nodiscard]] Poly apply(const Poly& p) const;
    [[nodiscard]] Poly operator()(const Poly& p) const { return apply(p); }
    [[nodiscard]] Automorphism inverse() const;
    /// Integer powers; negative exponents use the inverse.
    [[nodiscard]] Automorphism power(int exponent) const;

    friend bool operator==(const Automorphism&, const Automorphism&) = default;

private:
    Rational unit_ = 1;
    Rational shift_ = 0;
};

/// compose(a, b) acts as a after b: compose(a, b)(p) = a(b(p)).
Automorphism compose(const Automorphism& a, const Automorphism& b);

std::string to_string(const Automorphism& a);
/// Accepts the image of x, e.g. `2*x + 1`; must be of degree one.
Automorphism parse_automorphism(std::string_view image_of_x);

/// Principal ideal (g). Over Q the generator is stored monic.
class PrincipalIdeal {
public:
    explicit PrincipalIdeal(Poly generator);

    static PrincipalIdeal whole(CoeffDomain d = CoeffDomain::Rational) { return PrincipalIdeal(Poly::one(d)); }

    [[nodiscard]] const Poly& generator() const noexcept { return gen_; }
    [[nodiscard]] bool contains(const Poly& p) const { return divides(gen_, p); }
    /// Ideal containment: this ⊆ other.
    [[nodiscard]] bool subset_of(const PrincipalIdeal& other) const { return divides(other.gen_, gen_); }
    [[nodiscard]] bool is_whole_ring() const;

    friend bool operator==(const PrincipalIdeal&, const PrincipalIdeal&) = default;

private:
    Poly gen_;
};

/// (J : r) in ring-element form: { s | r*s in J } = (g / gcd(r, g)).
PrincipalIdeal colon_ideal(const Poly& r, const PrincipalIdeal& ideal);
/// Intersection of principal ideals over Q[x].
PrincipalIdeal intersect(const PrincipalIdeal& a, const PrincipalIdeal& b);

std::string to_string(const PrincipalIdeal& ideal);

/// Deterministic generator for sample polynomials and automorphisms.
/// Degrees are drawn in [0, degree_bound] and numerators/denominators in
/// [-coeff_bound, coeff_bound] / [1, coeff_bound].
class Sampler {
public:
    Sampler(std::uint64_t seed, int degree_bound = 6, int coeff_bound = 9);

    Rational rational();
    Rational nonzero_rational();
    Integer integer();
    Poly poly(CoeffDomain domain = CoeffDomain::Rational);
    Poly poly_of_degree_at_most(int degree, CoeffDomain domain = CoeffDomain::Rational);
    Poly nonzero_poly(CoeffDomain domain = CoeffDomain::Rational);
    Automorphism automorphism();
    int uniform(int lo, int hi);

    [[nodiscard]] int degree_bound() const noexcept { return degree_bound_; }
    [[nodiscard]] int coeff_bound() const noexcept { return coeff_bound_; }

private:
    std::mt19937_64 engine_;
    int degree_bound_;
    int coeff_bound_;
};

}  // namespace hdq
