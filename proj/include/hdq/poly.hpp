#pragma once

// Dense univariate polynomials over Q or Z with exact GMP coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

using Rational = mpq_class;
using Integer = mpz_class;

enum class CoeffDomain { Rational, Integer };

std::string_view to_string(CoeffDomain d);

Rational binomial(long n, long k);
Rational factorial(unsigned long n);

/// Polynomial in x with coefficients indexed by degree. The zero polynomial
/// has an empty coefficient vector; otherwise the leading coefficient is
/// nonzero. Integer-tagged polynomials only ever hold integral coefficients.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Rational> coeffs, CoeffDomain domain = CoeffDomain::Rational);

    static Poly constant(const Rational& c, CoeffDomain domain = CoeffDomain::Rational);
    static Poly monomial(const Rational& c, std::size_t degree,
                         CoeffDomain domain = CoeffDomain::Rational);
    static Poly x(CoeffDomain domain = CoeffDomain::Rational);
    static Poly one(CoeffDomain domain = CoeffDomain::Rational) { return constant(1, domain); }

    [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
    [[nodiscard]] bool is_constant() const noexcept { return coeffs_.size() <= 1; }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] CoeffDomain domain() const noexcept { return domain_; }
    [[nodiscard]] std::span<const Rational> coefficients() const noexcept { return coeffs_; }
    [[nodiscard]] Rational coeff(std::size_t k) const;
    [[nodiscard]] Rational leading() const;

    [[nodiscard]] Poly monic() const;
    [[nodiscard]] Poly derivative() const;
    [[nodiscard]] Poly pow(unsigned exponent) const;
    [[nodiscard]] Rational eval(const Rational& at) const;
    /// Same coefficients under another tag; Z-tagging non-integral data throws.
    [[nodiscard]] Poly with_domain(CoeffDomain domain) const;

    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(const Rational& c);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
    friend Poly operator*(Poly lhs, const Rational& c) { return lhs *= c; }
    friend Poly operator*(const Rational& c, Poly rhs) { return rhs *= c; }
    Poly operator-() const;

    friend bool operator==(const Poly& a, const Poly& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    void check_domain(const Poly& other) const;

    std::vector<Rational> coeffs_;
    CoeffDomain domain_ = CoeffDomain::Rational;
};

struct DivMod {
    Poly quotient;
    Poly remainder;
};

/// Euclidean division over Q. Throws std::domain_error on a zero divisor.
DivMod divmod(const Poly& p, const Poly& q);
/// Monic gcd over Q; gcd(0, 0) = 0.
Poly gcd(const Poly& p, const Poly& q);
Poly lcm(const Poly& p, const Poly& q);
/// Divisibility in the ring the operands live in (Q[x] or Z[x]).
bool divides(const Poly& d, const Poly& p);
/// p / d when d divides p; throws std::domain_error otherwise.
Poly exact_quotient(const Poly& p, const Poly& d);

/// Sparse ascending text form, e.g. `3 - 2*x + 1/2*x^3`.
std::string to_string(const Poly& p);
Poly parse_poly(std::string_view text, CoeffDomain domain = CoeffDomain::Rational);

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace hdq
