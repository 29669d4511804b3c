#pragma once

// Finite-dimensional Q-algebras given by structure constants, the enveloping
// algebra R ⊗ R^op, and higher derivations lifted to it.

#include "hdq/operators.hpp"
#include "hdq/poly.hpp"
#include "hdq/report.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

using Vec = std::vector<Rational>;
/// Row-major square matrix; column j holds the image of e_j.
using RatMatrix = std::vector<Vec>;

class FinDimAlgebra {
public:
    /// c[(i * n + j) * n + k] is the coefficient of e_k in e_i e_j. An empty
    /// unit is solved for. Throws std::invalid_argument when associativity or
    /// the unit laws fail, or when no unit exists.
    FinDimAlgebra(std::size_t dim, Vec structure, Vec unit = {}, std::vector<std::string> names = {});

    /// Basis E11, E12, E22.
    static FinDimAlgebra upper_triangular_2x2();
    /// Basis 1, g with g^2 = 1.
    static FinDimAlgebra group_algebra_c2();
    /// `dimension n`, optional `names ...` and `unit ...` lines, then one
    /// `i j k c` line per nonzero structure constant.
    static FinDimAlgebra parse(std::string_view text);
    static FinDimAlgebra load(const std::string& path);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Vec& unit() const noexcept { return unit_; }
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const Rational& c(std::size_t i, std::size_t j, std::size_t k) const
    {
        return structure_[(i * dim_ + j) * dim_ + k];
    }

    [[nodiscard]] Vec basis(std::size_t i) const;
    [[nodiscard]] Vec zero() const { return Vec(dim_); }
    [[nodiscard]] Vec mul(const Vec& a, const Vec& b) const;

    [[nodiscard]] std::string to_string(const Vec& v) const;

private:
    std::size_t dim_;
    Vec structure_;
    Vec unit_;
    std::vector<std::string> names_;
};

Vec add(const Vec& a, const Vec& b);
Vec scale(const Vec& v, const Rational& c);
Vec apply(const RatMatrix& m, const Vec& v);

/// Coordinates over e_i ⊗ e_j, index i * n + j.
struct EnvElement {
    Vec coords;

    friend bool operator==(const EnvElement&, const EnvElement&) = default;
};

EnvElement tensor(const FinDimAlgebra& alg, const Vec& a, const Vec& b);
EnvElement env_add(const EnvElement& p, const EnvElement& q);
EnvElement env_unit(const FinDimAlgebra& alg);
/// Bilinear extension of (a ⊗ b)(c ⊗ d) = ac ⊗ db. Throws std::invalid_argument
/// on a dimension mismatch.
EnvElement env_mul(const FinDimAlgebra& alg, const EnvElement& p, const EnvElement& q);
std::string to_string(const FinDimAlgebra& alg, const EnvElement& p);

/// x · (r ⊗ s) = s x r, extended linearly; makes R a right R ⊗ R^op-module.
Vec right_action(const FinDimAlgebra& alg, const Vec& x, const EnvElement& p);

class AlgebraHD {
public:
    /// maps[n-1] is delta_n as a dim x dim matrix; delta_0 is the identity.
    AlgebraHD(const FinDimAlgebra& alg, std::vector<RatMatrix> maps, std::string label = "matrices");

    /// delta = [u, -], delta_n = delta^n / n!.
    static AlgebraHD inner(const FinDimAlgebra& alg, const Vec& u, int order_bound);
    /// delta_n = 0 for n >= 1.
    static AlgebraHD trivial(const FinDimAlgebra& alg, int order_bound);

    [[nodiscard]] int order_bound() const noexcept { return static_cast<int>(maps_.size()); }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    /// Throws std::out_of_range past the order bound.
    [[nodiscard]] Vec apply(int n, const Vec& v) const;

private:
    std::size_t dim_;
    std::vector<RatMatrix> maps_;
    std::string label_;
};

/// Classical law delta_n(ab) = sum delta_i(a) delta_{n-i}(b) on all basis pairs.
CheckReport algebra_hd_check(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order,
                             Expectation expect = Expectation::Pass);

/// Associativity and unit of the enveloping multiplication on all basis triples,
/// plus the right-module axiom x · (pq) = (x · p) · q for the chosen action.
/// The count of violations under the other convention x · (r ⊗ s) = r x s
/// goes to the details.
CheckReport env_axioms_check(const FinDimAlgebra& alg);

/// sum_i delta_i(r) ⊗ delta_{n-i}(s), extended linearly. Throws
/// std::out_of_range past the order bound.
EnvElement bar_delta(const FinDimAlgebra& alg, const AlgebraHD& delta, int n, const EnvElement& p);

/// The lifted family satisfies the classical law on the enveloping algebra:
/// all basis pairs plus spec.count random pairs, n <= max_order.
CheckReport verify_bar_hd(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order, const SampleSpec& spec,
                          Expectation expect = Expectation::Pass);

/// With d_n = delta_n on R viewed as a right R ⊗ R^op-module: the module law
/// d_n(x · p) = sum d_i(x) · bar_{n-i}(p) and the two one-sided laws for
/// d_n(x r) and d_n(r x), all on basis elements.
CheckReport bimodule_correspondence_check(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order,
                                          Expectation expect = Expectation::Pass);

}  // namespace hdq
