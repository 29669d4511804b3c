#pragma once

// Finitely generated Q[x]-modules given by presentation matrices, their
// torsion submodules for a radical-power filter, modules of quotients as
// localizations at powers of the filter base, and the extension of
// (higher) derivations to those localizations.

#include "hdq/filters.hpp"
#include "hdq/matrix.hpp"
#include "hdq/operators.hpp"
#include "hdq/report.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hdq {

/// Q[x]^g modulo the row space of the presentation (rows are relations).
/// Elements are row vectors of length g in generator coordinates.
class FgModule {
public:
    explicit FgModule(PolyMatrix presentation);

    static FgModule free(std::size_t rank);
    /// Q[x]/(d); d = 0 gives the free module of rank 1.
    static FgModule cyclic(const Poly& d);
    /// Matrix text format; a bare `0` row describes Q[x] itself.
    static FgModule parse(std::string_view text);
    /// Throws std::runtime_error when the file cannot be read.
    static FgModule load(const std::string& path);

    [[nodiscard]] std::size_t generators() const noexcept { return presentation_.cols(); }
    [[nodiscard]] const PolyMatrix& presentation() const noexcept { return presentation_; }
    [[nodiscard]] const SNFDecomposition& snf() const noexcept { return snf_; }
    /// One entry per SNF coordinate: d_j monic, 1 for a vanishing coordinate, 0 for a free one.
    [[nodiscard]] const PolyVector& invariant_factors() const noexcept { return factors_; }

    /// (v V)_j reduced modulo d_j.
    [[nodiscard]] PolyVector snf_coordinates(const PolyVector& v) const;
    /// y V^-1, the inverse change of coordinates.
    [[nodiscard]] PolyVector from_snf(const PolyVector& y) const;

    [[nodiscard]] PolyVector zero() const { return PolyVector(generators()); }
    [[nodiscard]] PolyVector generator(std::size_t i) const;
    [[nodiscard]] bool is_zero(const PolyVector& v) const;
    [[nodiscard]] bool equal(const PolyVector& a, const PolyVector& b) const;
    /// Representative rebuilt from reduced SNF coordinates.
    [[nodiscard]] PolyVector reduce(const PolyVector& v) const;

private:
    PolyMatrix presentation_;
    SNFDecomposition snf_;
    PolyVector factors_;
};

PolyVector add(const PolyVector& a, const PolyVector& b);
PolyVector sub(const PolyVector& a, const PolyVector& b);
PolyVector scale(const PolyVector& v, const Poly& p);
/// `p` for one coordinate, `[p1, p2, ...]` otherwise.
std::string to_string(const PolyVector& v);

/// d_j = b_j * c_j where b_j collects every irreducible factor d_j shares with
/// the base. Free coordinates have d = b = c = 0.
struct TorsionComponent {
    Poly d;
    Poly b;
    Poly c;
};

class TorsionSubmodule {
public:
    TorsionSubmodule(const FgModule& module, const RadicalPowerFilter& filter);

    [[nodiscard]] const std::vector<TorsionComponent>& components() const noexcept { return components_; }
    /// Classes of c_j e_j, mapped back to generator coordinates; zero ones skipped.
    [[nodiscard]] const std::vector<PolyVector>& generators() const noexcept { return generators_; }
    [[nodiscard]] bool contains(const PolyVector& v) const;
    [[nodiscard]] bool is_zero() const noexcept { return generators_.empty(); }
    /// The product of the b_j; it kills the whole torsion submodule.
    [[nodiscard]] Poly exponent() const;

private:
    FgModule module_;
    std::vector<TorsionComponent> components_;
    std::vector<PolyVector> generators_;
};

TorsionSubmodule torsion_submodule(const FgModule& module, const RadicalPowerFilter& filter);

/// v / base^k with v in generator coordinates of the original module.
struct Fraction {
    PolyVector num;
    int k = 0;
};

/// (M / t(M))[1/base]. For radical-power filters over Q[x] this is the module
/// of quotients. Equality of fractions is decided by cross-multiplying and
/// testing the difference for torsion.
class LocalizedModule {
public:
    LocalizedModule(FgModule module, RadicalPowerFilter filter);

    [[nodiscard]] const FgModule& module() const noexcept { return module_; }
    [[nodiscard]] const RadicalPowerFilter& filter() const noexcept { return filter_; }
    [[nodiscard]] const TorsionSubmodule& torsion() const noexcept { return torsion_; }
    [[nodiscard]] const Poly& base() const noexcept { return filter_.base(); }

    /// q_M(m) = m / 1.
    [[nodiscard]] Fraction q(const PolyVector& m) const { return Fraction{m, 0}; }
    [[nodiscard]] Fraction make(PolyVector num, int k) const;

    [[nodiscard]] bool is_zero(const Fraction& f) const;
    [[nodiscard]] bool equal(const Fraction& a, const Fraction& b) const;
    [[nodiscard]] Fraction add(const Fraction& a, const Fraction& b) const;
    [[nodiscard]] Fraction sub(const Fraction& a, const Fraction& b) const;
    /// f * (p / base^j), the action of the localized ring.
    [[nodiscard]] Fraction times(const Fraction& f, const Poly& p, int j = 0) const;
    /// f / base^j.
    [[nodiscard]] Fraction divide_by_base(const Fraction& f, int j) const;

    /// Unique representative: torsion-free coordinates absorb as much of the
    /// denominator as they can, so base divides no free coordinate when k > 0.
    [[nodiscard]] Fraction canonical(const Fraction& f) const;
    [[nodiscard]] std::string to_string(const Fraction& f) const;

    /// Number of free SNF coordinates.
    [[nodiscard]] int free_rank() const;
    /// Nonconstant c_j: the localized module is free^rank plus the sum of Q[x]/(c_j).
    [[nodiscard]] PolyVector finite_invariants() const;
    /// 0 when the free rank is positive, otherwise the lcm of the finite invariants.
    [[nodiscard]] Poly annihilator() const;
    /// Q-dimension, or -1 when infinite.
    [[nodiscard]] int q_dimension() const;
    [[nodiscard]] bool is_zero_module() const;

private:
    FgModule module_;
    RadicalPowerFilter filter_;
    TorsionSubmodule torsion_;
};

LocalizedModule module_of_quotients(const FgModule& module, const RadicalPowerFilter& filter);

/// A Delta-HD on M given by the images d_n(e_g) of the generators and
/// propagated by d_n(sum e_g p_g) = sum_g sum_i d_i(e_g) delta_{n-i}(p_g).
class ModuleHDFamily {
public:
    /// images[n-1][g] = d_n(e_g) for 1 <= n <= images.size().
    ModuleHDFamily(HDFamily ring, FgModule module, std::vector<std::vector<PolyVector>> images);
    /// d_n acts coordinate-wise as delta_n (all generator images zero).
    static ModuleHDFamily induced(HDFamily ring, FgModule module);

    [[nodiscard]] const HDFamily& ring() const noexcept { return ring_; }
    [[nodiscard]] const FgModule& module() const noexcept { return module_; }
    [[nodiscard]] int order_bound() const noexcept { return order_bound_; }
    [[nodiscard]] PolyVector apply(int n, const PolyVector& v) const;
    [[nodiscard]] std::string describe() const;

private:
    HDFamily ring_;
    FgModule module_;
    std::vector<std::vector<PolyVector>> images_;
    int order_bound_;
    bool induced_ = false;
};

/// d_i(relation) = 0 in M for every presentation row and i <= max_order,
/// plus the Delta-HD law d_n(m r) = sum d_i(m) delta_{n-i}(r) on samples.
CheckReport module_hd_check(const ModuleHDFamily& family, int max_order, const SampleSpec& spec);

/// Extension of a module HD to the module of quotients, solving the HD law on
/// v = (v / s) s for d_n(v / s) order by order.
class ExtendedHD {
public:
    ExtendedHD(ModuleHDFamily family, LocalizedModule target, int order_bound);

    [[nodiscard]] const LocalizedModule& target() const noexcept { return target_; }
    [[nodiscard]] int order_bound() const noexcept { return order_bound_; }
    /// d_0(f), ..., d_n(f).
    [[nodiscard]] std::vector<Fraction> apply_upto(int n, const Fraction& f) const;
    [[nodiscard]] Fraction apply(int n, const Fraction& f) const;

private:
    ModuleHDFamily family_;
    LocalizedModule target_;
    int order_bound_;
};

/// Throws std::invalid_argument with the first relation witness when the
/// family is not well defined on M up to order n, and std::out_of_range
/// past its order bound.
ExtendedHD extend_hd(const ModuleHDFamily& family, const LocalizedModule& target, int n);

/// Quotient rule d(v / b^k) = (d(v) b^k - v delta(b^k)) / b^(2k).
class ExtendedDerivation {
public:
    ExtendedDerivation(ModuleHDFamily family, LocalizedModule target);

    [[nodiscard]] Fraction apply(const Fraction& f) const;

private:
    ModuleHDFamily family_;
    LocalizedModule target_;
};

/// Same errors as extend_hd at order 1.
ExtendedDerivation extend_derivation(const ModuleHDFamily& family, const LocalizedModule& target);

/// Localization map M_F1 -> M_F2 for F1 ⊆ F2: with base1 | base2^m and
/// base2^m = base1 c, v / base1^k = v c^k / base2^(m k).
class Q12Map {
public:
    /// Throws std::invalid_argument unless F1 ⊆ F2 over the same module.
    Q12Map(const LocalizedModule& source, const LocalizedModule& target);

    [[nodiscard]] Fraction operator()(const Fraction& f) const;
    [[nodiscard]] int power() const noexcept { return m_; }
    [[nodiscard]] const Poly& cofactor() const noexcept { return cofactor_; }

private:
    int m_ = 1;
    Poly cofactor_;
};

/// Sampled fractions (numerators from the sampler, exponents in [0, 3]).
std::vector<Fraction> sample_fractions(const LocalizedModule& target, const SampleSpec& spec);

/// ker q_M = t(M) on sampled elements, half of them drawn from t(M); details
/// carry the shape of the localized module.
CheckReport localization_check(const LocalizedModule& target, const SampleSpec& spec);

/// For n <= max_order on sampled fractions: extend_hd at n = 1 agrees with the
/// quotient rule, d_n(q(m)) = q(d_n(m)), the Delta-HD law holds over the
/// localized ring, and results do not depend on the representative.
CheckReport extension_check(const ModuleHDFamily& family, const RadicalPowerFilter& filter, int max_order,
                            const SampleSpec& spec);

/// Both squares of the nested-filter diagram: q12 q1 = q2 and
/// d_n q12 = q12 d_n for n <= max_order.
CheckReport agreement_check(const ModuleHDFamily& family, const RadicalPowerFilter& f1,
                            const RadicalPowerFilter& f2, int max_order, const SampleSpec& spec);

/// d_n(t(M)) ⊆ t(M) on sampled torsion elements, n <= max_order.
CheckReport torsion_preservation_check(const ModuleHDFamily& family, const RadicalPowerFilter& filter,
                                       int max_order, const SampleSpec& spec);

}  // namespace hdq
