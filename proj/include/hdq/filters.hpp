#pragma once

// Gabriel filters of radical-power type over Q[x]: all ideals containing
// some power of a fixed base polynomial.

#include "hdq/operators.hpp"
#include "hdq/report.hpp"
#include "hdq/ring.hpp"

#include <optional>

namespace hdq {

class RadicalPowerFilter {
public:
    /// Throws std::invalid_argument for a zero, unit, or Z[x] base.
    explicit RadicalPowerFilter(Poly base);

    [[nodiscard]] const Poly& base() const noexcept { return base_; }

    /// (g) contains a power of base iff g | base^max(1, deg g).
    [[nodiscard]] bool contains(const PrincipalIdeal& ideal) const;
    [[nodiscard]] bool contains_generator(const Poly& g) const;

    [[nodiscard]] PrincipalIdeal power_ideal(int k) const;
    /// k when ideal == (base^k), k >= 1.
    [[nodiscard]] std::optional<int> power_index(const PrincipalIdeal& ideal) const;

    /// Some J in the filter has a(J) inside any given member; for radical-power
    /// filters this is (a^-1(base)) being a member, checked together with (a(base)).
    [[nodiscard]] bool invariant_under(const Automorphism& a) const;

private:
    Poly base_;
};

/// F1 ⊆ F2 iff (base1) is a member of F2.
bool filter_subset(const RadicalPowerFilter& f1, const RadicalPowerFilter& f2);

/// Both Gabriel axioms on sampled members, plus upward and intersection closure.
CheckReport gabriel_axiom_check(const RadicalPowerFilter& filter, const SampleSpec& spec);

/// J = (base^(k+n)) for I = (base^k). Throws std::invalid_argument when I is
/// not a base power and std::out_of_range past the family's order bound.
PrincipalIdeal invariance_witness(const RadicalPowerFilter& filter, const HDFamily& family,
                                  const PrincipalIdeal& ideal, int n);

/// delta_i(J) ⊆ I for i <= n. Generator images are checked exactly, which
/// certifies the ideal for classical families since delta_i(g h) expands into
/// delta_j(g) multiples; sampled multiples g*h are spot-checked as well.
CheckReport verify_invariance(const RadicalPowerFilter& filter, const HDFamily& family,
                              const PrincipalIdeal& ideal, int n, const PrincipalIdeal& witness,
                              const SampleSpec& spec, Expectation expect = Expectation::Pass);

/// Every k in [1, max_k] and n in [0, max_n]: the base-power witness passes
/// verify_invariance, and for n >= 1 the ideal (base^(k+n-1)) is rejected.
CheckReport invariance_grid_check(const RadicalPowerFilter& filter, const HDFamily& family, int max_k, int max_n,
                                  const SampleSpec& spec);

/// Rebuilds the inductive construction showing an alpha- and beta-invariant
/// filter is invariant for an (alpha, beta)-higher derivation: K is the
/// intersection of the auxiliary members J_i and J_alpha, J = { r in K :
/// delta_n(r) in I }, and for sampled r in K and s in (alpha^-n(delta_n(r)) : K)
/// the product r s must land in J. Throws std::invalid_argument when the
/// filter is not alpha- and beta-invariant or I is not a base power.
CheckReport invariance_trace(const RadicalPowerFilter& filter, const HDFamily& family, const ABContext& ctx,
                             const PrincipalIdeal& ideal, int n, const SampleSpec& spec);

}  // namespace hdq
