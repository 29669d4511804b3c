#pragma once

// Higher derivations on Q[x] / Z[x], symbolic operator words built from
// {alpha^m, beta, delta_k}, and the twisted Leibniz expansion of an
// (alpha, beta)-higher derivation.

#include "hdq/poly.hpp"
#include "hdq/report.hpp"
#include "hdq/ring.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

/// Indexed family {delta_n}, n <= order_bound, with delta_0 = id.
class HDFamily {
public:
    enum class Kind { Hasse, FromDerivation, Table };

    /// delta_n(x^k) = C(k, n) x^(k-n); integral, so it also acts on Z[x].
    static HDFamily hasse(int order_bound);
    /// delta_n = delta^n / n! for the derivation delta(p) = p' * image_of_x. Q[x] only.
    static HDFamily from_derivation(Poly image_of_x, int order_bound);
    /// images[n-1][k] = delta_n(x^k) for 1 <= n <= images.size(), k <= degree bound.
    static HDFamily table(std::vector<std::vector<Poly>> images);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] int order_bound() const noexcept { return order_bound_; }
    /// Largest degree a Table family can act on; -1 when unbounded.
    [[nodiscard]] int degree_bound() const noexcept { return degree_bound_; }
    [[nodiscard]] const Poly& derivation_image() const noexcept { return image_; }

    /// Throws std::out_of_range past the order bound (or a Table's degree bound).
    [[nodiscard]] Poly apply(int n, const Poly& p) const;

    [[nodiscard]] std::string describe() const;

private:
    HDFamily(Kind kind, int order_bound) : kind_(kind), order_bound_(order_bound) {}

    Kind kind_;
    int order_bound_;
    int degree_bound_ = -1;
    Poly image_;
    std::vector<std::vector<Poly>> table_;
};

/// Table family with delta_n = (alpha - beta)^n / n! for n <= order, on
/// monomials up to degree_bound. At order 1 this is the inner
/// (alpha, beta)-derivation alpha - beta.
HDFamily difference_family(const Automorphism& alpha, const Automorphism& beta, int order,
                           int degree_bound);

struct ABContext {
    Automorphism alpha;
    Automorphism beta;

    [[nodiscard]] bool classical() const { return alpha.is_identity() && beta.is_identity(); }
};

struct Symbol {
    enum class Kind { AlphaPow, Beta, Delta, DeltaOne };
    Kind kind;
    int index = 0;  // exponent for AlphaPow, order for Delta; 1 for DeltaOne

    static Symbol alpha_pow(int m) { return {Kind::AlphaPow, m}; }
    static Symbol beta() { return {Kind::Beta, 1}; }
    static Symbol delta(int k) { return {Kind::Delta, k}; }
    static Symbol delta_one() { return {Kind::DeltaOne, 1}; }

    [[nodiscard]] bool is_delta() const noexcept { return kind == Kind::Delta || kind == Kind::DeltaOne; }
    friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// Where a word came from; decides which merge rule is active.
enum class WordScope { Free, FirstProduct, SecondProduct };

/// Composition of symbols, leftmost outermost: the rightmost symbol acts first.
struct OperatorWord {
    std::vector<Symbol> symbols;
    WordScope scope = WordScope::Free;

    friend bool operator==(const OperatorWord& a, const OperatorWord& b) { return a.symbols == b.symbols; }
};

/// Bracketed form, e.g. `[d1, a^2, D, b]` (`D` is the second-product delta_1).
std::string to_string(const OperatorWord& w);
OperatorWord parse_word(std::string_view text, WordScope scope = WordScope::Free);

struct MergeEvent {
    std::vector<int> indices;  // orders of the merged run, left to right
    bool mixed = false;        // a delta_1 merged with some delta_k, k > 1
};

struct Normalized {
    OperatorWord word;
    int identities_removed = 0;
    std::vector<MergeEvent> merges;
};

/// Deletes identity symbols (alpha^0, delta_0, alpha^m when alpha = id, beta
/// when beta = id) and merges each maximal run of adjacent delta symbols into
/// one delta of summed order when a merge guard holds: runs of pure delta_1
/// always merge, runs in a second-product word always merge, any run merges
/// when beta = id. Idempotent.
Normalized normalize_word(const OperatorWord& w, const ABContext& ctx);

Poly eval_word(const OperatorWord& w, const ABContext& ctx, const HDFamily& family, const Poly& p);

/// All (k_0, ..., k_i) of nonnegative integers with sum n - i, lexicographic.
std::vector<std::vector<int>> compositions(int n, int i);

/// delta_{k0} beta delta_{k1} ... beta delta_{ki}
OperatorWord first_product_word(const std::vector<int>& composition);
/// alpha^{k0} delta_1 alpha^{k1} ... delta_1 alpha^{ki}
OperatorWord second_product_word(const std::vector<int>& composition);

struct ABTerm {
    int i = 0;
    std::vector<int> composition;
    OperatorWord first;   // normalized, acts on r
    OperatorWord second;  // normalized, acts on s
    Rational coefficient;
    Poly value;
};

struct ABExpansion {
    Poly value;
    Poly leading;  // delta_n(r) alpha^n(s)
    std::vector<ABTerm> terms;
    int mixed_merges = 0;
};

/// Right-hand side of the twisted Leibniz rule for delta_n(r s), expanded term
/// by term over all compositions with coefficients i!(n-i)!/n!.
ABExpansion ab_expansion(const HDFamily& family, const ABContext& ctx, int n, const Poly& r,
                         const Poly& s);
Poly ab_leibniz_rhs(const HDFamily& family, const ABContext& ctx, int n, const Poly& r, const Poly& s);

/// sum over compositions (k_0..k_i) of n-i of the first-product word applied to r.
Poly first_product_sum(const HDFamily& family, const ABContext& ctx, int n, int i, const Poly& r);

struct SampleSpec {
    std::uint64_t seed = 1729;
    int degree_bound = 6;
    int coeff_bound = 9;
    int count = 100;
};

/// Monomial pairs (x^a, x^b), a, b <= 2, followed by random pairs up to spec.count total.
std::vector<std::pair<Poly, Poly>> sample_pairs(const SampleSpec& spec,
                                                CoeffDomain domain = CoeffDomain::Rational);

/// delta_n(r s) == ab_leibniz_rhs for all n <= max_order on sampled (r, s).
CheckReport verify_ab_hd(const HDFamily& family, const ABContext& ctx, int max_order,
                         const SampleSpec& spec, Expectation expect = Expectation::Pass);

/// Classical Leibniz law delta_n(r s) = sum delta_i(r) delta_{n-i}(s).
CheckReport verify_classical_hd(const HDFamily& family, int max_order, const SampleSpec& spec,
                                CoeffDomain domain = CoeffDomain::Rational,
                                Expectation expect = Expectation::Pass);

/// The expansion at n = 1 and n = 2 against the hand-expanded forms
///   d1(r) a(s) + b(r) d1(s)
///   d2(r) a^2(s) + 1/2 b(d1(r)) d1(a(s)) + 1/2 d1(b(r)) a(d1(s)) + b^2(r) d2(s)
/// with a fresh random (alpha, beta) for every sampled (r, s).
CheckReport printed_forms_check(const HDFamily& family, const SampleSpec& spec);

/// delta_n(p) agree for both families, n <= max_order, on sampled p.
CheckReport families_agree_check(const HDFamily& a, const HDFamily& b, int max_order, const SampleSpec& spec,
                                 CoeffDomain domain = CoeffDomain::Rational);

/// With alpha = beta = id the twisted expansion equals the classical sum, and
/// (i!(n-i)!/n!) * #compositions(n, i) == 1 for all i <= n <= coefficient_bound.
CheckReport collapse_check(const HDFamily& family, int max_order, const SampleSpec& spec,
                           int coefficient_bound = 10);

}  // namespace hdq
