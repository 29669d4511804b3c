#include "hdq/quotient.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdq {

namespace {

Poly inverse_mod(const Poly& a, const Poly& m)
{
    Poly r0 = m;
    Poly r1 = divmod(a, m).remainder;
    Poly s0;
    Poly s1 = Poly::one();
    while (!r1.is_zero()) {
        const auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
    }
    if (!r0.is_constant()) {
        throw std::domain_error("not invertible modulo " + to_string(m));
    }
    return divmod(s0 * (1 / r0.leading()), m).remainder;
}

Poly base_power(const Poly& base, int k) { return base.pow(static_cast<unsigned>(k)); }

}  // namespace

// ---------------------------------------------------------------------------
// FgModule

FgModule::FgModule(PolyMatrix presentation)
    : presentation_(std::move(presentation)), snf_(smith_normal_form(presentation_))
{
    const std::size_t g = presentation_.cols();
    if (g == 0) {
        throw std::invalid_argument("module needs at least one generator");
    }
    const PolyVector diag = snf_.diagonal();
    factors_.assign(g, Poly());
    for (std::size_t j = 0; j < diag.size(); ++j) {
        if (!diag[j].is_zero()) {
            factors_[j] = diag[j].is_constant() ? Poly::one() : diag[j];
        }
    }
}

FgModule FgModule::free(std::size_t rank) { return FgModule(PolyMatrix(0, rank)); }

FgModule FgModule::cyclic(const Poly& d) { return FgModule(PolyMatrix({{d}})); }

FgModule FgModule::parse(std::string_view text)
{
    PolyMatrix m = parse_matrix(text);
    if (m.rows() == 0) {
        throw std::invalid_argument("module file has no rows");
    }
    return FgModule(std::move(m));
}

FgModule FgModule::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read module file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

PolyVector FgModule::snf_coordinates(const PolyVector& v) const
{
    if (v.size() != generators()) {
        throw std::invalid_argument("element has the wrong number of coordinates");
    }
    PolyVector y = v * snf_.V;
    for (std::size_t j = 0; j < y.size(); ++j) {
        if (!factors_[j].is_zero()) {
            y[j] = divmod(y[j], factors_[j]).remainder;
        }
    }
    return y;
}

PolyVector FgModule::from_snf(const PolyVector& y) const { return y * snf_.V_inverse; }

PolyVector FgModule::generator(std::size_t i) const
{
    PolyVector v = zero();
    v.at(i) = Poly::one();
    return v;
}

bool FgModule::is_zero(const PolyVector& v) const
{
    const PolyVector y = snf_coordinates(v);
    return std::all_of(y.begin(), y.end(), [](const Poly& p) { return p.is_zero(); });
}

bool FgModule::equal(const PolyVector& a, const PolyVector& b) const { return is_zero(sub(a, b)); }

PolyVector FgModule::reduce(const PolyVector& v) const { return from_snf(snf_coordinates(v)); }

PolyVector add(const PolyVector& a, const PolyVector& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    PolyVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

PolyVector sub(const PolyVector& a, const PolyVector& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    PolyVector out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] -= b[i];
    }
    return out;
}

PolyVector scale(const PolyVector& v, const Poly& p)
{
    PolyVector out = v;
    for (auto& e : out) {
        e *= p;
    }
    return out;
}

std::string to_string(const PolyVector& v)
{
    if (v.size() == 1) {
        return to_string(v.front());
    }
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        s += (i ? ", " : "") + to_string(v[i]);
    }
    return s + "]";
}

// ---------------------------------------------------------------------------
// Torsion

TorsionSubmodule::TorsionSubmodule(const FgModule& module, const RadicalPowerFilter& filter) : module_(module)
{
    const Poly& base = filter.base();
    for (std::size_t j = 0; j < module.generators(); ++j) {
        const Poly& d = module.invariant_factors()[j];
        if (d.is_zero()) {
            components_.push_back({});
            continue;
        }
        Poly b = Poly::one();
        Poly c = d;
        for (Poly g = gcd(c, base); !g.is_constant(); g = gcd(c, base)) {
            b *= g;
            c = exact_quotient(c, g);
        }
        if (!b.is_constant()) {
            PolyVector y(module.generators());
            y[j] = c;
            generators_.push_back(module.from_snf(y));
        }
        components_.push_back({d, b, c});
    }
}

bool TorsionSubmodule::contains(const PolyVector& v) const
{
    const PolyVector y = module_.snf_coordinates(v);
    for (std::size_t j = 0; j < y.size(); ++j) {
        const auto& comp = components_[j];
        if (comp.d.is_zero() ? !y[j].is_zero() : !divides(comp.c, y[j])) {
            return false;
        }
    }
    return true;
}

Poly TorsionSubmodule::exponent() const
{
    Poly e = Poly::one();
    for (const auto& comp : components_) {
        if (!comp.d.is_zero()) {
            e *= comp.b;
        }
    }
    return e;
}

TorsionSubmodule torsion_submodule(const FgModule& module, const RadicalPowerFilter& filter)
{
    return TorsionSubmodule(module, filter);
}

// ---------------------------------------------------------------------------
// LocalizedModule

LocalizedModule::LocalizedModule(FgModule module, RadicalPowerFilter filter)
    : module_(std::move(module)), filter_(std::move(filter)), torsion_(module_, filter_)
{}

Fraction LocalizedModule::make(PolyVector num, int k) const
{
    if (k < 0) {
        throw std::invalid_argument("negative denominator exponent");
    }
    if (num.size() != module_.generators()) {
        throw std::invalid_argument("numerator has the wrong number of coordinates");
    }
    return Fraction{std::move(num), k};
}

bool LocalizedModule::is_zero(const Fraction& f) const { return torsion_.contains(f.num); }

bool LocalizedModule::equal(const Fraction& a, const Fraction& b) const
{
    // a / s = b / t  iff  a t - b s is killed by a base power, i.e. is torsion.
    return torsion_.contains(::hdq::sub(scale(a.num, base_power(base(), b.k)), scale(b.num, base_power(base(), a.k))));
}

Fraction LocalizedModule::add(const Fraction& a, const Fraction& b) const
{
    const int k = std::max(a.k, b.k);
    return Fraction{::hdq::add(scale(a.num, base_power(base(), k - a.k)), scale(b.num, base_power(base(), k - b.k))),
                    k};
}

Fraction LocalizedModule::sub(const Fraction& a, const Fraction& b) const
{
    return add(a, Fraction{scale(b.num, -Poly::one()), b.k});
}

Fraction LocalizedModule::times(const Fraction& f, const Poly& p, int j) const
{
    return Fraction{scale(f.num, p), f.k + j};
}

Fraction LocalizedModule::divide_by_base(const Fraction& f, int j) const { return Fraction{f.num, f.k + j}; }

Fraction LocalizedModule::canonical(const Fraction& f) const
{
    PolyVector y = module_.snf_coordinates(f.num);
    const auto& comps = torsion_.components();

    // Cancel base from the free coordinates as long as it divides all of them.
    int cancel = 0;
    bool any_free = false;
    for (const auto& comp : comps) {
        any_free = any_free || comp.d.is_zero();
    }
    if (!any_free) {
        cancel = f.k;
    }
    while (cancel < f.k) {
        bool divisible = true;
        for (std::size_t j = 0; j < y.size() && divisible; ++j) {
            divisible = !comps[j].d.is_zero() || divides(base(), y[j]);
        }
        if (!divisible) {
            break;
        }
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (comps[j].d.is_zero()) {
                y[j] = exact_quotient(y[j], base());
            }
        }
        ++cancel;
    }
    // On Q[x]/(c_j) the base is a unit, so those coordinates take the rest.
    for (std::size_t j = 0; j < y.size(); ++j) {
        const auto& comp = comps[j];
        if (comp.d.is_zero()) {
            continue;
        }
        if (comp.c.is_constant()) {
            y[j] = Poly();
            continue;
        }
        y[j] = divmod(y[j], comp.c).remainder;
        if (cancel > 0 && !y[j].is_zero()) {
            const Poly inv = inverse_mod(base(), comp.c);
            y[j] = divmod(y[j] * inv.pow(static_cast<unsigned>(cancel)), comp.c).remainder;
        }
    }
    return Fraction{module_.from_snf(y), f.k - cancel};
}

std::string LocalizedModule::to_string(const Fraction& f) const
{
    const Fraction c = canonical(f);
    const std::string num = ::hdq::to_string(c.num);
    if (c.k == 0) {
        return num;
    }
    const std::string den = ::hdq::to_string(base_power(base(), c.k));
    return (c.num.size() == 1 ? "(" + num + ")" : num) + "/(" + den + ")";
}

int LocalizedModule::free_rank() const
{
    return static_cast<int>(std::count_if(torsion_.components().begin(), torsion_.components().end(),
                                          [](const TorsionComponent& c) { return c.d.is_zero(); }));
}

PolyVector LocalizedModule::finite_invariants() const
{
    PolyVector out;
    for (const auto& comp : torsion_.components()) {
        if (!comp.d.is_zero() && !comp.c.is_constant()) {
            out.push_back(comp.c);
        }
    }
    return out;
}

Poly LocalizedModule::annihilator() const
{
    if (free_rank() > 0) {
        return Poly();
    }
    Poly a = Poly::one();
    for (const auto& c : finite_invariants()) {
        a = lcm(a, c);
    }
    return a;
}

int LocalizedModule::q_dimension() const
{
    if (free_rank() > 0) {
        return -1;
    }
    int dim = 0;
    for (const auto& c : finite_invariants()) {
        dim += c.degree();
    }
    return dim;
}

bool LocalizedModule::is_zero_module() const { return free_rank() == 0 && finite_invariants().empty(); }

LocalizedModule module_of_quotients(const FgModule& module, const RadicalPowerFilter& filter)
{
    return LocalizedModule(module, filter);
}

// ---------------------------------------------------------------------------
// Module higher derivations

ModuleHDFamily::ModuleHDFamily(HDFamily ring, FgModule module, std::vector<std::vector<PolyVector>> images)
    : ring_(std::move(ring)), module_(std::move(module)), images_(std::move(images))
{
    for (const auto& level : images_) {
        if (level.size() != module_.generators()) {
            throw std::invalid_argument("one image per generator is required at every order");
        }
        for (const auto& v : level) {
            if (v.size() != module_.generators()) {
                throw std::invalid_argument("generator image has the wrong number of coordinates");
            }
        }
    }
    order_bound_ = std::min(ring_.order_bound(), static_cast<int>(images_.size()));
}

ModuleHDFamily ModuleHDFamily::induced(HDFamily ring, FgModule module)
{
    ModuleHDFamily f(std::move(ring), std::move(module), {});
    f.induced_ = true;
    f.order_bound_ = f.ring_.order_bound();
    return f;
}

PolyVector ModuleHDFamily::apply(int n, const PolyVector& v) const
{
    if (n < 0 || n > order_bound_) {
        throw std::out_of_range("module family applied past its order bound");
    }
    if (n == 0) {
        return v;
    }
    PolyVector out(module_.generators());
    for (std::size_t g = 0; g < v.size(); ++g) {
        if (v[g].is_zero()) {
            continue;
        }
        out[g] += ring_.apply(n, v[g]);
        if (induced_) {
            continue;
        }
        for (int i = 1; i <= n; ++i) {
            const Poly dr = ring_.apply(n - i, v[g]);
            if (!dr.is_zero()) {
                out = ::hdq::add(out, scale(images_[static_cast<std::size_t>(i - 1)][g], dr));
            }
        }
    }
    return module_.reduce(out);
}

std::string ModuleHDFamily::describe() const
{
    return (induced_ ? "coordinate-wise " : "generator-image ") + ring_.describe();
}

namespace {

std::optional<json> relation_violation(const ModuleHDFamily& family, int max_order)
{
    const PolyMatrix& rel = family.module().presentation();
    for (std::size_t r = 0; r < rel.rows(); ++r) {
        const PolyVector row = rel.row(r);
        for (int i = 1; i <= max_order; ++i) {
            const PolyVector image = family.apply(i, row);
            if (!family.module().is_zero(image)) {
                return json{{"relation", to_string(row)}, {"i", i}, {"image", to_string(image)}};
            }
        }
    }
    return std::nullopt;
}

void require_well_defined(const ModuleHDFamily& family, int n)
{
    if (n < 0 || n > family.order_bound()) {
        throw std::out_of_range("order " + std::to_string(n) + " outside the module family's bound");
    }
    if (const auto w = relation_violation(family, n)) {
        throw std::invalid_argument("module family does not respect the relations: " + w->dump());
    }
}

PolyVector random_vector(Sampler& sampler, std::size_t g)
{
    PolyVector v;
    for (std::size_t i = 0; i < g; ++i) {
        v.push_back(sampler.poly());
    }
    return v;
}

}  // namespace

CheckReport module_hd_check(const ModuleHDFamily& family, int max_order, const SampleSpec& spec)
{
    CheckReport rep("module-hd", "module-higher-derivation-law");
    rep.order = max_order;
    rep.details["family"] = family.describe();
    if (const auto w = relation_violation(family, max_order)) {
        rep.record_failure(*w);
        return rep;
    }
    const FgModule& m = family.module();
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        const PolyVector v = random_vector(sampler, m.generators());
        const Poly r = sampler.poly();
        for (int n = 0; n <= max_order; ++n) {
            const PolyVector lhs = family.apply(n, scale(v, r));
            PolyVector rhs = m.zero();
            for (int i = 0; i <= n; ++i) {
                rhs = add(rhs, scale(family.apply(i, v), family.ring().apply(n - i, r)));
            }
            if (!m.equal(lhs, rhs)) {
                rep.record_failure({{"n", n}, {"m", to_string(v)}, {"r", to_string(r)}});
            }
        }
        ++rep.samples;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Extensions

ExtendedHD::ExtendedHD(ModuleHDFamily family, LocalizedModule target, int order_bound)
    : family_(std::move(family)), target_(std::move(target)), order_bound_(order_bound)
{}

std::vector<Fraction> ExtendedHD::apply_upto(int n, const Fraction& f) const
{
    if (n < 0 || n > order_bound_) {
        throw std::out_of_range("extended family applied past its order bound");
    }
    const Poly s = base_power(target_.base(), f.k);
    std::vector<Fraction> out{target_.canonical(f)};
    for (int m = 1; m <= n; ++m) {
        // d_m(v) = sum_{i <= m} d_i(v / s) delta_{m-i}(s), solved for the i = m term.
        Fraction acc = target_.q(family_.apply(m, f.num));
        for (int i = 0; i < m; ++i) {
            const Poly ds = family_.ring().apply(m - i, s);
            if (!ds.is_zero()) {
                acc = target_.sub(acc, target_.times(out[static_cast<std::size_t>(i)], ds));
            }
        }
        out.push_back(target_.canonical(target_.divide_by_base(acc, f.k)));
    }
    return out;
}

Fraction ExtendedHD::apply(int n, const Fraction& f) const { return apply_upto(n, f).back(); }

ExtendedHD extend_hd(const ModuleHDFamily& family, const LocalizedModule& target, int n)
{
    require_well_defined(family, n);
    return ExtendedHD(family, target, n);
}

ExtendedDerivation::ExtendedDerivation(ModuleHDFamily family, LocalizedModule target)
    : family_(std::move(family)), target_(std::move(target))
{}

Fraction ExtendedDerivation::apply(const Fraction& f) const
{
    const Poly bk = base_power(target_.base(), f.k);
    const PolyVector num = sub(scale(family_.apply(1, f.num), bk), scale(f.num, family_.ring().apply(1, bk)));
    return target_.canonical(Fraction{num, 2 * f.k});
}

ExtendedDerivation extend_derivation(const ModuleHDFamily& family, const LocalizedModule& target)
{
    require_well_defined(family, 1);
    return ExtendedDerivation(family, target);
}

Q12Map::Q12Map(const LocalizedModule& source, const LocalizedModule& target)
{
    if (!(source.module().presentation() == target.module().presentation())) {
        throw std::invalid_argument("q12 needs both localizations of the same module");
    }
    if (!filter_subset(source.filter(), target.filter())) {
        throw std::invalid_argument("q12 needs F1 ⊆ F2, but (" + to_string(source.base()) +
                                    ") is not a member of the larger filter");
    }
    m_ = std::max(1, source.base().degree());
    cofactor_ = exact_quotient(base_power(target.base(), m_), source.base());
}

Fraction Q12Map::operator()(const Fraction& f) const
{
    return Fraction{scale(f.num, base_power(cofactor_, f.k)), m_ * f.k};
}

// ---------------------------------------------------------------------------
// Checks

std::vector<Fraction> sample_fractions(const LocalizedModule& target, const SampleSpec& spec)
{
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    std::vector<Fraction> out;
    for (int t = 0; t < spec.count; ++t) {
        PolyVector v = random_vector(sampler, target.module().generators());
        out.push_back(target.make(std::move(v), sampler.uniform(0, 3)));
    }
    return out;
}

namespace {

json shape_json(const LocalizedModule& target)
{
    json comps = json::array();
    for (const auto& c : target.torsion().components()) {
        if (c.d.is_zero()) {
            comps.push_back({{"d", "0"}});
        } else {
            comps.push_back({{"d", to_string(c.d)}, {"b", to_string(c.b)}, {"c", to_string(c.c)}});
        }
    }
    json finite = json::array();
    for (const auto& c : target.finite_invariants()) {
        finite.push_back(to_string(c));
    }
    return json{{"base", to_string(target.base())},
                {"generators", target.module().generators()},
                {"torsion_components", comps},
                {"free_rank", target.free_rank()},
                {"finite_invariants", finite},
                {"annihilator", to_string(target.annihilator())},
                {"q_dimension", target.q_dimension()}};
}

}  // namespace

CheckReport localization_check(const LocalizedModule& target, const SampleSpec& spec)
{
    CheckReport rep("localize", "kernel-of-q-is-torsion");
    rep.details = shape_json(target);
    const FgModule& m = target.module();
    const TorsionSubmodule& tor = target.torsion();
    const Poly killer = tor.exponent();
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);

    for (int t = 0; t < spec.count; ++t) {
        PolyVector v = m.zero();
        if (t % 2 == 0 && !tor.is_zero()) {
            for (const auto& g : tor.generators()) {
                v = add(v, scale(g, sampler.poly()));
            }
        } else {
            v = random_vector(sampler, m.generators());
        }
        ++rep.samples;
        const bool in_t = tor.contains(v);
        const bool killed = m.is_zero(scale(v, killer));
        const bool q_zero = target.is_zero(target.q(v));
        if (in_t != killed || in_t != q_zero) {
            rep.record_failure({{"m", to_string(v)}, {"in_t", in_t}, {"killed_by_base_power", killed},
                                {"q_zero", q_zero}});
        }
        // M / t(M) has no torsion left.
        if (!in_t && tor.contains(scale(v, target.base().pow(3)))) {
            rep.record_failure({{"check", "quotient not torsion-free"}, {"m", to_string(v)}});
        }
    }
    return rep;
}

CheckReport extension_check(const ModuleHDFamily& family, const RadicalPowerFilter& filter, int max_order,
                            const SampleSpec& spec)
{
    CheckReport rep("extend", "higher-derivation-extends-to-module-of-quotients");
    rep.order = max_order;
    rep.details["family"] = family.describe();
    rep.details["base"] = to_string(filter.base());
    if (const auto w = relation_violation(family, max_order)) {
        rep.record_failure(*w);
        return rep;
    }

    const LocalizedModule target(family.module(), filter);
    const ExtendedHD ext(family, target, max_order);
    const LocalizedModule ring_target(FgModule::free(1), filter);
    const ExtendedHD ring_ext(ModuleHDFamily::induced(family.ring(), FgModule::free(1)), ring_target, max_order);

    SampleSpec ring_spec = spec;
    ring_spec.seed = spec.seed + 1;
    ring_spec.degree_bound = std::min(spec.degree_bound, 3);
    const auto elements = sample_fractions(target, spec);
    const auto ring_elements = sample_fractions(ring_target, ring_spec);

    std::size_t law = 0;
    std::size_t uniqueness = 0;
    for (std::size_t t = 0; t < elements.size(); ++t) {
        const Fraction& f = elements[t];
        const Fraction& rho = ring_elements[t];
        const auto ds = ext.apply_upto(max_order, f);
        auto fail = [&](const char* what, int n) {
            rep.record_failure({{"check", what},
                                {"n", n},
                                {"element", target.to_string(f)},
                                {"ring", ring_target.to_string(rho)}});
        };

        if (max_order >= 1) {
            ++uniqueness;
            const ExtendedDerivation der(family, target);
            if (!target.equal(ds[1], der.apply(f))) {
                fail("quotient rule", 1);
            }
        }

        const auto natural = ext.apply_upto(max_order, target.q(f.num));
        const auto unreduced = ext.apply_upto(max_order, Fraction{scale(f.num, filter.base()), f.k + 1});
        const auto lhs = ext.apply_upto(max_order, target.times(f, rho.num[0], rho.k));
        const auto dr = ring_ext.apply_upto(max_order, rho);
        for (int n = 0; n <= max_order; ++n) {
            const auto un = static_cast<std::size_t>(n);
            if (!target.equal(natural[un], target.q(family.apply(n, f.num)))) {
                fail("naturality", n);
            }
            if (!target.equal(unreduced[un], ds[un])) {
                fail("representative", n);
            }
            Fraction rhs = target.make(family.module().zero(), 0);
            for (int i = 0; i <= n; ++i) {
                const Fraction& r = dr[static_cast<std::size_t>(n - i)];
                rhs = target.add(rhs, target.times(ds[static_cast<std::size_t>(i)], r.num[0], r.k));
            }
            ++law;
            if (!target.equal(lhs[un], rhs)) {
                fail("law over localized ring", n);
            }
        }
        ++rep.samples;
    }
    rep.details["law_instances"] = law;
    rep.details["uniqueness_instances"] = uniqueness;
    return rep;
}

CheckReport agreement_check(const ModuleHDFamily& family, const RadicalPowerFilter& f1,
                            const RadicalPowerFilter& f2, int max_order, const SampleSpec& spec)
{
    CheckReport rep("agreement", "extensions-agree-along-nested-filters");
    rep.order = max_order;
    rep.details["base1"] = to_string(f1.base());
    rep.details["base2"] = to_string(f2.base());
    rep.details["family"] = family.describe();

    const LocalizedModule l1(family.module(), f1);
    const LocalizedModule l2(family.module(), f2);
    const Q12Map q12(l1, l2);
    rep.details["cofactor"] = to_string(q12.cofactor());
    const ExtendedHD e1 = extend_hd(family, l1, max_order);
    const ExtendedHD e2 = extend_hd(family, l2, max_order);

    Sampler sampler(spec.seed + 2, spec.degree_bound, spec.coeff_bound);
    std::size_t squares = 0;
    for (const Fraction& f : sample_fractions(l1, spec)) {
        const PolyVector m = random_vector(sampler, family.module().generators());
        if (!l2.equal(q12(l1.q(m)), l2.q(m))) {
            rep.record_failure({{"square", "q12 q1 = q2"}, {"m", to_string(m)}});
        }
        const auto a = e1.apply_upto(max_order, f);
        const auto b = e2.apply_upto(max_order, q12(f));
        for (int n = 0; n <= max_order; ++n) {
            ++squares;
            const auto un = static_cast<std::size_t>(n);
            if (!l2.equal(q12(a[un]), b[un])) {
                rep.record_failure({{"square", "d_n q12 = q12 d_n"},
                                    {"n", n},
                                    {"element", l1.to_string(f)},
                                    {"via_F1", l2.to_string(q12(a[un]))},
                                    {"via_F2", l2.to_string(b[un])}});
            }
        }
        ++rep.samples;
    }
    rep.details["square_instances"] = squares;
    return rep;
}

CheckReport torsion_preservation_check(const ModuleHDFamily& family, const RadicalPowerFilter& filter,
                                       int max_order, const SampleSpec& spec)
{
    CheckReport rep("torsion-preservation", "higher-derivations-preserve-torsion");
    rep.order = max_order;
    rep.details["base"] = to_string(filter.base());
    rep.details["family"] = family.describe();
    if (const auto w = relation_violation(family, max_order)) {
        rep.record_failure(*w);
        return rep;
    }
    const TorsionSubmodule tor(family.module(), filter);
    if (tor.is_zero()) {
        rep.notes.emplace_back("t(M) = 0, nothing to preserve");
        return rep;
    }
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        PolyVector v = family.module().zero();
        for (const auto& g : tor.generators()) {
            v = add(v, scale(g, sampler.poly()));
        }
        for (int n = 0; n <= max_order; ++n) {
            const PolyVector image = family.apply(n, v);
            if (!tor.contains(image)) {
                rep.record_failure({{"n", n}, {"m", to_string(v)}, {"image", to_string(image)}});
            }
        }
        ++rep.samples;
    }
    return rep;
}

}  // namespace hdq
