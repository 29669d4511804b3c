#include "hdq/suites.hpp"

#include "hdq/counterexample.hpp"
#include "hdq/filters.hpp"
#include "hdq/operators.hpp"
#include "hdq/quotient.hpp"
#include "hdq/symmetric.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hdq {

namespace {

Poly q(const std::string& text) { return parse_poly(text, CoeffDomain::Rational); }

const std::vector<std::string> kFilterBases{"x", "x^2 + 1", "x^2 - x"};

SampleSpec sample_spec(const SuiteConfig& c)
{
    return SampleSpec{c.seed, c.degree, c.coeff, c.samples};
}

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) { result_.name = std::move(name); }

    void add(const std::function<CheckReport()>& run)
    {
        const auto start = std::chrono::steady_clock::now();
        CheckReport rep = run();
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        result_.checks.push_back({std::move(rep), elapsed.count()});
    }

    void add_expected_fail(const std::function<CheckReport()>& run)
    {
        add([&] {
            CheckReport rep = run();
            rep.expect = Expectation::Fail;
            return rep;
        });
    }

    SuiteResult take() { return std::move(result_); }

private:
    SuiteResult result_;
};

AlgebraHD identity_first_order(const FinDimAlgebra& alg)
{
    RatMatrix id(alg.dim(), Vec(alg.dim()));
    for (std::size_t i = 0; i < alg.dim(); ++i) {
        id[i][i] = 1;
    }
    return AlgebraHD(alg, {id}, "delta_1 = id");
}

// An additive family that is not a higher derivation: x^k -> x^(k-1).
HDFamily shift_down_family(int degree_bound)
{
    std::vector<Poly> images{Poly()};
    for (int k = 1; k <= degree_bound; ++k) {
        images.push_back(Poly::x(CoeffDomain::Rational).pow(static_cast<unsigned>(k - 1)));
    }
    return HDFamily::table({images});
}

HDFamily selected_family(const SuiteConfig& c, int order)
{
    if (c.family == "derivation") {
        return HDFamily::from_derivation(q(c.derivation), order);
    }
    return HDFamily::hasse(order);
}

SuiteResult suite_hd(const SuiteConfig& c)
{
    SuiteBuilder b("hd");
    const SampleSpec spec = sample_spec(c);
    b.add([&] { return verify_classical_hd(HDFamily::hasse(c.order), c.order, spec, CoeffDomain::Integer); });
    b.add([&] {
        return families_agree_check(HDFamily::from_derivation(q("1"), c.order), HDFamily::hasse(c.order), c.order,
                                    spec);
    });
    b.add([&] { return verify_classical_hd(HDFamily::from_derivation(q("x^2 - 3"), c.order), c.order, spec); });
    b.add([&] {
        SampleSpec low = spec;
        low.degree_bound = std::min(c.degree, 3);
        return verify_classical_hd(shift_down_family(2 * low.degree_bound), 1, low, CoeffDomain::Rational,
                                   Expectation::Fail);
    });
    return b.take();
}

SuiteResult suite_ab(const SuiteConfig& c)
{
    SuiteBuilder b("ab");
    const SampleSpec spec = sample_spec(c);
    b.add([&] { return printed_forms_check(HDFamily::from_derivation(q("x^2 - 3"), 2), spec); });
    b.add([&] { return verify_ab_hd(HDFamily::hasse(c.order), ABContext{}, c.order, spec); });

    const ABContext twisted{Automorphism(2, 1), Automorphism(-1, 3)};
    b.add([&] { return verify_ab_hd(difference_family(twisted.alpha, twisted.beta, 1, 2 * c.degree), twisted, 1, spec); });

    // (alpha - id)^n / n! satisfies the twisted law through order 2 and breaks at 3.
    const ABContext one_sided{Automorphism(2, 1), Automorphism::identity()};
    const HDFamily difference = difference_family(one_sided.alpha, one_sided.beta, 3, 2 * c.degree);
    b.add([&] { return verify_ab_hd(difference, one_sided, 2, spec); });
    b.add([&] { return verify_ab_hd(difference, one_sided, 3, spec, Expectation::Fail); });

    b.add([&] {
        return verify_ab_hd(HDFamily::hasse(1), ABContext{Automorphism(2, 0), Automorphism::identity()}, 1, spec,
                            Expectation::Fail);
    });
    return b.take();
}

SuiteResult suite_collapse(const SuiteConfig& c)
{
    SuiteBuilder b("collapse");
    b.add([&] { return collapse_check(HDFamily::hasse(c.order), c.order, sample_spec(c), 10); });
    return b.take();
}

std::vector<std::string> filter_bases(const SuiteConfig& c)
{
    std::vector<std::string> bases = kFilterBases;
    const Poly own = q(c.base);
    if (std::none_of(bases.begin(), bases.end(), [&](const std::string& t) { return q(t) == own; })) {
        bases.push_back(c.base);
    }
    return bases;
}

SuiteResult suite_filter(const SuiteConfig& c)
{
    SuiteBuilder b("filter");
    for (const auto& base : filter_bases(c)) {
        b.add([&] { return gabriel_axiom_check(RadicalPowerFilter(q(base)), sample_spec(c)); });
    }
    return b.take();
}

SuiteResult suite_invariance(const SuiteConfig& c)
{
    SuiteBuilder b("invariance");
    const SampleSpec spec = sample_spec(c);
    if (c.k) {
        const RadicalPowerFilter filter(q(c.base));
        const int n = *c.n;
        const HDFamily family = selected_family(c, std::max(n, 1));
        const PrincipalIdeal target = filter.power_ideal(*c.k);
        const PrincipalIdeal witness = invariance_witness(filter, family, target, n);
        b.add([&] { return verify_invariance(filter, family, target, n, witness, spec); });
        if (n >= 1) {
            b.add([&] {
                return verify_invariance(filter, family, target, n, filter.power_ideal(*c.k + n - 1), spec,
                                         Expectation::Fail);
            });
        }
        return b.take();
    }
    for (const auto& base : filter_bases(c)) {
        const RadicalPowerFilter filter(q(base));
        const HDFamily family = selected_family(c, c.order);
        b.add([&] { return invariance_grid_check(filter, family, c.order, c.order, spec); });
        b.add([&] {
            return verify_invariance(filter, family, filter.power_ideal(2), c.order,
                                     filter.power_ideal(c.order + 1), spec, Expectation::Fail);
        });
    }
    return b.take();
}

SuiteResult suite_trace(const SuiteConfig& c)
{
    SuiteBuilder b("trace");
    const SampleSpec spec = sample_spec(c);
    for (const auto& base : filter_bases(c)) {
        const RadicalPowerFilter filter(q(base));
        for (int n = 1; n <= c.order; ++n) {
            b.add([&] {
                return invariance_trace(filter, HDFamily::hasse(c.order), ABContext{}, filter.power_ideal(2), n, spec);
            });
        }
    }
    // alpha = 2x fixes (x); (alpha - id) is an (alpha, id)-derivation.
    const RadicalPowerFilter fx(q("x"));
    const ABContext twisted{Automorphism(2, 0), Automorphism::identity()};
    const HDFamily sigma = difference_family(twisted.alpha, twisted.beta, 1, 8 * c.degree + 8);
    b.add([&] { return invariance_trace(fx, sigma, twisted, fx.power_ideal(3), 1, spec); });
    return b.take();
}

std::vector<FgModule> default_modules()
{
    return {FgModule::free(1), FgModule::cyclic(q("x^2")), FgModule::cyclic(q("x - 1")),
            FgModule::cyclic(q("x^3 - x^2"))};
}

SuiteResult suite_localize(const SuiteConfig& c)
{
    SuiteBuilder b("localize");
    const RadicalPowerFilter filter(q(c.base));
    const std::vector<FgModule> modules =
        c.module_file.empty() ? default_modules() : std::vector<FgModule>{FgModule::load(c.module_file)};
    for (const auto& m : modules) {
        b.add([&] { return localization_check(module_of_quotients(m, filter), sample_spec(c)); });
    }
    return b.take();
}

// Runs the relation check first; the extension is only defined when it passes.
void add_extension(SuiteBuilder& b, const ModuleHDFamily& family, const RadicalPowerFilter& filter, int order,
                   const SampleSpec& spec)
{
    if (family.module().presentation().rows() > 0) {
        bool well_defined = true;
        b.add([&] {
            CheckReport rep = module_hd_check(family, order, spec);
            well_defined = rep.passed;
            return rep;
        });
        if (!well_defined) {
            return;
        }
        b.add([&] { return torsion_preservation_check(family, filter, order, spec); });
    }
    b.add([&] { return extension_check(family, filter, order, spec); });
}

SuiteResult suite_extend(const SuiteConfig& c)
{
    SuiteBuilder b("extend");
    const SampleSpec spec = sample_spec(c);
    const RadicalPowerFilter filter(q(c.base));
    if (!c.module_file.empty()) {
        const FgModule m = FgModule::load(c.module_file);
        add_extension(b, ModuleHDFamily::induced(HDFamily::from_derivation(q(c.derivation), c.order), m), filter,
                      c.order, spec);
        return b.take();
    }
    add_extension(b, ModuleHDFamily::induced(HDFamily::hasse(c.order), FgModule::free(1)), filter, c.order, spec);
    add_extension(b, ModuleHDFamily::induced(HDFamily::hasse(c.order), FgModule::free(2)), filter, c.order, spec);
    add_extension(b,
                  ModuleHDFamily::induced(HDFamily::from_derivation(q("x^2 - x"), c.order),
                                          FgModule::cyclic(q("x^3 - x^2"))),
                  filter, c.order, spec);
    // d/dx does not preserve the relation x^2.
    b.add_expected_fail([&] {
        return module_hd_check(ModuleHDFamily::induced(HDFamily::hasse(c.order), FgModule::cyclic(q("x^2"))),
                               c.order, spec);
    });
    return b.take();
}

SuiteResult suite_agreement(const SuiteConfig& c)
{
    SuiteBuilder b("agreement");
    const SampleSpec spec = sample_spec(c);
    const RadicalPowerFilter f1(q(c.base));
    const RadicalPowerFilter f2(q(c.base2));
    if (!c.module_file.empty()) {
        const FgModule m = FgModule::load(c.module_file);
        const auto family = ModuleHDFamily::induced(HDFamily::from_derivation(q(c.derivation), c.order), m);
        bool well_defined = true;
        if (m.presentation().rows() > 0) {
            b.add([&] {
                CheckReport rep = module_hd_check(family, c.order, spec);
                well_defined = rep.passed;
                return rep;
            });
        }
        if (well_defined) {
            b.add([&] { return agreement_check(family, f1, f2, c.order, spec); });
        }
        return b.take();
    }
    b.add([&] {
        return agreement_check(ModuleHDFamily::induced(HDFamily::hasse(c.order), FgModule::free(1)), f1, f2, c.order,
                               spec);
    });
    b.add([&] {
        return agreement_check(ModuleHDFamily::induced(HDFamily::from_derivation(q("x^2 - x"), c.order),
                                                       FgModule::cyclic(q("x - 1"))),
                               f1, f2, c.order, spec);
    });
    return b.take();
}

void add_algebra(SuiteBuilder& b, const FinDimAlgebra& alg, std::size_t inner_index, const SuiteConfig& c)
{
    const SampleSpec spec = sample_spec(c);
    const AlgebraHD inner = AlgebraHD::inner(alg, alg.basis(inner_index), c.order);
    b.add([&] { return env_axioms_check(alg); });
    b.add([&] { return algebra_hd_check(alg, inner, c.order); });
    b.add([&] { return verify_bar_hd(alg, inner, c.order, spec); });
    b.add([&] { return bimodule_correspondence_check(alg, inner, c.order); });
    b.add([&] { return verify_bar_hd(alg, AlgebraHD::trivial(alg, c.order), c.order, spec); });
    const AlgebraHD bad = identity_first_order(alg);
    b.add([&] { return verify_bar_hd(alg, bad, 1, spec, Expectation::Fail); });
    b.add([&] { return bimodule_correspondence_check(alg, bad, 1, Expectation::Fail); });
}

SuiteResult suite_symmetric(const SuiteConfig& c)
{
    SuiteBuilder b("symmetric");
    if (!c.algebra_file.empty()) {
        const FinDimAlgebra alg = FinDimAlgebra::load(c.algebra_file);
        add_algebra(b, alg, static_cast<std::size_t>(c.inner), c);
        return b.take();
    }
    add_algebra(b, FinDimAlgebra::upper_triangular_2x2(), 0, c);
    add_algebra(b, FinDimAlgebra::group_algebra_c2(), 1, c);
    return b.take();
}

SuiteResult suite_counterexample(const SuiteConfig& c)
{
    SuiteBuilder b("counterexample");
    b.add([&] { return tensor_identity_check(sample_spec(c)); });
    b.add([] { return hereditary_violation_check(); });
    b.add([&] { return derivative_escape_check(sample_spec(c)); });
    return b.take();
}

using SuiteFn = SuiteResult (*)(const SuiteConfig&);

const std::map<std::string, SuiteFn>& suite_table()
{
    static const std::map<std::string, SuiteFn> table{
        {"hd", suite_hd},
        {"ab", suite_ab},
        {"collapse", suite_collapse},
        {"filter", suite_filter},
        {"invariance", suite_invariance},
        {"trace", suite_trace},
        {"localize", suite_localize},
        {"extend", suite_extend},
        {"agreement", suite_agreement},
        {"symmetric", suite_symmetric},
        {"counterexample", suite_counterexample},
    };
    return table;
}

std::vector<std::string> selected(const SuiteConfig& c)
{
    if (c.suites.empty()) {
        return suite_names();
    }
    std::vector<std::string> out;
    for (const auto& name : suite_names()) {
        if (std::find(c.suites.begin(), c.suites.end(), name) != c.suites.end()) {
            out.push_back(name);
        }
    }
    return out;
}

}  // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"hd",      "ab",       "collapse", "filter",
                                                "invariance", "trace",  "localize", "extend",
                                                "agreement", "symmetric", "counterexample"};
    return names;
}

std::size_t RunResult::check_count() const
{
    std::size_t n = 0;
    for (const auto& s : suites) {
        n += s.checks.size();
    }
    return n;
}

std::size_t RunResult::as_expected_count() const
{
    std::size_t n = 0;
    for (const auto& s : suites) {
        n += static_cast<std::size_t>(std::count_if(s.checks.begin(), s.checks.end(),
                                                    [](const TimedCheck& t) { return t.report.as_expected(); }));
    }
    return n;
}

bool RunResult::ok() const
{
    return std::none_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.error.has_value(); }) &&
           as_expected_count() == check_count();
}

void validate(const SuiteConfig& c)
{
    if (c.degree < 1 || c.coeff < 1 || c.order < 1 || c.samples < 1) {
        throw std::invalid_argument("degree, coeff, order and samples must all be at least 1");
    }
    for (const auto& s : c.suites) {
        if (suite_table().count(s) == 0) {
            throw std::invalid_argument("unknown suite: " + s);
        }
    }
    if (c.family != "hasse" && c.family != "derivation") {
        throw std::invalid_argument("family must be hasse or derivation, got " + c.family);
    }
    if (c.k.has_value() != c.n.has_value()) {
        throw std::invalid_argument("k and n must be given together");
    }
    if (c.k && (*c.k < 1 || *c.n < 0)) {
        throw std::invalid_argument("need k >= 1 and n >= 0");
    }
    const RadicalPowerFilter f1(q(c.base));
    const RadicalPowerFilter f2(q(c.base2));
    const auto chosen = selected(c);
    const bool agreement = std::find(chosen.begin(), chosen.end(), "agreement") != chosen.end();
    if (agreement && !filter_subset(f1, f2)) {
        throw std::invalid_argument("filter(" + c.base + ") is not contained in filter(" + c.base2 + ")");
    }
    (void)q(c.derivation);
    if (!c.module_file.empty()) {
        (void)FgModule::load(c.module_file);
    }
    if (!c.algebra_file.empty()) {
        const FinDimAlgebra alg = FinDimAlgebra::load(c.algebra_file);
        if (c.inner < 0 || static_cast<std::size_t>(c.inner) >= alg.dim()) {
            throw std::invalid_argument("inner basis index out of range");
        }
    }
}

RunResult run_suites(const SuiteConfig& config)
{
    validate(config);
    std::vector<std::pair<std::string, std::future<SuiteResult>>> running;
    for (const auto& name : selected(config)) {
        const SuiteFn fn = suite_table().at(name);
        running.emplace_back(name, std::async(std::launch::async, fn, std::cref(config)));
    }
    RunResult out;
    for (auto& [name, fut] : running) {
        try {
            out.suites.push_back(fut.get());
        } catch (const std::exception& e) {
            SuiteResult failed;
            failed.name = name;
            failed.error = e.what();
            out.suites.push_back(std::move(failed));
        }
    }
    return out;
}

json report_json(const SuiteConfig& c, const RunResult& result)
{
    json doc;
    json cfg;
    cfg["seed"] = c.seed;
    cfg["degree"] = c.degree;
    cfg["coeff"] = c.coeff;
    cfg["order"] = c.order;
    cfg["samples"] = c.samples;
    cfg["suites"] = selected(c);
    cfg["base"] = c.base;
    cfg["base2"] = c.base2;
    if (!c.module_file.empty()) {
        cfg["module"] = c.module_file;
        cfg["derivation"] = c.derivation;
    }
    if (!c.algebra_file.empty()) {
        cfg["algebra"] = c.algebra_file;
        cfg["inner"] = c.inner;
    }
    if (c.k) {
        cfg["k"] = *c.k;
        cfg["n"] = *c.n;
        cfg["family"] = c.family;
    }
    doc["config"] = cfg;

    json checks = json::array();
    json errors = json::array();
    for (const auto& suite : result.suites) {
        if (suite.error) {
            errors.push_back({{"suite", suite.name}, {"error", *suite.error}});
        }
        for (const auto& t : suite.checks) {
            json entry;
            entry["suite"] = suite.name;
            const json body = t.report.to_json();
            for (const auto& [key, value] : body.items()) {
                entry[key] = value;
            }
            if (c.timings) {
                entry["elapsed_ms"] = t.elapsed_ms;
            }
            checks.push_back(std::move(entry));
        }
    }
    doc["checks"] = std::move(checks);
    if (!errors.empty()) {
        doc["errors"] = std::move(errors);
    }
    doc["summary"] = {{"checks", result.check_count()},
                      {"as_expected", result.as_expected_count()},
                      {"ok", result.ok()}};
    return doc;
}

std::string report_text(const SuiteConfig& c, const RunResult& result)
{
    std::ostringstream out;
    for (const auto& suite : result.suites) {
        if (suite.error) {
            out << suite.name << "  ERROR  " << *suite.error << '\n';
        }
        for (const auto& t : suite.checks) {
            const CheckReport& r = t.report;
            out << (r.as_expected() ? "ok   " : "FAIL ") << suite.name << '/' << r.id;
            if (r.order) {
                out << " n=" << *r.order;
            }
            out << "  " << (r.passed ? "pass" : "fail") << " (expected "
                << (r.expect == Expectation::Pass ? "pass" : "fail") << ")  samples=" << r.samples;
            if (!r.witness.is_null()) {
                out << "  witness=" << r.witness.dump();
            }
            if (c.timings) {
                out << "  " << t.elapsed_ms << " ms";
            }
            out << '\n';
        }
    }
    out << result.as_expected_count() << '/' << result.check_count() << " checks as expected"
        << (result.ok() ? "" : ", run FAILED") << '\n';
    return out.str();
}

}  // namespace hdq
