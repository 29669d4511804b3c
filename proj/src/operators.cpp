#include "hdq/operators.hpp"

#include <algorithm>
#include <cctype>
#include <span>
#include <stdexcept>
#include <tuple>

namespace hdq {

HDFamily HDFamily::hasse(int order_bound)
{
    if (order_bound < 0) {
        throw std::invalid_argument("order bound must be nonnegative");
    }
    return {Kind::Hasse, order_bound};
}

HDFamily HDFamily::from_derivation(Poly image_of_x, int order_bound)
{
    if (order_bound < 0) {
        throw std::invalid_argument("order bound must be nonnegative");
    }
    if (image_of_x.domain() != CoeffDomain::Rational) {
        throw std::invalid_argument("derivation families divide by n! and need Q[x]");
    }
    HDFamily f(Kind::FromDerivation, order_bound);
    f.image_ = std::move(image_of_x);
    return f;
}

HDFamily HDFamily::table(std::vector<std::vector<Poly>> images)
{
    HDFamily f(Kind::Table, static_cast<int>(images.size()));
    if (!images.empty()) {
        f.degree_bound_ = static_cast<int>(images.front().size()) - 1;
        for (const auto& row : images) {
            if (static_cast<int>(row.size()) - 1 != f.degree_bound_) {
                throw std::invalid_argument("table rows must share a degree bound");
            }
        }
    }
    f.table_ = std::move(images);
    return f;
}

Poly HDFamily::apply(int n, const Poly& p) const
{
    if (n < 0 || n > order_bound_) {
        throw std::out_of_range("higher derivation order " + std::to_string(n) +
                                " exceeds bound " + std::to_string(order_bound_));
    }
    if (n == 0 || p.is_zero()) {
        return p;
    }
    const auto cs = p.coefficients();
    switch (kind_) {
    case Kind::Hasse: {
        if (static_cast<int>(cs.size()) <= n) {
            return Poly({}, p.domain());
        }
        std::vector<Rational> out(cs.size() - static_cast<std::size_t>(n));
        for (std::size_t k = static_cast<std::size_t>(n); k < cs.size(); ++k) {
            out[k - static_cast<std::size_t>(n)] = cs[k] * binomial(static_cast<long>(k), n);
        }
        return Poly(std::move(out), p.domain());
    }
    case Kind::FromDerivation: {
        if (p.domain() != CoeffDomain::Rational) {
            throw std::invalid_argument("derivation family applied to a Z[x] polynomial");
        }
        Poly q = p;
        for (int k = 0; k < n; ++k) {
            q = q.derivative() * image_;
        }
        return q * (1 / factorial(static_cast<unsigned long>(n)));
    }
    case Kind::Table: {
        if (p.degree() > degree_bound_) {
            throw std::out_of_range("table family defined up to degree " + std::to_string(degree_bound_));
        }
        const auto& row = table_[static_cast<std::size_t>(n - 1)];
        Poly out({}, p.domain());
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (cs[k] != 0) {
                out += (row[k] * cs[k]).with_domain(p.domain());
            }
        }
        return out;
    }
    }
    return p;
}

std::string HDFamily::describe() const
{
    switch (kind_) {
    case Kind::Hasse:
        return "hasse";
    case Kind::FromDerivation:
        return "derivation(x -> " + to_string(image_) + ")";
    case Kind::Table:
        return "table(order " + std::to_string(order_bound_) + ", degree " + std::to_string(degree_bound_) + ")";
    }
    return "?";
}

HDFamily difference_family(const Automorphism& alpha, const Automorphism& beta, int order, int degree_bound)
{
    std::vector<std::vector<Poly>> images(static_cast<std::size_t>(order));
    for (int k = 0; k <= degree_bound; ++k) {
        Poly q = Poly::monomial(1, static_cast<std::size_t>(k));
        for (int n = 1; n <= order; ++n) {
            q = alpha(q) - beta(q);
            images[static_cast<std::size_t>(n - 1)].push_back(
                q * (1 / factorial(static_cast<unsigned long>(n))));
        }
    }
    return HDFamily::table(std::move(images));
}

std::string to_string(const OperatorWord& w)
{
    std::string out = "[";
    for (std::size_t k = 0; k < w.symbols.size(); ++k) {
        if (k != 0) {
            out += ", ";
        }
        const Symbol& s = w.symbols[k];
        switch (s.kind) {
        case Symbol::Kind::AlphaPow:
            out += "a^" + std::to_string(s.index);
            break;
        case Symbol::Kind::Beta:
            out += "b";
            break;
        case Symbol::Kind::Delta:
            out += "d" + std::to_string(s.index);
            break;
        case Symbol::Kind::DeltaOne:
            out += "D";
            break;
        }
    }
    return out + "]";
}

OperatorWord parse_word(std::string_view text, WordScope scope)
{
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse operator word '" + std::string(text) + "': " + why);
    };
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
            s.remove_prefix(1);
        }
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
            s.remove_suffix(1);
        }
        return s;
    };
    auto number = [&](std::string_view s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
            fail("expected a nonnegative integer, got '" + std::string(s) + "'");
        }
        return std::stoi(std::string(s));
    };

    std::string_view body = trim(text);
    if (body.size() < 2 || body.front() != '[' || body.back() != ']') {
        fail("missing brackets");
    }
    body = trim(body.substr(1, body.size() - 2));
    OperatorWord w{{}, scope};
    while (!body.empty()) {
        const auto comma = body.find(',');
        const std::string_view tok = trim(body.substr(0, comma));
        body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
        if (tok == "b") {
            w.symbols.push_back(Symbol::beta());
        } else if (tok == "D" || tok == "D1") {
            w.symbols.push_back(Symbol::delta_one());
        } else if (tok == "a") {
            w.symbols.push_back(Symbol::alpha_pow(1));
        } else if (tok.starts_with("a^")) {
            w.symbols.push_back(Symbol::alpha_pow(number(tok.substr(2))));
        } else if (tok.starts_with("d")) {
            w.symbols.push_back(Symbol::delta(number(tok.substr(1))));
        } else {
            fail("unknown symbol '" + std::string(tok) + "'");
        }
    }
    return w;
}

Normalized normalize_word(const OperatorWord& w, const ABContext& ctx)
{
    Normalized out;
    out.word.scope = w.scope;

    std::vector<Symbol> kept;
    for (const Symbol& s : w.symbols) {
        const bool identity = (s.kind == Symbol::Kind::AlphaPow && (s.index == 0 || ctx.alpha.is_identity())) ||
                              (s.kind == Symbol::Kind::Beta && ctx.beta.is_identity()) ||
                              (s.kind == Symbol::Kind::Delta && s.index == 0);
        if (identity) {
            ++out.identities_removed;
        } else {
            kept.push_back(s);
        }
    }

    for (std::size_t pos = 0; pos < kept.size();) {
        if (!kept[pos].is_delta()) {
            out.word.symbols.push_back(kept[pos++]);
            continue;
        }
        std::size_t end = pos;
        while (end < kept.size() && kept[end].is_delta()) {
            ++end;
        }
        const auto run = std::span(kept).subspan(pos, end - pos);
        const bool pure_delta_one =
            std::all_of(run.begin(), run.end(), [](const Symbol& s) { return s.kind == Symbol::Kind::DeltaOne; });
        const bool guard = pure_delta_one || w.scope == WordScope::SecondProduct || ctx.beta.is_identity();
        if (run.size() >= 2 && guard) {
            MergeEvent ev;
            bool has_one = false;
            bool has_higher = false;
            int total = 0;
            for (const Symbol& s : run) {
                ev.indices.push_back(s.index);
                total += s.index;
                has_one = has_one || s.kind == Symbol::Kind::DeltaOne;
                has_higher = has_higher || (s.kind == Symbol::Kind::Delta && s.index > 1);
            }
            ev.mixed = has_one && has_higher;
            out.merges.push_back(std::move(ev));
            out.word.symbols.push_back(Symbol::delta(total));
        } else {
            out.word.symbols.insert(out.word.symbols.end(), run.begin(), run.end());
        }
        pos = end;
    }
    return out;
}

Poly eval_word(const OperatorWord& w, const ABContext& ctx, const HDFamily& family, const Poly& p)
{
    Poly acc = p;
    for (auto it = w.symbols.rbegin(); it != w.symbols.rend(); ++it) {
        switch (it->kind) {
        case Symbol::Kind::AlphaPow:
            acc = ctx.alpha.power(it->index)(acc);
            break;
        case Symbol::Kind::Beta:
            acc = ctx.beta(acc);
            break;
        case Symbol::Kind::Delta:
        case Symbol::Kind::DeltaOne:
            acc = family.apply(it->index, acc);
            break;
        }
    }
    return acc;
}

namespace {

void compositions_into(int parts, int total, std::vector<int>& prefix, std::vector<std::vector<int>>& out)
{
    if (parts == 1) {
        prefix.push_back(total);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int k = 0; k <= total; ++k) {
        prefix.push_back(k);
        compositions_into(parts - 1, total - k, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> compositions(int n, int i)
{
    if (n < 1 || i < 1 || i > n) {
        throw std::invalid_argument("compositions(n, i) requires 1 <= i <= n");
    }
    std::vector<std::vector<int>> out;
    std::vector<int> prefix;
    compositions_into(i + 1, n - i, prefix, out);
    return out;
}

OperatorWord first_product_word(const std::vector<int>& composition)
{
    OperatorWord w{{Symbol::delta(composition.at(0))}, WordScope::FirstProduct};
    for (std::size_t j = 1; j < composition.size(); ++j) {
        w.symbols.push_back(Symbol::beta());
        w.symbols.push_back(Symbol::delta(composition[j]));
    }
    return w;
}

OperatorWord second_product_word(const std::vector<int>& composition)
{
    OperatorWord w{{Symbol::alpha_pow(composition.at(0))}, WordScope::SecondProduct};
    for (std::size_t j = 1; j < composition.size(); ++j) {
        w.symbols.push_back(Symbol::delta_one());
        w.symbols.push_back(Symbol::alpha_pow(composition[j]));
    }
    return w;
}

ABExpansion ab_expansion(const HDFamily& family, const ABContext& ctx, int n, const Poly& r, const Poly& s)
{
    if (n < 1) {
        throw std::invalid_argument("twisted Leibniz expansion needs n >= 1");
    }
    if (r.domain() != CoeffDomain::Rational || s.domain() != CoeffDomain::Rational) {
        throw std::invalid_argument("twisted Leibniz expansion needs Q[x] arguments");
    }
    ABExpansion ex;
    ex.leading = family.apply(n, r) * ctx.alpha.power(n)(s);
    ex.value = ex.leading;
    const Rational n_fact = factorial(static_cast<unsigned long>(n));
    for (int i = 1; i <= n; ++i) {
        const Rational coeff =
            factorial(static_cast<unsigned long>(i)) * factorial(static_cast<unsigned long>(n - i)) / n_fact;
        for (auto& comp : compositions(n, i)) {
            const Normalized first = normalize_word(first_product_word(comp), ctx);
            const Normalized second = normalize_word(second_product_word(comp), ctx);
            for (const auto* norm : {&first, &second}) {
                ex.mixed_merges += static_cast<int>(
                    std::count_if(norm->merges.begin(), norm->merges.end(), [](const MergeEvent& e) { return e.mixed; }));
            }
            ABTerm term{i, std::move(comp), first.word, second.word, coeff, {}};
            term.value = eval_word(term.first, ctx, family, r) * eval_word(term.second, ctx, family, s) * coeff;
            ex.value += term.value;
            ex.terms.push_back(std::move(term));
        }
    }
    return ex;
}

Poly ab_leibniz_rhs(const HDFamily& family, const ABContext& ctx, int n, const Poly& r, const Poly& s)
{
    return ab_expansion(family, ctx, n, r, s).value;
}

Poly first_product_sum(const HDFamily& family, const ABContext& ctx, int n, int i, const Poly& r)
{
    Poly acc({}, r.domain());
    for (const auto& comp : compositions(n, i)) {
        acc += eval_word(normalize_word(first_product_word(comp), ctx).word, ctx, family, r);
    }
    return acc;
}

std::vector<std::pair<Poly, Poly>> sample_pairs(const SampleSpec& spec, CoeffDomain domain)
{
    std::vector<std::pair<Poly, Poly>> out;
    for (std::size_t a = 0; a <= 2; ++a) {
        for (std::size_t b = 0; b <= 2; ++b) {
            out.emplace_back(Poly::monomial(1, a, domain), Poly::monomial(1, b, domain));
        }
    }
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    while (static_cast<int>(out.size()) < spec.count) {
        Poly r = sampler.poly(domain);
        Poly s = sampler.poly(domain);
        out.emplace_back(std::move(r), std::move(s));
    }
    out.resize(static_cast<std::size_t>(std::max(spec.count, 0)));
    return out;
}

CheckReport verify_ab_hd(const HDFamily& family, const ABContext& ctx, int max_order, const SampleSpec& spec,
                         Expectation expect)
{
    CheckReport rep("verify-ab", "twisted-leibniz-membership", expect);
    rep.order = max_order;
    rep.details["family"] = family.describe();
    rep.details["alpha"] = to_string(ctx.alpha);
    rep.details["beta"] = to_string(ctx.beta);
    const auto pairs = sample_pairs(spec);
    int mixed = 0;
    for (int n = 1; n <= max_order; ++n) {
        for (const auto& [r, s] : pairs) {
            const Poly lhs = family.apply(n, r * s);
            const ABExpansion rhs = ab_expansion(family, ctx, n, r, s);
            mixed += rhs.mixed_merges;
            ++rep.samples;
            if (lhs != rhs.value) {
                rep.record_failure({{"n", n},
                                    {"r", to_string(r)},
                                    {"s", to_string(s)},
                                    {"lhs", to_string(lhs)},
                                    {"rhs", to_string(rhs.value)}});
            }
        }
    }
    rep.details["pairs"] = pairs.size();
    rep.details["mixed_merges"] = mixed;
    if (mixed != 0) {
        rep.notes.push_back("delta_1 merged with delta_k (k > 1) inside a second-product word");
    }
    return rep;
}

CheckReport verify_classical_hd(const HDFamily& family, int max_order, const SampleSpec& spec, CoeffDomain domain,
                                Expectation expect)
{
    CheckReport rep("verify-hd", "classical-higher-derivation-law", expect);
    rep.order = max_order;
    rep.details["family"] = family.describe();
    rep.details["domain"] = std::string(to_string(domain));
    const auto pairs = sample_pairs(spec, domain);
    for (int n = 0; n <= max_order; ++n) {
        for (const auto& [r, s] : pairs) {
            const Poly lhs = family.apply(n, r * s);
            Poly rhs({}, domain);
            for (int i = 0; i <= n; ++i) {
                rhs += family.apply(i, r) * family.apply(n - i, s);
            }
            ++rep.samples;
            if (lhs != rhs) {
                rep.record_failure({{"n", n},
                                    {"r", to_string(r)},
                                    {"s", to_string(s)},
                                    {"lhs", to_string(lhs)},
                                    {"rhs", to_string(rhs)}});
            }
        }
    }
    return rep;
}

CheckReport collapse_check(const HDFamily& family, int max_order, const SampleSpec& spec, int coefficient_bound)
{
    CheckReport rep("collapse", "twisted-law-collapses-to-classical");
    rep.order = max_order;
    rep.details["family"] = family.describe();
    const ABContext identity{};
    const auto pairs = sample_pairs(spec);
    for (int n = 1; n <= max_order; ++n) {
        for (const auto& [r, s] : pairs) {
            const Poly twisted = ab_leibniz_rhs(family, identity, n, r, s);
            Poly classical;
            for (int i = 0; i <= n; ++i) {
                classical += family.apply(n - i, r) * family.apply(i, s);
            }
            ++rep.samples;
            if (twisted != classical) {
                rep.record_failure({{"n", n},
                                    {"r", to_string(r)},
                                    {"s", to_string(s)},
                                    {"twisted", to_string(twisted)},
                                    {"classical", to_string(classical)}});
            }
        }
    }
    int identities = 0;
    for (int n = 1; n <= coefficient_bound; ++n) {
        for (int i = 1; i <= n; ++i) {
            const Rational count(static_cast<long>(compositions(n, i).size()));
            const Rational weight = factorial(static_cast<unsigned long>(i)) *
                                    factorial(static_cast<unsigned long>(n - i)) /
                                    factorial(static_cast<unsigned long>(n));
            ++identities;
            if (weight * count != 1) {
                rep.record_failure({{"coefficient_identity", true},
                                    {"n", n},
                                    {"i", i},
                                    {"product", Rational(weight * count).get_str()}});
            }
        }
    }
    rep.details["coefficient_identities"] = identities;
    return rep;
}

CheckReport printed_forms_check(const HDFamily& family, const SampleSpec& spec)
{
    CheckReport rep("printed-forms", "twisted-leibniz-low-order-forms");
    rep.order = 2;
    rep.details["family"] = family.describe();
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    const Rational half(1, 2);
    for (int t = 0; t < spec.count; ++t) {
        const ABContext ctx{sampler.automorphism(), sampler.automorphism()};
        const Poly r = sampler.poly();
        const Poly s = sampler.poly();
        const auto& a = ctx.alpha;
        const auto& b = ctx.beta;
        const auto d = [&](int n, const Poly& p) { return family.apply(n, p); };

        const Poly first = d(1, r) * a(s) + b(r) * d(1, s);
        const Poly second = d(2, r) * a(a(s)) + half * b(d(1, r)) * d(1, a(s)) + half * d(1, b(r)) * a(d(1, s)) +
                            b(b(r)) * d(2, s);
        const Poly rhs1 = ab_leibniz_rhs(family, ctx, 1, r, s);
        const Poly rhs2 = ab_leibniz_rhs(family, ctx, 2, r, s);
        rep.samples += 2;
        for (const auto& [n, got, want] : {std::tuple{1, &rhs1, &first}, std::tuple{2, &rhs2, &second}}) {
            if (*got != *want) {
                rep.record_failure({{"n", n},
                                    {"alpha", to_string(a)},
                                    {"beta", to_string(b)},
                                    {"r", to_string(r)},
                                    {"s", to_string(s)},
                                    {"expansion", to_string(*got)},
                                    {"expected", to_string(*want)}});
            }
        }
    }
    return rep;
}

CheckReport families_agree_check(const HDFamily& a, const HDFamily& b, int max_order, const SampleSpec& spec,
                                 CoeffDomain domain)
{
    CheckReport rep("families-agree", "families-agree-termwise");
    rep.order = max_order;
    rep.details["first"] = a.describe();
    rep.details["second"] = b.describe();
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    for (int t = 0; t < spec.count; ++t) {
        const Poly p = sampler.poly(domain);
        for (int n = 0; n <= max_order; ++n) {
            const Poly lhs = a.apply(n, p);
            const Poly rhs = b.apply(n, p);
            ++rep.samples;
            if (lhs != rhs) {
                rep.record_failure({{"n", n}, {"p", to_string(p)}, {"first", to_string(lhs)}, {"second", to_string(rhs)}});
            }
        }
    }
    return rep;
}

}  // namespace hdq
