#include "hdq/symmetric.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace hdq {

namespace {

// Gauss-Jordan elimination: returns one solution of A u = b, or
// nothing when the system is inconsistent. Free variables are set to zero.
std::optional<Vec> solve(std::vector<Vec> a, Vec b)
{
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    std::vector<std::size_t> pivot_cols;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[r]);
        std::swap(b[p], b[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& e : a[r]) {
            e *= inv;
        }
        b[r] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) {
                continue;
            }
            const Rational f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) {
                a[i][j] -= f * a[r][j];
            }
            b[i] -= f * b[r];
        }
        pivot_cols.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i) {
        if (b[i] != 0) {
            return std::nullopt;
        }
    }
    Vec u(cols);
    for (std::size_t i = 0; i < pivot_cols.size(); ++i) {
        u[pivot_cols[i]] = b[i];
    }
    return u;
}

Rational parse_rational(const std::string& token)
{
    try {
        Rational q(token);
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("bad rational '" + token + "'");
    }
}

RatMatrix identity(std::size_t n)
{
    RatMatrix m(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = 1;
    }
    return m;
}

RatMatrix matmul(const RatMatrix& a, const RatMatrix& b)
{
    const std::size_t n = a.size();
    RatMatrix out(n, Vec(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    return out;
}

}  // namespace

FinDimAlgebra::FinDimAlgebra(std::size_t dim, Vec structure, Vec unit, std::vector<std::string> names)
    : dim_(dim), structure_(std::move(structure)), unit_(std::move(unit)), names_(std::move(names))
{
    if (dim_ == 0 || structure_.size() != dim_ * dim_ * dim_) {
        throw std::invalid_argument("structure constants must have dim^3 entries");
    }
    if (names_.empty()) {
        for (std::size_t i = 0; i < dim_; ++i) {
            names_.push_back("e" + std::to_string(i));
        }
    }
    if (names_.size() != dim_) {
        throw std::invalid_argument("one basis name per dimension is required");
    }
    if (unit_.empty()) {
        // Left unit: sum_i u_i c[i][j][k] = [j == k].
        std::vector<Vec> a;
        Vec b;
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t k = 0; k < dim_; ++k) {
                Vec row(dim_);
                for (std::size_t i = 0; i < dim_; ++i) {
                    row[i] = c(i, j, k);
                }
                a.push_back(row);
                b.push_back(j == k ? 1 : 0);
            }
        }
        auto u = solve(std::move(a), std::move(b));
        if (!u) {
            throw std::invalid_argument("algebra has no left unit");
        }
        unit_ = *u;
    }
    if (unit_.size() != dim_) {
        throw std::invalid_argument("unit has the wrong number of coordinates");
    }
    for (std::size_t i = 0; i < dim_; ++i) {
        const Vec e = basis(i);
        if (mul(unit_, e) != e || mul(e, unit_) != e) {
            throw std::invalid_argument("unit law fails on " + names_[i]);
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            for (std::size_t k = 0; k < dim_; ++k) {
                const Vec ej = basis(j);
                const Vec ek = basis(k);
                if (mul(mul(e, ej), ek) != mul(e, mul(ej, ek))) {
                    throw std::invalid_argument("associativity fails on (" + names_[i] + ", " + names_[j] + ", " +
                                                names_[k] + ")");
                }
            }
        }
    }
}

FinDimAlgebra FinDimAlgebra::upper_triangular_2x2()
{
    Vec s(27);
    auto set = [&s](std::size_t i, std::size_t j, std::size_t k) { s[(i * 3 + j) * 3 + k] = 1; };
    set(0, 0, 0);  // E11 E11 = E11
    set(0, 1, 1);  // E11 E12 = E12
    set(1, 2, 1);  // E12 E22 = E12
    set(2, 2, 2);  // E22 E22 = E22
    return FinDimAlgebra(3, s, {1, 0, 1}, {"E11", "E12", "E22"});
}

FinDimAlgebra FinDimAlgebra::group_algebra_c2()
{
    Vec s(8);
    s[(0 * 2 + 0) * 2 + 0] = 1;
    s[(0 * 2 + 1) * 2 + 1] = 1;
    s[(1 * 2 + 0) * 2 + 1] = 1;
    s[(1 * 2 + 1) * 2 + 0] = 1;
    return FinDimAlgebra(2, s, {1, 0}, {"1", "g"});
}

FinDimAlgebra FinDimAlgebra::parse(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t dim = 0;
    Vec structure;
    Vec unit;
    std::vector<std::string> names;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') {
            continue;
        }
        if (head == "dimension") {
            if (!(ls >> dim) || dim == 0) {
                throw std::invalid_argument("bad dimension line");
            }
            structure.assign(dim * dim * dim, 0);
            continue;
        }
        if (dim == 0) {
            throw std::invalid_argument("algebra file must start with a dimension line");
        }
        std::vector<std::string> rest;
        for (std::string tok; ls >> tok;) {
            rest.push_back(tok);
        }
        if (head == "names") {
            names = rest;
        } else if (head == "unit") {
            unit.clear();
            for (const auto& tok : rest) {
                unit.push_back(parse_rational(tok));
            }
        } else {
            if (rest.size() != 3) {
                throw std::invalid_argument("expected `i j k c`, got: " + line);
            }
            const auto i = std::stoul(head);
            const auto j = std::stoul(rest[0]);
            const auto k = std::stoul(rest[1]);
            if (i >= dim || j >= dim || k >= dim) {
                throw std::invalid_argument("structure index out of range: " + line);
            }
            structure[(i * dim + j) * dim + k] = parse_rational(rest[2]);
        }
    }
    if (dim == 0) {
        throw std::invalid_argument("algebra file has no dimension line");
    }
    return FinDimAlgebra(dim, structure, unit, names);
}

FinDimAlgebra FinDimAlgebra::load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read algebra file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

Vec FinDimAlgebra::basis(std::size_t i) const
{
    Vec v(dim_);
    v.at(i) = 1;
    return v;
}

Vec FinDimAlgebra::mul(const Vec& a, const Vec& b) const
{
    if (a.size() != dim_ || b.size() != dim_) {
        throw std::invalid_argument("algebra element has the wrong dimension");
    }
    Vec out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < dim_; ++j) {
            if (b[j] == 0) {
                continue;
            }
            const Rational ab = a[i] * b[j];
            for (std::size_t k = 0; k < dim_; ++k) {
                if (c(i, j, k) != 0) {
                    out[k] += ab * c(i, j, k);
                }
            }
        }
    }
    return out;
}

namespace {

std::string linear_combination(const Vec& v, const std::vector<std::string>& names)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) {
            continue;
        }
        const bool neg = v[i] < 0;
        const Rational mag = neg ? Rational(-v[i]) : v[i];
        s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (mag != 1) {
            s += mag.get_str() + "*";
        }
        s += names[i];
    }
    return s.empty() ? "0" : s;
}

}  // namespace

std::string FinDimAlgebra::to_string(const Vec& v) const { return linear_combination(v, names_); }

Vec add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("vector length mismatch");
    }
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] += b[i];
    }
    return out;
}

Vec scale(const Vec& v, const Rational& c)
{
    Vec out = v;
    for (auto& e : out) {
        e *= c;
    }
    return out;
}

Vec apply(const RatMatrix& m, const Vec& v)
{
    Vec out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] != 0 && m[i][j] != 0) {
                out[i] += m[i][j] * v[j];
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Enveloping algebra

EnvElement tensor(const FinDimAlgebra& alg, const Vec& a, const Vec& b)
{
    const std::size_t n = alg.dim();
    EnvElement p{Vec(n * n)};
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            p.coords[i * n + j] = a[i] * b[j];
        }
    }
    return p;
}

EnvElement env_add(const EnvElement& p, const EnvElement& q) { return EnvElement{add(p.coords, q.coords)}; }

EnvElement env_unit(const FinDimAlgebra& alg) { return tensor(alg, alg.unit(), alg.unit()); }

EnvElement env_mul(const FinDimAlgebra& alg, const EnvElement& p, const EnvElement& q)
{
    const std::size_t n = alg.dim();
    if (p.coords.size() != n * n || q.coords.size() != n * n) {
        throw std::invalid_argument("enveloping element has the wrong dimension");
    }
    EnvElement out{Vec(n * n)};
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            const Rational& pab = p.coords[a * n + b];
            if (pab == 0) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t d = 0; d < n; ++d) {
                    const Rational& qcd = q.coords[c * n + d];
                    if (qcd == 0) {
                        continue;
                    }
                    const Vec left = alg.mul(alg.basis(a), alg.basis(c));
                    const Vec right = alg.mul(alg.basis(d), alg.basis(b));
                    out = env_add(out, EnvElement{scale(tensor(alg, left, right).coords, pab * qcd)});
                }
            }
        }
    }
    return out;
}

std::string to_string(const FinDimAlgebra& alg, const EnvElement& p)
{
    std::vector<std::string> names;
    for (const auto& a : alg.names()) {
        for (const auto& b : alg.names()) {
            names.push_back(a + "⊗" + b);
        }
    }
    return linear_combination(p.coords, names);
}

Vec right_action(const FinDimAlgebra& alg, const Vec& x, const EnvElement& p)
{
    const std::size_t n = alg.dim();
    Vec out = alg.zero();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t s = 0; s < n; ++s) {
            const Rational& c = p.coords[r * n + s];
            if (c != 0) {
                out = add(out, scale(alg.mul(alg.mul(alg.basis(s), x), alg.basis(r)), c));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Higher derivations

AlgebraHD::AlgebraHD(const FinDimAlgebra& alg, std::vector<RatMatrix> maps, std::string label)
    : dim_(alg.dim()), maps_(std::move(maps)), label_(std::move(label))
{
    for (const auto& m : maps_) {
        if (m.size() != dim_) {
            throw std::invalid_argument("delta matrix has the wrong size");
        }
        for (const auto& row : m) {
            if (row.size() != dim_) {
                throw std::invalid_argument("delta matrix has the wrong size");
            }
        }
    }
}

AlgebraHD AlgebraHD::inner(const FinDimAlgebra& alg, const Vec& u, int order_bound)
{
    const std::size_t n = alg.dim();
    RatMatrix d(n, Vec(n));
    for (std::size_t j = 0; j < n; ++j) {
        const Vec e = alg.basis(j);
        const Vec img = add(alg.mul(u, e), scale(alg.mul(e, u), -1));
        for (std::size_t i = 0; i < n; ++i) {
            d[i][j] = img[i];
        }
    }
    std::vector<RatMatrix> maps;
    RatMatrix power = identity(n);
    for (int k = 1; k <= order_bound; ++k) {
        power = matmul(d, power);
        RatMatrix m = power;
        const Rational inv = 1 / factorial(static_cast<unsigned long>(k));
        for (auto& row : m) {
            for (auto& e : row) {
                e *= inv;
            }
        }
        maps.push_back(m);
    }
    return AlgebraHD(alg, maps, "inner [" + alg.to_string(u) + ", -]");
}

AlgebraHD AlgebraHD::trivial(const FinDimAlgebra& alg, int order_bound)
{
    const std::size_t n = alg.dim();
    return AlgebraHD(alg, std::vector<RatMatrix>(static_cast<std::size_t>(order_bound), RatMatrix(n, Vec(n))),
                     "trivial");
}

Vec AlgebraHD::apply(int n, const Vec& v) const
{
    if (n < 0 || n > order_bound()) {
        throw std::out_of_range("algebra HD applied past its order bound");
    }
    return n == 0 ? v : ::hdq::apply(maps_[static_cast<std::size_t>(n - 1)], v);
}

CheckReport algebra_hd_check(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order, Expectation expect)
{
    CheckReport rep("algebra-hd", "classical-higher-derivation-law", expect);
    rep.order = max_order;
    rep.details["family"] = delta.label();
    for (int n = 0; n <= max_order; ++n) {
        for (std::size_t a = 0; a < alg.dim(); ++a) {
            for (std::size_t b = 0; b < alg.dim(); ++b) {
                const Vec ea = alg.basis(a);
                const Vec eb = alg.basis(b);
                const Vec lhs = delta.apply(n, alg.mul(ea, eb));
                Vec rhs = alg.zero();
                for (int i = 0; i <= n; ++i) {
                    rhs = add(rhs, alg.mul(delta.apply(i, ea), delta.apply(n - i, eb)));
                }
                ++rep.samples;
                if (lhs != rhs) {
                    rep.record_failure({{"n", n},
                                        {"a", alg.names()[a]},
                                        {"b", alg.names()[b]},
                                        {"lhs", alg.to_string(lhs)},
                                        {"rhs", alg.to_string(rhs)}});
                }
            }
        }
    }
    return rep;
}

namespace {

EnvElement basis_tensor(const FinDimAlgebra& alg, std::size_t a, std::size_t b)
{
    return tensor(alg, alg.basis(a), alg.basis(b));
}

Vec other_action(const FinDimAlgebra& alg, const Vec& x, std::size_t r, std::size_t s)
{
    return alg.mul(alg.mul(alg.basis(r), x), alg.basis(s));
}

}  // namespace

CheckReport env_axioms_check(const FinDimAlgebra& alg)
{
    CheckReport rep("env-axioms", "enveloping-algebra-axioms");
    const std::size_t n = alg.dim();
    const EnvElement one = env_unit(alg);
    std::vector<EnvElement> basis;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            basis.push_back(basis_tensor(alg, a, b));
        }
    }
    for (std::size_t p = 0; p < basis.size(); ++p) {
        if (env_mul(alg, one, basis[p]) != basis[p] || env_mul(alg, basis[p], one) != basis[p]) {
            rep.record_failure({{"check", "unit"}, {"p", to_string(alg, basis[p])}});
        }
        for (std::size_t q = 0; q < basis.size(); ++q) {
            const EnvElement pq = env_mul(alg, basis[p], basis[q]);
            for (std::size_t r = 0; r < basis.size(); ++r) {
                ++rep.samples;
                if (env_mul(alg, pq, basis[r]) != env_mul(alg, basis[p], env_mul(alg, basis[q], basis[r]))) {
                    rep.record_failure({{"check", "associativity"},
                                        {"p", to_string(alg, basis[p])},
                                        {"q", to_string(alg, basis[q])},
                                        {"r", to_string(alg, basis[r])}});
                }
            }
        }
    }

    // Right-module axiom x·(pq) = (x·p)·q on basis triples.
    std::size_t other_failures = 0;
    for (std::size_t x = 0; x < n; ++x) {
        const Vec ex = alg.basis(x);
        for (std::size_t p = 0; p < basis.size(); ++p) {
            for (std::size_t q = 0; q < basis.size(); ++q) {
                ++rep.samples;
                const Vec lhs = right_action(alg, ex, env_mul(alg, basis[p], basis[q]));
                const Vec rhs = right_action(alg, right_action(alg, ex, basis[p]), basis[q]);
                if (lhs != rhs) {
                    rep.record_failure({{"check", "right-module axiom"},
                                        {"x", alg.names()[x]},
                                        {"p", to_string(alg, basis[p])},
                                        {"q", to_string(alg, basis[q])}});
                }
                // x·(r⊗s) = r x s instead.
                const std::size_t pr = p / n;
                const std::size_t ps = p % n;
                const std::size_t qr = q / n;
                const std::size_t qs = q % n;
                const Vec prod_r = alg.mul(alg.basis(pr), alg.basis(qr));
                const Vec prod_s = alg.mul(alg.basis(qs), alg.basis(ps));
                const Vec other_lhs = alg.mul(alg.mul(prod_r, ex), prod_s);
                const Vec other_rhs = other_action(alg, other_action(alg, ex, pr, ps), qr, qs);
                if (other_lhs != other_rhs) {
                    ++other_failures;
                }
            }
        }
    }
    rep.details["other_convention_failures"] = other_failures;
    return rep;
}

EnvElement bar_delta(const FinDimAlgebra& alg, const AlgebraHD& delta, int n, const EnvElement& p)
{
    if (n < 0 || n > delta.order_bound()) {
        throw std::out_of_range("bar lift applied past the order bound");
    }
    const std::size_t d = alg.dim();
    EnvElement out{Vec(d * d)};
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) {
            const Rational& c = p.coords[r * d + s];
            if (c == 0) {
                continue;
            }
            for (int i = 0; i <= n; ++i) {
                const EnvElement t = tensor(alg, delta.apply(i, alg.basis(r)), delta.apply(n - i, alg.basis(s)));
                out = env_add(out, EnvElement{scale(t.coords, c)});
            }
        }
    }
    return out;
}

CheckReport verify_bar_hd(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order, const SampleSpec& spec,
                          Expectation expect)
{
    CheckReport rep("symmetric-bar-hd", "bar-lift-is-higher-derivation", expect);
    rep.order = max_order;
    rep.details["family"] = delta.label();
    rep.details["algebra_hd_law"] = algebra_hd_check(alg, delta, max_order).passed;

    const std::size_t n = alg.dim();
    std::vector<std::pair<EnvElement, EnvElement>> pairs;
    for (std::size_t p = 0; p < n * n; ++p) {
        for (std::size_t q = 0; q < n * n; ++q) {
            pairs.emplace_back(basis_tensor(alg, p / n, p % n), basis_tensor(alg, q / n, q % n));
        }
    }
    const std::size_t exhaustive = pairs.size();
    Sampler sampler(spec.seed, spec.degree_bound, spec.coeff_bound);
    auto random_env = [&] {
        EnvElement e{Vec(n * n)};
        for (auto& c : e.coords) {
            c = sampler.rational();
        }
        return e;
    };
    for (int t = 0; t < spec.count; ++t) {
        EnvElement p = random_env();
        EnvElement q = random_env();
        pairs.emplace_back(std::move(p), std::move(q));
    }
    rep.details["basis_pairs"] = exhaustive;

    for (const auto& [p, q] : pairs) {
        const EnvElement pq = env_mul(alg, p, q);
        for (int k = 0; k <= max_order; ++k) {
            const EnvElement lhs = bar_delta(alg, delta, k, pq);
            EnvElement rhs{Vec(n * n)};
            for (int i = 0; i <= k; ++i) {
                rhs = env_add(rhs, env_mul(alg, bar_delta(alg, delta, i, p), bar_delta(alg, delta, k - i, q)));
            }
            if (lhs != rhs) {
                rep.record_failure({{"n", k},
                                    {"p", to_string(alg, p)},
                                    {"q", to_string(alg, q)},
                                    {"lhs", to_string(alg, lhs)},
                                    {"rhs", to_string(alg, rhs)}});
            }
        }
        ++rep.samples;
    }
    return rep;
}

CheckReport bimodule_correspondence_check(const FinDimAlgebra& alg, const AlgebraHD& delta, int max_order,
                                          Expectation expect)
{
    CheckReport rep("symmetric-bimodule", "higher-derivation-is-bimodule-higher-derivation", expect);
    rep.order = max_order;
    rep.details["family"] = delta.label();
    const std::size_t d = alg.dim();
    std::size_t module_law = 0;
    std::size_t one_sided = 0;

    for (int n = 0; n <= max_order; ++n) {
        for (std::size_t x = 0; x < d; ++x) {
            const Vec ex = alg.basis(x);
            for (std::size_t r = 0; r < d; ++r) {
                const Vec er = alg.basis(r);
                // d_n(x r) = sum d_i(x) delta_{n-i}(r) and d_n(r x) = sum delta_i(r) d_{n-i}(x).
                Vec right = alg.zero();
                Vec left = alg.zero();
                for (int i = 0; i <= n; ++i) {
                    right = add(right, alg.mul(delta.apply(i, ex), delta.apply(n - i, er)));
                    left = add(left, alg.mul(delta.apply(i, er), delta.apply(n - i, ex)));
                }
                one_sided += 2;
                if (delta.apply(n, alg.mul(ex, er)) != right) {
                    rep.record_failure({{"law", "d_n(xr)"}, {"n", n}, {"x", alg.names()[x]}, {"r", alg.names()[r]}});
                }
                if (delta.apply(n, alg.mul(er, ex)) != left) {
                    rep.record_failure({{"law", "d_n(rx)"}, {"n", n}, {"x", alg.names()[x]}, {"r", alg.names()[r]}});
                }

                for (std::size_t s = 0; s < d; ++s) {
                    const EnvElement p = basis_tensor(alg, r, s);
                    const Vec lhs = delta.apply(n, right_action(alg, ex, p));
                    Vec rhs = alg.zero();
                    for (int i = 0; i <= n; ++i) {
                        rhs = add(rhs, right_action(alg, delta.apply(i, ex), bar_delta(alg, delta, n - i, p)));
                    }
                    ++module_law;
                    if (lhs != rhs) {
                        rep.record_failure({{"law", "d_n(x·p)"},
                                            {"n", n},
                                            {"x", alg.names()[x]},
                                            {"p", to_string(alg, p)},
                                            {"lhs", alg.to_string(lhs)},
                                            {"rhs", alg.to_string(rhs)}});
                    }
                }
            }
        }
    }
    rep.samples = module_law + one_sided;
    rep.details["module_law_instances"] = module_law;
    rep.details["one_sided_instances"] = one_sided;
    return rep;
}

}  // namespace hdq
