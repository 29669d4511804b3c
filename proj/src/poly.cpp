#include "hdq/poly.hpp"

#include <cctype>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdq {

namespace {

bool is_integral(const Rational& c) { return c.get_den() == 1; }

}  // namespace

std::string_view to_string(CoeffDomain d)
{
    return d == CoeffDomain::Rational ? "Q" : "Z";
}

Rational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(out);
}

Rational factorial(unsigned long n)
{
    mpz_class out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return Rational(out);
}

Poly::Poly(std::vector<Rational> coeffs, CoeffDomain domain)
    : coeffs_(std::move(coeffs)), domain_(domain)
{
    for (auto& c : coeffs_) {
        c.canonicalize();
        if (domain_ == CoeffDomain::Integer && !is_integral(c)) {
            throw std::invalid_argument("non-integral coefficient in Z[x] polynomial");
        }
    }
    trim();
}

Poly Poly::constant(const Rational& c, CoeffDomain domain) { return Poly({c}, domain); }

Poly Poly::monomial(const Rational& c, std::size_t degree, CoeffDomain domain)
{
    std::vector<Rational> v(degree + 1, Rational(0));
    v[degree] = c;
    return Poly(std::move(v), domain);
}

Poly Poly::x(CoeffDomain domain) { return monomial(1, 1, domain); }

Rational Poly::coeff(std::size_t k) const
{
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
}

Rational Poly::leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }

void Poly::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

void Poly::check_domain(const Poly& other) const
{
    if (domain_ != other.domain_) {
        throw std::invalid_argument("polynomial coefficient domain mismatch");
    }
}

Poly Poly::monic() const
{
    if (is_zero()) {
        return *this;
    }
    Poly out = *this;
    out.domain_ = CoeffDomain::Rational;
    const Rational lead = leading();
    for (auto& c : out.coeffs_) {
        c /= lead;
    }
    return out.with_domain(domain_ == CoeffDomain::Integer && abs(lead) == 1 ? domain_
                                                                           : CoeffDomain::Rational);
}

Poly Poly::derivative() const
{
    if (coeffs_.size() <= 1) {
        return Poly({}, domain_);
    }
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k) {
        out[k - 1] = coeffs_[k] * static_cast<long>(k);
    }
    return Poly(std::move(out), domain_);
}

Poly Poly::pow(unsigned exponent) const
{
    Poly result = one(domain_);
    Poly base = *this;
    while (exponent != 0) {
        if (exponent & 1U) {
            result *= base;
        }
        exponent >>= 1U;
        if (exponent != 0) {
            base *= base;
        }
    }
    return result;
}

Rational Poly::eval(const Rational& at) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * at + *it;
    }
    return acc;
}

Poly Poly::with_domain(CoeffDomain domain) const { return Poly(coeffs_, domain); }

Poly& Poly::operator+=(const Poly& rhs)
{
    check_domain(rhs);
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] += rhs.coeffs_[k];
    }
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs)
{
    check_domain(rhs);
    if (rhs.coeffs_.size() > coeffs_.size()) {
        coeffs_.resize(rhs.coeffs_.size(), Rational(0));
    }
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) {
        coeffs_[k] -= rhs.coeffs_[k];
    }
    trim();
    return *this;
}

Poly& Poly::operator*=(const Poly& rhs)
{
    check_domain(rhs);
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) {
            out[i + j] += coeffs_[i] * rhs.coeffs_[j];
        }
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Poly& Poly::operator*=(const Rational& c)
{
    for (auto& a : coeffs_) {
        a *= c;
        if (domain_ == CoeffDomain::Integer && !is_integral(a)) {
            throw std::invalid_argument("non-integral scalar applied to Z[x] polynomial");
        }
    }
    trim();
    return *this;
}

Poly Poly::operator-() const
{
    Poly out = *this;
    for (auto& c : out.coeffs_) {
        c = -c;
    }
    return out;
}

DivMod divmod(const Poly& p, const Poly& q)
{
    if (p.domain() != q.domain()) {
        throw std::invalid_argument("polynomial coefficient domain mismatch");
    }
    if (p.domain() != CoeffDomain::Rational) {
        throw std::invalid_argument("divmod requires Q[x] operands");
    }
    if (q.is_zero()) {
        throw std::domain_error("division by the zero polynomial");
    }
    std::vector<Rational> rem(p.coefficients().begin(), p.coefficients().end());
    const int dq = q.degree();
    const int dp = p.degree();
    if (dp < dq) {
        return {Poly(), p};
    }
    std::vector<Rational> quot(static_cast<std::size_t>(dp - dq + 1), Rational(0));
    const Rational lead = q.leading();
    const auto qc = q.coefficients();
    for (int k = dp - dq; k >= 0; --k) {
        const Rational c = rem[static_cast<std::size_t>(k + dq)] / lead;
        quot[static_cast<std::size_t>(k)] = c;
        if (c == 0) {
            continue;
        }
        for (int j = 0; j <= dq; ++j) {
            rem[static_cast<std::size_t>(k + j)] -= c * qc[static_cast<std::size_t>(j)];
        }
    }
    rem.resize(static_cast<std::size_t>(dq));
    return {Poly(std::move(quot)), Poly(std::move(rem))};
}

Poly gcd(const Poly& p, const Poly& q)
{
    Poly a = p.with_domain(CoeffDomain::Rational);
    Poly b = q.with_domain(CoeffDomain::Rational);
    while (!b.is_zero()) {
        Poly r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

Poly lcm(const Poly& p, const Poly& q)
{
    if (p.is_zero() || q.is_zero()) {
        return Poly({}, p.domain());
    }
    const Poly pq = p.with_domain(CoeffDomain::Rational) * q.with_domain(CoeffDomain::Rational);
    return divmod(pq, gcd(p, q)).quotient.monic();
}

bool divides(const Poly& d, const Poly& p)
{
    if (d.domain() != p.domain()) {
        throw std::invalid_argument("polynomial coefficient domain mismatch");
    }
    if (d.is_zero()) {
        return p.is_zero();
    }
    const auto [quot, rem] =
        divmod(p.with_domain(CoeffDomain::Rational), d.with_domain(CoeffDomain::Rational));
    if (!rem.is_zero()) {
        return false;
    }
    if (p.domain() == CoeffDomain::Integer) {
        // Z[x] divisibility: the Q[x] cofactor is unique, so it must be integral.
        for (const auto& c : quot.coefficients()) {
            if (c.get_den() != 1) {
                return false;
            }
        }
    }
    return true;
}

Poly exact_quotient(const Poly& p, const Poly& d)
{
    if (!divides(d, p)) {
        throw std::domain_error("exact_quotient: divisor does not divide");
    }
    if (d.is_zero()) {
        return Poly({}, p.domain());
    }
    const auto q =
        divmod(p.with_domain(CoeffDomain::Rational), d.with_domain(CoeffDomain::Rational)).quotient;
    return q.with_domain(p.domain());
}

std::string to_string(const Poly& p)
{
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    const auto cs = p.coefficients();
    bool first = true;
    for (std::size_t k = 0; k < cs.size(); ++k) {
        const Rational& c = cs[k];
        if (c == 0) {
            continue;
        }
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first) {
            if (negative) {
                out += "-";
            }
        } else {
            out += negative ? " - " : " + ";
        }
        first = false;
        if (k == 0) {
            out += mag.get_str();
            continue;
        }
        if (mag != 1) {
            out += mag.get_str();
            out += "*";
        }
        out += "x";
        if (k > 1) {
            out += "^" + std::to_string(k);
        }
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << to_string(p); }

namespace {

class PolyParser {
public:
    PolyParser(std::string_view text, CoeffDomain domain) : text_(text), domain_(domain) {}

    Poly parse()
    {
        std::vector<Rational> acc;
        skip_ws();
        if (at_end()) {
            fail("empty polynomial");
        }
        bool first = true;
        while (!at_end()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            auto [c, k] = term();
            if (acc.size() <= k) {
                acc.resize(k + 1, Rational(0));
            }
            acc[k] += sign * c;
            skip_ws();
        }
        try {
            return Poly(std::move(acc), domain_);
        } catch (const std::invalid_argument&) {
            fail("non-integral coefficient for a Z[x] polynomial");
        }
    }

private:
    std::pair<Rational, std::size_t> term()
    {
        Rational c = 1;
        bool have_coeff = false;
        if (peek() == '(' || std::isdigit(static_cast<unsigned char>(peek()))) {
            c = coefficient();
            have_coeff = true;
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'x') {
                    fail("expected 'x' after '*'");
                }
            }
        }
        if (peek() == 'x') {
            ++pos_;
            skip_ws();
            std::size_t k = 1;
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                k = static_cast<std::size_t>(integer().get_ui());
            }
            return {c, k};
        }
        if (!have_coeff) {
            fail("expected coefficient or 'x'");
        }
        return {c, 0};
    }

    Rational coefficient()
    {
        if (peek() == '(') {
            ++pos_;
            skip_ws();
            int sign = 1;
            if (peek() == '-') {
                sign = -1;
                ++pos_;
                skip_ws();
            }
            Rational c = coefficient();
            skip_ws();
            if (peek() != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return sign * c;
        }
        Rational c(integer());
        skip_ws();
        if (peek() == '/') {
            ++pos_;
            skip_ws();
            const mpz_class den = integer();
            if (den == 0) {
                fail("zero denominator");
            }
            c /= Rational(den);
        }
        return c;
    }

    mpz_class integer()
    {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected integer");
        }
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    void skip_ws()
    {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) {
            ++pos_;
        }
    }
    [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
    [[nodiscard]] char peek() const { return at_end() ? '\0' : text_[pos_]; }

    [[noreturn]] void fail(const std::string& what) const
    {
        std::ostringstream os;
        os << "cannot parse polynomial '" << text_ << "' at offset " << pos_ << ": " << what;
        throw std::invalid_argument(os.str());
    }

    std::string_view text_;
    CoeffDomain domain_;
    std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, CoeffDomain domain)
{
    return PolyParser(text, domain).parse();
}

}  // namespace hdq
