#include "hdq/matrix.hpp"

#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hdq {

PolyMatrix::PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

PolyMatrix::PolyMatrix(std::vector<PolyVector> rows)
{
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows.front().size();
    data_.reserve(rows_ * cols_);
    for (auto& r : rows) {
        if (r.size() != cols_) {
            throw std::invalid_argument("ragged matrix rows");
        }
        for (auto& e : r) {
            data_.push_back(std::move(e));
        }
    }
}

PolyMatrix PolyMatrix::identity(std::size_t n)
{
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = Poly::one();
    }
    return m;
}

PolyVector PolyMatrix::row(std::size_t i) const
{
    return PolyVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                      data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

void PolyMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < cols_; ++j) {
        std::swap(at(a, j), at(b, j));
    }
}

void PolyMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b) {
        return;
    }
    for (std::size_t i = 0; i < rows_; ++i) {
        std::swap(at(i, a), at(i, b));
    }
}

void PolyMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Poly& f)
{
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!at(src, j).is_zero()) {
            at(dst, j) += f * at(src, j);
        }
    }
}

void PolyMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Poly& f)
{
    for (std::size_t i = 0; i < rows_; ++i) {
        if (!at(i, src).is_zero()) {
            at(i, dst) += f * at(i, src);
        }
    }
}

void PolyMatrix::scale_row(std::size_t i, const Rational& c)
{
    for (std::size_t j = 0; j < cols_; ++j) {
        at(i, j) *= c;
    }
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    PolyMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k).is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        }
    }
    return out;
}

PolyVector operator*(const PolyVector& v, const PolyMatrix& m)
{
    if (v.size() != m.rows()) {
        throw std::invalid_argument("vector length does not match matrix rows");
    }
    PolyVector out(m.cols());
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] += v[k] * m.at(k, j);
        }
    }
    return out;
}

std::string to_string(const PolyMatrix& m)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << (j ? "; " : "") << to_string(m.at(i, j));
        }
        os << '\n';
    }
    return os.str();
}

PolyMatrix parse_matrix(std::string_view text)
{
    std::vector<PolyVector> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        PolyVector row;
        std::size_t start = 0;
        while (true) {
            const auto semi = line.find(';', start);
            row.push_back(parse_poly(std::string_view(line).substr(start, semi - start)));
            if (semi == std::string::npos) {
                break;
            }
            start = semi + 1;
        }
        rows.push_back(std::move(row));
    }
    return PolyMatrix(std::move(rows));
}

PolyVector SNFDecomposition::diagonal() const
{
    PolyVector d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) {
        d.push_back(D.at(i, i));
    }
    return d;
}

namespace {

struct Position {
    std::size_t i;
    std::size_t j;
};

std::optional<Position> min_degree_entry(const PolyMatrix& m, std::size_t t)
{
    std::optional<Position> best;
    for (std::size_t i = t; i < m.rows(); ++i) {
        for (std::size_t j = t; j < m.cols(); ++j) {
            const Poly& e = m.at(i, j);
            if (!e.is_zero() && (!best || e.degree() < m.at(best->i, best->j).degree())) {
                best = Position{i, j};
            }
        }
    }
    return best;
}

}  // namespace

SNFDecomposition smith_normal_form(const PolyMatrix& a)
{
    SNFDecomposition s{PolyMatrix::identity(a.rows()), PolyMatrix::identity(a.cols()),
                       PolyMatrix::identity(a.cols()), a};
    PolyMatrix& d = s.D;
    const std::size_t steps = std::min(a.rows(), a.cols());

    for (std::size_t t = 0; t < steps; ++t) {
        while (true) {
            const auto pos = min_degree_entry(d, t);
            if (!pos) {
                return s;
            }
            d.swap_rows(t, pos->i);
            s.U.swap_rows(t, pos->i);
            d.swap_cols(t, pos->j);
            s.V.swap_cols(t, pos->j);
            s.V_inverse.swap_rows(t, pos->j);

            const Rational lead_inv = 1 / d.at(t, t).leading();
            d.scale_row(t, lead_inv);
            s.U.scale_row(t, lead_inv);

            bool clean = true;
            for (std::size_t i = t + 1; i < d.rows(); ++i) {
                if (d.at(i, t).is_zero()) {
                    continue;
                }
                const auto [q, r] = divmod(d.at(i, t), d.at(t, t));
                d.add_row_multiple(i, t, -q);
                s.U.add_row_multiple(i, t, -q);
                clean = clean && r.is_zero();
            }
            for (std::size_t j = t + 1; j < d.cols(); ++j) {
                if (d.at(t, j).is_zero()) {
                    continue;
                }
                const auto [q, r] = divmod(d.at(t, j), d.at(t, t));
                d.add_col_multiple(j, t, -q);
                s.V.add_col_multiple(j, t, -q);
                s.V_inverse.add_row_multiple(t, j, q);
                clean = clean && r.is_zero();
            }
            if (!clean) {
                continue;
            }

            // Pull in any entry the pivot does not divide; the next pass
            // leaves a remainder of smaller degree in row t.
            bool chain = true;
            for (std::size_t i = t + 1; i < d.rows() && chain; ++i) {
                for (std::size_t j = t + 1; j < d.cols(); ++j) {
                    if (!divides(d.at(t, t), d.at(i, j))) {
                        d.add_row_multiple(t, i, Poly::one());
                        s.U.add_row_multiple(t, i, Poly::one());
                        chain = false;
                        break;
                    }
                }
            }
            if (chain) {
                break;
            }
        }
    }
    return s;
}

}  // namespace hdq
