#pragma once

// Dense matrices over Q[x] and their Smith normal form.

#include "hdq/poly.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hdq {

using PolyVector = std::vector<Poly>;

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(std::size_t rows, std::size_t cols);
    /// Rows must all have the same length.
    explicit PolyMatrix(std::vector<PolyVector> rows);

    static PolyMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] Poly& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    [[nodiscard]] const Poly& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    [[nodiscard]] PolyVector row(std::size_t i) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /// row[dst] += f * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Poly& f);
    /// col[dst] += f * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Poly& f);
    void scale_row(std::size_t i, const Rational& c);

    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    PolyVector data_;
};

/// Throws std::invalid_argument on a dimension mismatch.
PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
/// Row vector times matrix.
PolyVector operator*(const PolyVector& v, const PolyMatrix& m);

std::string to_string(const PolyMatrix& m);

/// One row per non-empty line, entries separated by `;`. Lines starting with
/// `#` are comments.
PolyMatrix parse_matrix(std::string_view text);

struct SNFDecomposition {
    PolyMatrix U;
    PolyMatrix V;
    PolyMatrix V_inverse;
    PolyMatrix D;

    /// D(i, i) for i < min(rows, cols).
    [[nodiscard]] PolyVector diagonal() const;
};

/// U * A * V = D with U, V invertible over Q[x], D diagonal with monic
/// nonzero entries d_1 | d_2 | ... followed by zeros. The pivot is the
/// minimal-degree nonzero entry of the remaining block, ties broken row-major.
SNFDecomposition smith_normal_form(const PolyMatrix& a);

}  // namespace hdq
