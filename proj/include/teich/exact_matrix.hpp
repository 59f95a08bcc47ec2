#pragma once

// Dense matrices over the rationals with exact Gaussian elimination.

#include "teich/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace teich {

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols);

    static RationalMatrix identity(std::size_t n);
    static RationalMatrix from_integers(const std::vector<std::vector<std::int64_t>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    RationalMatrix transpose() const;
    RationalMatrix operator*(const RationalMatrix& rhs) const;
    RationalMatrix operator+(const RationalMatrix& rhs) const;
    RationalMatrix operator-(const RationalMatrix& rhs) const;
    RationalMatrix operator-() const;
    std::vector<Rational> operator*(const std::vector<Rational>& v) const;

    bool is_zero() const;
    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b);

    std::size_t rank() const;
    Rational determinant() const;
    // Throws std::domain_error when singular.
    RationalMatrix inverse() const;
    // Columns form a basis of {x : A x = 0}.
    RationalMatrix nullspace() const;

    std::string to_string() const;

private:
    // Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> reduce(Rational* det = nullptr);

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Horizontal concatenation [a | b].
RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace teich
