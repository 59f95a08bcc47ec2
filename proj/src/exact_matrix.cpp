#include "teich/exact_matrix.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace teich {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    RationalMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged integer matrix");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = static_cast<long>(rows[i][j]);
    }
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matrix product shape mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                if (sgn(rhs(k, j)) != 0) out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw std::invalid_argument("matrix sum shape mismatch");
    RationalMatrix out(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
    return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& rhs) const { return *this + (-rhs); }

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix out(*this);
    for (auto& x : out.data_) x = -x;
    return out;
}

std::vector<Rational> RationalMatrix::operator*(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0) return false;
    return true;
}

bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::vector<std::size_t> RationalMatrix::reduce(Rational* det) {
    std::vector<std::size_t> pivots;
    Rational determinant = 1;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t pivot = row;
        while (pivot < rows_ && sgn((*this)(pivot, col)) == 0) ++pivot;
        if (pivot == rows_) {
            determinant = 0;
            continue;
        }
        if (pivot != row) {
            for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(pivot, j), (*this)(row, j));
            determinant = -determinant;
        }
        const Rational lead = (*this)(row, col);
        determinant *= lead;
        for (std::size_t j = col; j < cols_; ++j) (*this)(row, j) /= lead;
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i == row) continue;
            const Rational factor = (*this)(i, col);
            if (sgn(factor) == 0) continue;
            for (std::size_t j = col; j < cols_; ++j) (*this)(i, j) -= factor * (*this)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    if (det != nullptr) *det = pivots.size() == rows_ ? determinant : Rational(0);
    return pivots;
}

std::size_t RationalMatrix::rank() const {
    RationalMatrix copy(*this);
    return copy.reduce().size();
}

Rational RationalMatrix::determinant() const {
    if (rows_ != cols_) throw std::invalid_argument("determinant of a non-square matrix");
    RationalMatrix copy(*this);
    Rational det;
    copy.reduce(&det);
    return det;
}

RationalMatrix RationalMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    RationalMatrix augmented = hstack(*this, identity(rows_));
    const auto pivots = augmented.reduce();
    if (pivots.size() < rows_ || pivots.back() >= cols_) throw std::domain_error("singular matrix");
    RationalMatrix inv(rows_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < rows_; ++j) inv(i, j) = augmented(i, cols_ + j);
    return inv;
}

RationalMatrix RationalMatrix::nullspace() const {
    RationalMatrix rref(*this);
    const auto pivots = rref.reduce();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t j = 0; j < cols_; ++j)
        if (!is_pivot[j]) free_cols.push_back(j);
    RationalMatrix basis(cols_, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        const std::size_t f = free_cols[k];
        basis(f, k) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = -rref(r, f);
    }
    return basis;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out << '[';
        for (std::size_t j = 0; j < cols_; ++j) out << (j ? " " : "") << (*this)(i, j).get_str();
        out << "]\n";
    }
    return out.str();
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    RationalMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

}  // namespace teich
