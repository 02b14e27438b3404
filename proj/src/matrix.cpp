#include "sympl/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sympl/errors.hpp"
#include "sympl/kernels.hpp"

namespace sympl {

namespace {

void require_finite(std::span<const double> values) {
    for (double v : values)
        if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "matrix entry is not finite");
}

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::ShapeMismatch,
                    std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                        std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                        std::to_string(b.cols()));
}

}  // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols)
        throw Error(ErrorCode::ShapeMismatch, "entry count does not match rows x cols");
    require_finite(data_);
}

DenseMatrix::DenseMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw Error(ErrorCode::ShapeMismatch, "ragged initializer rows");
        data_.insert(data_.end(), r.begin(), r.end());
    }
    require_finite(data_);
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
    require_finite(values);
    DenseMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

std::vector<double> DenseMatrix::column(std::size_t j) const {
    std::vector<double> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void DenseMatrix::set_column(std::size_t j, std::span<const double> values) {
    if (values.size() != rows_) throw Error(ErrorCode::ShapeMismatch, "column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

DenseMatrix DenseMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr,
                               std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw Error(ErrorCode::ShapeMismatch, "block exceeds matrix bounds");
    DenseMatrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        std::copy_n(data_.data() + (r0 + i) * cols_ + c0, nc, out.data_.data() + i * nc);
    return out;
}

void DenseMatrix::set_block(std::size_t r0, std::size_t c0, const DenseMatrix& b) {
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw Error(ErrorCode::ShapeMismatch, "block exceeds matrix bounds");
    for (std::size_t i = 0; i < b.rows_; ++i)
        std::copy_n(b.data_.data() + i * b.cols_, b.cols_, data_.data() + (r0 + i) * cols_ + c0);
}

DenseMatrix DenseMatrix::select_columns(std::span<const std::size_t> indices) const {
    DenseMatrix out(rows_, indices.size());
    for (std::size_t c = 0; c < indices.size(); ++c) {
        if (indices[c] >= cols_) throw Error(ErrorCode::ShapeMismatch, "column index out of range");
        for (std::size_t i = 0; i < rows_; ++i) out(i, c) = (*this)(i, indices[c]);
    }
    return out;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "matrix addition");
    kernels::active().axpy(1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "matrix subtraction");
    kernels::active().axpy(-1.0, other.data_.data(), data_.data(), data_.size());
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

DenseMatrix transpose(const DenseMatrix& a) {
    DenseMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

DenseMatrix multiply(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorCode::ShapeMismatch,
                    "matrix product: inner dimensions " + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()));
    DenseMatrix c(a.rows(), b.cols());
    if (c.empty()) return c;
    if (a.cols() == 0) return c;
    kernels::active().gemm(a.rows(), a.cols(), b.cols(), a.data().data(), b.data().data(),
                           c.data().data());
    return c;
}

DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) { return multiply(a, b); }

DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
DenseMatrix operator*(double s, DenseMatrix a) { return a *= s; }

std::vector<double> operator*(const DenseMatrix& a, std::span<const double> x) {
    if (a.cols() != x.size()) throw Error(ErrorCode::ShapeMismatch, "matrix-vector product");
    std::vector<double> y(a.rows());
    const auto& k = kernels::active();
    for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
    return y;
}

DenseMatrix multiply_transposed_left(const DenseMatrix& a, const DenseMatrix& b) {
    return multiply(transpose(a), b);
}

double frobenius_norm(const DenseMatrix& a) noexcept {
    return norm2(a.data());
}

double norm2(std::span<const double> x) noexcept {
    // Scaled accumulation keeps tiny and huge entries from under/overflowing.
    double scale = 0.0;
    double ssq = 1.0;
    for (double v : x) {
        if (v == 0.0) continue;
        const double av = std::abs(v);
        if (scale < av) {
            ssq = 1.0 + ssq * (scale / av) * (scale / av);
            scale = av;
        } else {
            ssq += (av / scale) * (av / scale);
        }
    }
    return scale * std::sqrt(ssq);
}

double trace(const DenseMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "trace of a non-square matrix");
    double t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

double symmetry_residual(const DenseMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "matrix is not square");
    double ssq = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double d = a(i, j) - a(j, i);
            ssq += 2.0 * d * d;
        }
    return std::sqrt(ssq);
}

double skew_residual(const DenseMatrix& a) {
    if (!a.is_square()) throw Error(ErrorCode::NotSquare, "matrix is not square");
    double ssq = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j) {
            const double d = a(i, j) + a(j, i);
            ssq += (i == j ? 1.0 : 2.0) * d * d;
        }
    return std::sqrt(ssq);
}

DenseMatrix hstack(std::span<const DenseMatrix> blocks) {
    if (blocks.empty()) return {};
    const std::size_t rows = blocks.front().rows();
    std::size_t cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw Error(ErrorCode::ShapeMismatch, "hstack row mismatch");
        cols += b.cols();
    }
    DenseMatrix out(rows, cols);
    std::size_t c0 = 0;
    for (const auto& b : blocks) {
        out.set_block(0, c0, b);
        c0 += b.cols();
    }
    return out;
}

DenseMatrix block_diagonal(std::span<const DenseMatrix> blocks) {
    std::size_t rows = 0, cols = 0;
    for (const auto& b : blocks) {
        rows += b.rows();
        cols += b.cols();
    }
    DenseMatrix out(rows, cols);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        out.set_block(r0, c0, b);
        r0 += b.rows();
        c0 += b.cols();
    }
    return out;
}

}  // namespace sympl
