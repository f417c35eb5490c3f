#pragma once

// Dense row-major matrices and the handful of products the network needs.
// Loop orders are fixed, so results are bit-reproducible for a given input
// on a given platform.

#include <cstddef>
#include <span>
#include <vector>

#include "lingaff/error.hpp"

namespace lingaff {

template <typename T>
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    std::span<T> row(int r) { return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)}; }
    std::span<const T> row(int r) const {
        return {data_.data() + static_cast<std::size_t>(r) * cols_, static_cast<std::size_t>(cols_)};
    }

    std::vector<T>& data() { return data_; }
    const std::vector<T>& data() const { return data_; }

    bool operator==(const Mat&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

namespace detail {
inline void require(bool ok, const char* what) {
    if (!ok) throw DimensionError(what);
}
}  // namespace detail

/// C = A * B
template <typename T>
Mat<T> matmul(const Mat<T>& a, const Mat<T>& b) {
    detail::require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    Mat<T> c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        T* crow = c.row(i).data();
        for (int k = 0; k < a.cols(); ++k) {
            const T aik = a(i, k);
            if (aik == T{}) continue;
            const T* brow = b.row(k).data();
            for (int j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

/// C = A^T * B  (A is rows x m, B is rows x n, C is m x n)
template <typename T>
Mat<T> matmul_at_b(const Mat<T>& a, const Mat<T>& b) {
    detail::require(a.rows() == b.rows(), "matmul_at_b: row counts differ");
    Mat<T> c(a.cols(), b.cols());
    for (int k = 0; k < a.rows(); ++k) {
        const T* arow = a.row(k).data();
        const T* brow = b.row(k).data();
        for (int i = 0; i < a.cols(); ++i) {
            const T aki = arow[i];
            if (aki == T{}) continue;
            T* crow = c.row(i).data();
            for (int j = 0; j < b.cols(); ++j) crow[j] += aki * brow[j];
        }
    }
    return c;
}

/// C = A * B^T  (A is m x k, B is n x k, C is m x n)
template <typename T>
Mat<T> matmul_a_bt(const Mat<T>& a, const Mat<T>& b) {
    detail::require(a.cols() == b.cols(), "matmul_a_bt: inner dimensions differ");
    Mat<T> c(a.rows(), b.rows());
    for (int i = 0; i < a.rows(); ++i) {
        const T* arow = a.row(i).data();
        for (int j = 0; j < b.rows(); ++j) {
            const T* brow = b.row(j).data();
            T acc{};
            for (int k = 0; k < a.cols(); ++k) acc += arow[k] * brow[k];
            c(i, j) = acc;
        }
    }
    return c;
}

/// Add a bias row vector to every row of m.
template <typename T>
void add_row_bias(Mat<T>& m, std::span<const T> bias) {
    detail::require(static_cast<std::size_t>(m.cols()) == bias.size(), "add_row_bias: width mismatch");
    for (int i = 0; i < m.rows(); ++i) {
        T* row = m.row(i).data();
        for (int j = 0; j < m.cols(); ++j) row[j] += bias[static_cast<std::size_t>(j)];
    }
}

template <typename T>
void relu_inplace(Mat<T>& m) {
    for (T& x : m.data())
        if (x < T{}) x = T{};
}

/// grad *= 1[activation > 0], the backward mask of a ReLU layer.
template <typename T>
void relu_backward_inplace(Mat<T>& grad, const Mat<T>& activation) {
    detail::require(grad.rows() == activation.rows() && grad.cols() == activation.cols(),
                    "relu_backward_inplace: shape mismatch");
    const std::size_t n = grad.size();
    for (std::size_t i = 0; i < n; ++i)
        if (!(activation.data()[i] > T{})) grad.data()[i] = T{};
}

template <typename T>
std::vector<T> column_sums(const Mat<T>& m) {
    std::vector<T> sums(static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        const T* row = m.row(i).data();
        for (int j = 0; j < m.cols(); ++j) sums[static_cast<std::size_t>(j)] += row[j];
    }
    return sums;
}

}  // namespace lingaff
