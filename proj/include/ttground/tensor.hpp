#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace ttground {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using MatrixMap = Eigen::Map<Matrix>;
using ConstMatrixMap = Eigen::Map<const Matrix>;
using StridedMap = Eigen::Map<Matrix, 0, Eigen::OuterStride<>>;
using ConstStridedMap = Eigen::Map<const Matrix, 0, Eigen::OuterStride<>>;

inline constexpr Index kNoRankCap = std::numeric_limits<Index>::max();

enum class Direction { Left, Right };

/// Three-way array indexed [left bond, mode, right bond], stored column-major
/// (left bond fastest).  Both standard unfoldings are zero-copy views:
/// left_mat() is (left*mode) x right, right_mat() is left x (mode*right).
class Core3 {
public:
    Core3() = default;

    Core3(Index left, Index mode, Index right)
        : r0_(left), n_(mode), r1_(right) {
        if (left < 1 || mode < 1 || right < 1)
            throw std::invalid_argument("Core3: dimensions must be positive");
        data_ = Vector::Zero(left * mode * right);
    }

    static Core3 scalar(double value) {
        Core3 c(1, 1, 1);
        c.data_[0] = value;
        return c;
    }

    Index left() const { return r0_; }
    Index mode() const { return n_; }
    Index right() const { return r1_; }
    Index size() const { return data_.size(); }

    double& operator()(Index a, Index i, Index b) { return data_[a + r0_ * (i + n_ * b)]; }
    double operator()(Index a, Index i, Index b) const { return data_[a + r0_ * (i + n_ * b)]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    Vector& vec() { return data_; }
    const Vector& vec() const { return data_; }

    MatrixMap left_mat() { return {data_.data(), r0_ * n_, r1_}; }
    ConstMatrixMap left_mat() const { return {data_.data(), r0_ * n_, r1_}; }
    MatrixMap right_mat() { return {data_.data(), r0_, n_ * r1_}; }
    ConstMatrixMap right_mat() const { return {data_.data(), r0_, n_ * r1_}; }

    /// left x right slice at fixed mode index.
    ConstStridedMap mode_slice(Index i) const {
        return {data_.data() + r0_ * i, r0_, r1_, Eigen::OuterStride<>(r0_ * n_)};
    }

    double frobenius_norm() const { return data_.norm(); }

private:
    Index r0_ = 0, n_ = 0, r1_ = 0;
    Vector data_;
};

/// Four-way array indexed [left bond, row mode, col mode, right bond],
/// column-major (left bond fastest).
class Core4 {
public:
    Core4() = default;

    Core4(Index left, Index rows, Index cols, Index right)
        : R0_(left), n_(rows), m_(cols), R1_(right) {
        if (left < 1 || rows < 1 || cols < 1 || right < 1)
            throw std::invalid_argument("Core4: dimensions must be positive");
        data_ = Vector::Zero(left * rows * cols * right);
    }

    Index left() const { return R0_; }
    Index rows() const { return n_; }
    Index cols() const { return m_; }
    Index right() const { return R1_; }
    Index size() const { return data_.size(); }

    double& operator()(Index g, Index i, Index j, Index h) {
        return data_[g + R0_ * (i + n_ * (j + m_ * h))];
    }
    double operator()(Index g, Index i, Index j, Index h) const {
        return data_[g + R0_ * (i + n_ * (j + m_ * h))];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    Vector& vec() { return data_; }
    const Vector& vec() const { return data_; }

    /// left x right slice at fixed (row, col) mode pair.
    ConstStridedMap op_slice(Index i, Index j) const {
        return {data_.data() + R0_ * (i + n_ * j), R0_, R1_,
                Eigen::OuterStride<>(R0_ * n_ * m_)};
    }

private:
    Index R0_ = 0, n_ = 0, m_ = 0, R1_ = 0;
    Vector data_;
};

/// Permutes a column-major multi-way array.  dst axis t corresponds to src
/// axis perm[t]; dst is written column-major in the permuted order.
inline void permute(const double* src, const std::vector<Index>& src_dims,
                    const std::vector<int>& perm, double* dst) {
    const int K = static_cast<int>(src_dims.size());
    Index total = 1;
    for (Index d : src_dims) total *= d;
    std::vector<Index> dst_stride(K);
    Index s = 1;
    for (int t = 0; t < K; ++t) {
        dst_stride[t] = s;
        s *= src_dims[perm[t]];
    }
    // stride in dst when advancing src axis a by one
    std::vector<Index> advance(K);
    for (int t = 0; t < K; ++t) advance[perm[t]] = dst_stride[t];
    std::vector<Index> idx(K, 0);
    Index dpos = 0;
    for (Index p = 0; p < total; ++p) {
        dst[dpos] = src[p];
        for (int a = 0; a < K; ++a) {
            dpos += advance[a];
            if (++idx[a] < src_dims[a]) break;
            dpos -= src_dims[a] * advance[a];
            idx[a] = 0;
        }
    }
}

inline Vector permuted(const Vector& src, const std::vector<Index>& src_dims,
                       const std::vector<int>& perm) {
    Vector dst(src.size());
    permute(src.data(), src_dims, perm, dst.data());
    return dst;
}

/// Thin QR: M = Q R with Q of size rows x k, R of size k x cols, k = min(rows, cols).
inline std::pair<Matrix, Matrix> thin_qr(const Matrix& M) {
    Eigen::HouseholderQR<Matrix> qr(M);
    const Index k = std::min(M.rows(), M.cols());
    Matrix Q = qr.householderQ() * Matrix::Identity(M.rows(), k);
    Matrix R = qr.matrixQR().topRows(k);
    for (Index j = 0; j < R.cols(); ++j)
        for (Index i = j + 1; i < R.rows(); ++i) R(i, j) = 0.0;
    return {std::move(Q), std::move(R)};
}

}  // namespace ttground
