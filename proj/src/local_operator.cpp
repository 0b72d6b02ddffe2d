#include "ttground/local_operator.hpp"

#include <stdexcept>

namespace ttground {

LocalOperator::LocalOperator(const Core3& left_env, const Core4& W,
                             const Core3& right_env)
    : L_(left_env), W_(W), R_(right_env) {
    if (L_.mode() != W_.left() || R_.mode() != W_.right())
        throw std::invalid_argument("LocalOperator: operator bonds do not match");
    if (W_.rows() != W_.cols())
        throw std::invalid_argument("LocalOperator: needs square mode blocks");
    rl_ = L_.right();  // ket side; bra and ket ranks agree for <x|A|x>
    n_ = W_.rows();
    rr_ = R_.right();
}

Core3 LocalOperator::apply(const Core3& v) const {
    const Core3 block = contract_left_op(L_, W_, v);
    Core3 out(L_.left(), n_, R_.left());
    // contract (g', b') of the block against the right environment
    out.left_mat() = block.left_mat() * R_.right_mat().transpose();
    return out;
}

void LocalOperator::apply_vec(const double* in, double* out) const {
    Core3 v(rl_, n_, rr_);
    v.vec() = ConstMatrixMap(in, dim(), 1);
    Core3 w = apply(v);
    MatrixMap(out, dim(), 1) = w.vec();
}

Matrix LocalOperator::dense() const {
    const Index N = dim();
    Matrix H = Matrix::Zero(N, N);
    Matrix Wslice(n_, n_);
    const Index nl = rl_ * n_;
    Matrix inner(nl, nl);
    for (Index gr = 0; gr < W_.right(); ++gr) {
        inner.setZero();
        for (Index gl = 0; gl < W_.left(); ++gl) {
            for (Index j = 0; j < n_; ++j)
                for (Index i = 0; i < n_; ++i) Wslice(i, j) = W_(gl, i, j, gr);
            const auto Lslice = L_.mode_slice(gl);  // (a, a')
            for (Index i = 0; i < n_; ++i)
                for (Index j = 0; j < n_; ++j)
                    if (Wslice(i, j) != 0.0)
                        inner.block(i * rl_, j * rl_, rl_, rl_) += Wslice(i, j) * Lslice;
        }
        const auto Rslice = R_.mode_slice(gr);  // (b, b')
        for (Index b = 0; b < rr_; ++b)
            for (Index bp = 0; bp < rr_; ++bp)
                if (Rslice(b, bp) != 0.0)
                    H.block(b * nl, bp * nl, nl, nl) += Rslice(b, bp) * inner;
    }
    return H;
}

Matrix local_dense(const LocalOperator& op) {
    const Index N = op.dim();
    if (N > 1500) throw std::invalid_argument("local_dense: dimension above 1500");
    Matrix H(N, N);
    Vector e = Vector::Zero(N);
    for (Index c = 0; c < N; ++c) {
        e[c] = 1.0;
        op.apply_vec(e.data(), H.col(c).data());
        e[c] = 0.0;
    }
    return H;
}

Core4 merge_op_pair(const Core4& W1, const Core4& W2) {
    if (W1.right() != W2.left())
        throw std::invalid_argument("merge_op_pair: bond mismatch");
    const Index R = W1.left(), n1 = W1.rows(), m1 = W1.cols();
    const Index n2 = W2.rows(), m2 = W2.cols(), Rr = W2.right();
    Matrix P = ConstMatrixMap(W1.data(), R * n1 * m1, W1.right()) *
               ConstMatrixMap(W2.data(), W2.left(), n2 * m2 * Rr);
    // P axes (g, i1, j1, i2, j2, g'); composite modes need (i1, i2) adjacent
    Core4 out(R, n1 * n2, m1 * m2, Rr);
    permute(P.data(), {R, n1, m1, n2, m2, Rr}, {0, 1, 3, 2, 4, 5}, out.data());
    return out;
}

}  // namespace ttground
