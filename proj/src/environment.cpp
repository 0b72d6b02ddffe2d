#include "ttground/environment.hpp"

#include <stdexcept>
#include <string>

namespace ttground {

// Index conventions inside this file: an environment E(beta, gamma, alpha)
// couples the bra bond, the operator bond and the ket bond.  All unfoldings
// below lean on the column-major core layout, so every contraction is a
// permute followed by a single GEMM.

Core3 contract_left_op(const Core3& L, const Core4& W, const Core3& ket) {
    const Index bl = L.left(), Rl = L.mode(), al = L.right();
    const Index n = W.rows(), m = W.cols(), Rr = W.right();
    if (Rl != W.left() || al != ket.left() || m != ket.mode())
        throw std::invalid_argument("contract_left_op: shape mismatch");
    const Index ar = ket.right();
    // T1(beta, gamma, j, alpha') = sum_alpha L(beta,gamma,alpha) ket(alpha,j,alpha')
    Matrix T1 = L.left_mat() * ket.right_mat();
    // reorder to (beta, alpha', gamma, j) and contract W over (gamma, j)
    Vector T1p(T1.size());
    permute(T1.data(), {bl, Rl, m, ar}, {0, 3, 1, 2}, T1p.data());
    Vector Wp = permuted(W.vec(), {Rl, n, m, Rr}, {0, 2, 1, 3});  // (gamma, j, i, gamma')
    Matrix T2 = ConstMatrixMap(T1p.data(), bl * ar, Rl * m) *
                ConstMatrixMap(Wp.data(), Rl * m, n * Rr);
    // T2 axes (beta, alpha', i, gamma') -> block (beta, i, gamma', alpha')
    Core3 out(bl, n, Rr * ar);
    permute(T2.data(), {bl, ar, n, Rr}, {0, 2, 3, 1}, out.data());
    return out;
}

Core3 contract_right_op(const Core3& R, const Core4& W, const Core3& ket) {
    const Index br = R.left(), Rr = R.mode(), ar = R.right();
    const Index Rl = W.left(), n = W.rows(), m = W.cols();
    if (Rr != W.right() || ar != ket.right() || m != ket.mode())
        throw std::invalid_argument("contract_right_op: shape mismatch");
    const Index al = ket.left();
    // T1(alpha, j, beta', gamma') = sum_alpha' ket(alpha,j,alpha') R(beta',gamma',alpha')
    Matrix T1 = ket.left_mat() * R.left_mat().transpose();
    // reorder to (alpha, beta', gamma', j) and contract W over (gamma', j)
    Vector T1p(T1.size());
    permute(T1.data(), {al, m, br, Rr}, {0, 2, 3, 1}, T1p.data());
    Vector Wp = permuted(W.vec(), {Rl, n, m, Rr}, {3, 2, 0, 1});  // (gamma', j, gamma, i)
    Matrix T2 = ConstMatrixMap(T1p.data(), al * br, Rr * m) *
                ConstMatrixMap(Wp.data(), Rr * m, Rl * n);
    // T2 axes (alpha, beta', gamma, i) -> block (gamma, alpha, i, beta')
    Core3 out(Rl * al, n, br);
    permute(T2.data(), {al, br, Rl, n}, {2, 0, 3, 1}, out.data());
    return out;
}

Core3 env_step_right(const Core3& L, const Core4& W, const Core3& bra,
                     const Core3& ket) {
    if (bra.left() != L.left() || bra.mode() != W.rows())
        throw std::invalid_argument("env_step_right: bra shape mismatch");
    const Core3 block = contract_left_op(L, W, ket);
    Core3 out(bra.right(), W.right(), ket.right());
    out.right_mat() = bra.left_mat().transpose() * block.left_mat();
    return out;
}

Core3 env_step_left(const Core3& R, const Core4& W, const Core3& bra,
                    const Core3& ket) {
    if (bra.right() != R.left() || bra.mode() != W.rows())
        throw std::invalid_argument("env_step_left: bra shape mismatch");
    const Core3 block = contract_right_op(R, W, ket);
    Core3 out(bra.left(), W.left(), ket.left());
    out.right_mat() = bra.right_mat() * block.right_mat().transpose();
    return out;
}

Matrix interface_left(const TTVector& x, const TTVector& z, Index k) {
    if (x.site_count() != z.site_count())
        throw std::invalid_argument("interface_left: site count mismatch");
    if (k < 0 || k > x.site_count())
        throw std::invalid_argument("interface_left: bond out of range");
    Matrix M = Matrix::Identity(1, 1);
    for (Index s = 0; s < k; ++s) {
        const Core3& xc = x.core(s);
        const Core3& zc = z.core(s);
        if (xc.mode() != zc.mode())
            throw std::invalid_argument("interface_left: mode mismatch");
        // T(alpha^x, j, alpha^z') = sum M(alpha^x, alpha^z) zc(alpha^z, j, alpha^z')
        Matrix T = M * zc.right_mat();
        M = xc.left_mat().transpose() *
            ConstMatrixMap(T.data(), xc.left() * xc.mode(), zc.right());
    }
    return M;
}

Matrix interface_right(const TTVector& x, const TTVector& z, Index k) {
    if (x.site_count() != z.site_count())
        throw std::invalid_argument("interface_right: site count mismatch");
    if (k < 0 || k > x.site_count())
        throw std::invalid_argument("interface_right: bond out of range");
    Matrix M = Matrix::Identity(1, 1);
    for (Index s = x.site_count() - 1; s >= k; --s) {
        const Core3& xc = x.core(s);
        const Core3& zc = z.core(s);
        if (xc.mode() != zc.mode())
            throw std::invalid_argument("interface_right: mode mismatch");
        // T(alpha^z, j, alpha^x') = sum zc(alpha^z, j, alpha^z') M(alpha^x', alpha^z')
        Matrix T = zc.left_mat() * M.transpose();
        M = xc.right_mat() *
            ConstMatrixMap(T.data(), zc.left(), xc.mode() * xc.right()).transpose();
    }
    return M;
}

EnvironmentStack::EnvironmentStack(Index sites) : d_(sites) {
    if (sites < 1) throw std::invalid_argument("EnvironmentStack: need sites");
    left_.assign(static_cast<size_t>(sites) + 1, Core3::scalar(1.0));
    right_.assign(static_cast<size_t>(sites) + 1, Core3::scalar(1.0));
    lvalid_.assign(static_cast<size_t>(sites) + 1, 0);
    rvalid_.assign(static_cast<size_t>(sites) + 1, 0);
    lvalid_[0] = 1;
    rvalid_[static_cast<size_t>(sites)] = 1;
}

EnvironmentStack::EnvironmentStack(const TTMatrix& A, const TTVector& x)
    : EnvironmentStack(x.site_count()) {
    rebuild(A, x);
}

const Core3& EnvironmentStack::left(Index k) const {
    if (k < 0 || k > d_) throw std::out_of_range("EnvironmentStack::left");
    if (!lvalid_[static_cast<size_t>(k)])
        throw std::logic_error("EnvironmentStack: stale left environment at bond " +
                               std::to_string(k));
    return left_[static_cast<size_t>(k)];
}

const Core3& EnvironmentStack::right(Index k) const {
    if (k < 0 || k > d_) throw std::out_of_range("EnvironmentStack::right");
    if (!rvalid_[static_cast<size_t>(k)])
        throw std::logic_error("EnvironmentStack: stale right environment at bond " +
                               std::to_string(k));
    return right_[static_cast<size_t>(k)];
}

void EnvironmentStack::push_left(Index k, const Core4& W, const Core3& bra,
                                 const Core3& ket) {
    left_[static_cast<size_t>(k) + 1] = env_step_right(left(k), W, bra, ket);
    lvalid_[static_cast<size_t>(k) + 1] = 1;
}

void EnvironmentStack::push_right(Index k, const Core4& W, const Core3& bra,
                                  const Core3& ket) {
    right_[static_cast<size_t>(k)] = env_step_left(right(k + 1), W, bra, ket);
    rvalid_[static_cast<size_t>(k)] = 1;
}

void EnvironmentStack::invalidate_site(Index k) {
    if (k < 0 || k >= d_) throw std::out_of_range("EnvironmentStack::invalidate_site");
    for (Index j = k + 1; j <= d_; ++j) lvalid_[static_cast<size_t>(j)] = 0;
    for (Index j = 0; j <= k; ++j) rvalid_[static_cast<size_t>(j)] = 0;
}

void EnvironmentStack::rebuild(const TTMatrix& A, const TTVector& x) {
    if (A.site_count() != d_ || x.site_count() != d_)
        throw std::invalid_argument("EnvironmentStack: site count mismatch");
    left_.assign(static_cast<size_t>(d_) + 1, Core3::scalar(1.0));
    right_.assign(static_cast<size_t>(d_) + 1, Core3::scalar(1.0));
    lvalid_.assign(static_cast<size_t>(d_) + 1, 0);
    rvalid_.assign(static_cast<size_t>(d_) + 1, 0);
    lvalid_[0] = 1;
    rvalid_[static_cast<size_t>(d_)] = 1;
    for (Index k = d_ - 1; k >= 0; --k)
        push_right(k, A.core(k), x.core(k), x.core(k));
}

}  // namespace ttground
