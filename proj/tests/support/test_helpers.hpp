#pragma once

#include "ttground/rng.hpp"
#include "ttground/tt_matrix.hpp"
#include "ttground/tt_vector.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ttground::test {

inline Matrix kron(const Matrix& A, const Matrix& B) {
    Matrix K(A.rows() * B.rows(), A.cols() * B.cols());
    for (Index i = 0; i < A.rows(); ++i)
        for (Index j = 0; j < A.cols(); ++j)
            K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    return K;
}

// spin-1 operators in the basis (m = +1, 0, -1)
inline Matrix spin1_sz() {
    Matrix S = Matrix::Zero(3, 3);
    S(0, 0) = 1.0;
    S(2, 2) = -1.0;
    return S;
}

inline Matrix spin1_sp() {
    const double s = std::sqrt(2.0);
    Matrix S = Matrix::Zero(3, 3);
    S(0, 1) = s;
    S(1, 2) = s;
    return S;
}

inline Matrix spin1_sm() { return spin1_sp().transpose(); }

/// S_z S_z + (S_+ S_- + S_- S_+) / 2 acting on a neighbouring pair.
inline Matrix spin1_bond() {
    return kron(spin1_sz(), spin1_sz()) + 0.5 * kron(spin1_sp(), spin1_sm()) +
           0.5 * kron(spin1_sm(), spin1_sp());
}

/// Brute-force spin-1 Heisenberg chain on d sites (site 1 is the slowest
/// dense index).  Independent of the MPO construction on purpose.
inline Matrix dense_heisenberg(Index d, bool periodic) {
    if (d < 2) throw std::invalid_argument("dense_heisenberg: need at least 2 sites");
    Index N = 1;
    for (Index k = 0; k < d; ++k) N *= 3;
    Matrix H = Matrix::Zero(N, N);
    const Matrix bond = spin1_bond();
    for (Index k = 0; k + 1 < d; ++k) {
        Matrix term = Matrix::Identity(1, 1);
        for (Index l = 0; l < d; ++l) {
            if (l == k) {
                term = kron(term, bond);
                ++l;  // bond covers sites k and k+1
                continue;
            }
            term = kron(term, Matrix::Identity(3, 3));
        }
        H += term;
    }
    if (periodic) {
        const Matrix ops[3][2] = {{spin1_sz(), spin1_sz()},
                                  {0.5 * spin1_sp(), spin1_sm()},
                                  {0.5 * spin1_sm(), spin1_sp()}};
        for (const auto& pair : ops) {
            Matrix term = pair[1];  // site 1 factor is leftmost
            for (Index l = 1; l + 1 < d; ++l) term = kron(term, Matrix::Identity(3, 3));
            term = kron(term, pair[0]);
            H += term;
        }
    }
    return H;
}

struct DenseEig {
    double lambda = 0.0;
    Vector vector;
};

inline DenseEig dense_min_eig(const Matrix& H) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    DenseEig out;
    out.lambda = es.eigenvalues()(0);
    out.vector = es.eigenvectors().col(0);
    return out;
}

inline Vector random_dense(Index size, std::uint64_t seed) {
    NormalStream rng(seed);
    Vector v(size);
    for (Index i = 0; i < size; ++i) v[i] = rng.next_normal();
    return v;
}

/// Densifier of cores 0..k-1 of x: (n_1 ... n_{k-1}) x r_k, rows ordered as
/// in tt_to_dense (later digits fastest).
inline Matrix prefix_frame(const TTVector& x, Index k) {
    Matrix P = Matrix::Ones(1, 1);
    for (Index l = 0; l < k; ++l) {
        const Core3& c = x.core(l);
        Matrix T = P * c.right_mat();
        Matrix P2(P.rows() * c.mode(), c.right());
        permute(T.data(), {P.rows(), c.mode(), c.right()}, {1, 0, 2}, P2.data());
        P = std::move(P2);
    }
    return P;
}

/// Densifier of cores k..d-1 of x: (n_k ... n_d) x r_k.
inline Matrix suffix_frame(const TTVector& x, Index k) {
    Matrix Q = Matrix::Ones(1, 1);
    for (Index l = x.site_count() - 1; l >= k; --l) {
        const Core3& c = x.core(l);
        Matrix M = c.left_mat() * Q.transpose();
        Matrix Q2(Q.rows() * c.mode(), c.left());
        permute(M.data(), {c.left(), c.mode(), Q.rows()}, {2, 1, 0}, Q2.data());
        Q = std::move(Q2);
    }
    return Q;
}

/// Dense frame of the one-site problem at site k: maps a core laid out
/// (r_{k-1}, n_k, r_k) to the full vector with everything else fixed by x.
inline Matrix frame_matrix(const TTVector& x, Index k) {
    const Matrix P = prefix_frame(x, k);
    const Matrix Q = suffix_frame(x, k + 1);
    const Index n = x.core(k).mode(), rl = P.cols(), rr = Q.cols();
    Matrix F(P.rows() * n * Q.rows(), rl * n * rr);
    Matrix e = Matrix::Zero(n, 1);
    for (Index b = 0; b < rr; ++b)
        for (Index i = 0; i < n; ++i)
            for (Index a = 0; a < rl; ++a) {
                e.setZero();
                e(i, 0) = 1.0;
                F.col(a + rl * (i + n * b)) = kron(kron(P.col(a), e), Q.col(b));
            }
    return F;
}

/// Frame of the two-site problem at sites (k, k+1); the merged mode index
/// runs i_k fastest.
inline Matrix frame_matrix2(const TTVector& x, Index k) {
    const Matrix P = prefix_frame(x, k);
    const Matrix Q = suffix_frame(x, k + 2);
    const Index n1 = x.core(k).mode(), n2 = x.core(k + 1).mode();
    const Index rl = P.cols(), rr = Q.cols();
    Matrix F(P.rows() * n1 * n2 * Q.rows(), rl * n1 * n2 * rr);
    Matrix e1 = Matrix::Zero(n1, 1), e2 = Matrix::Zero(n2, 1);
    for (Index b = 0; b < rr; ++b)
        for (Index i2 = 0; i2 < n2; ++i2)
            for (Index i1 = 0; i1 < n1; ++i1)
                for (Index a = 0; a < rl; ++a) {
                    e1.setZero();
                    e1(i1, 0) = 1.0;
                    e2.setZero();
                    e2(i2, 0) = 1.0;
                    F.col(a + rl * (i1 + n1 * (i2 + n2 * b))) =
                        kron(kron(kron(P.col(a), e1), e2), Q.col(b));
                }
    return F;
}

inline TTMatrix random_mpo(const std::vector<Index>& row_modes,
                           const std::vector<Index>& col_modes,
                           const std::vector<Index>& op_ranks, std::uint64_t seed) {
    NormalStream rng(seed);
    std::vector<Core4> cores;
    for (size_t k = 0; k < row_modes.size(); ++k) {
        Core4 W(op_ranks[k], row_modes[k], col_modes[k], op_ranks[k + 1]);
        for (Index p = 0; p < W.size(); ++p) W.data()[p] = rng.next_normal();
        cores.push_back(std::move(W));
    }
    return TTMatrix(std::move(cores));
}

}  // namespace ttground::test
