#include "ttground/oracle.hpp"

#include "ttground/local_eig.hpp"
#include "ttground/rng.hpp"
#include "ttground/tt_ops.hpp"

#include <Eigen/Eigenvalues>

#include <sstream>
#include <stdexcept>

namespace ttground {

namespace {

Index checked_size(const TTMatrix& A, Index guard, const char* who) {
    Index rows = 1;
    for (Index n : A.row_modes()) {
        rows *= n;
        if (rows > guard) {
            std::ostringstream msg;
            msg << who << ": operator larger than the " << guard << " row guard";
            throw std::invalid_argument(msg.str());
        }
    }
    Index cols = 1;
    for (Index m : A.col_modes()) cols *= m;
    if (cols != rows)
        throw std::invalid_argument(std::string(who) + ": operator is not square");
    return rows;
}

}  // namespace

Vector mpo_matvec_dense(const TTMatrix& A, const Vector& v) {
    const Index N = checked_size(A, 531441, "mpo_matvec_dense");
    if (v.size() != N)
        throw std::invalid_argument("mpo_matvec_dense: vector length mismatch");
    const Index d = A.site_count();
    // State X over axes (remaining cols, operator bond, produced rows),
    // fastest first.  Site k turns the j_k slice of the tail into i_k rows.
    Vector X = v, next;
    Index rows_done = 1, tail = N, Rcur = 1;
    for (Index k = 0; k < d; ++k) {
        const Core4& W = A.core(k);
        const Index n = W.rows(), m = W.cols(), Rr = W.right();
        const Index tail_next = tail / m;
        // Wp rows (j, gamma), cols (i, gamma')
        Vector Wp = permuted(W.vec(), {Rcur, n, m, Rr}, {2, 0, 1, 3});
        ConstMatrixMap Wmat(Wp.data(), m * Rcur, n * Rr);
        next.resize(tail_next * Rr * rows_done * n);
        Matrix Y(tail_next, n * Rr);
        for (Index I = 0; I < rows_done; ++I) {
            ConstMatrixMap slice(X.data() + tail * Rcur * I, tail_next, m * Rcur);
            Y = slice * Wmat;  // axes (t', i, gamma')
            permute(Y.data(), {tail_next, n, Rr}, {0, 2, 1},
                    next.data() + tail_next * Rr * n * I);
        }
        X.swap(next);
        rows_done *= n;
        tail = tail_next;
        Rcur = Rr;
    }
    return X;
}

GroundState exact_ground_state(const TTMatrix& A, OracleMethod method) {
    GroundState out;
    if (method == OracleMethod::Dense) {
        checked_size(A, 6561, "exact_ground_state[dense]");
        const Matrix H = mpo_to_dense_guarded(A, 6561);
        Eigen::SelfAdjointEigenSolver<Matrix> es(H);
        out.lambda = es.eigenvalues()(0);
        out.vector = es.eigenvectors().col(0);
        return out;
    }
    const Index N = checked_size(A, 531441, "exact_ground_state[lanczos]");
    NormalStream rng(0x0f1e2d3c4b5a6978ULL);
    Vector v(N);
    for (Index i = 0; i < N; ++i) v[i] = rng.next_normal();
    EigOptions opt;
    opt.tol = 1e-8;
    opt.krylov = 60;
    opt.max_cycles = 80;
    const EigResult res = lanczos_min_eig(
        N,
        [&A, N](const double* in, double* outp) {
            const Vector vin = ConstMatrixMap(in, N, 1);
            MatrixMap(outp, N, 1) = mpo_matvec_dense(A, vin);
        },
        v, opt);
    if (res.resid > opt.tol * std::max(1.0, std::abs(res.theta))) {
        std::ostringstream msg;
        msg << "exact_ground_state[lanczos]: no convergence, best estimate "
            << res.theta << " with residual " << res.resid;
        throw std::runtime_error(msg.str());
    }
    out.lambda = res.theta;
    out.vector = std::move(v);
    return out;
}

}  // namespace ttground
