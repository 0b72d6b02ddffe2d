#include "ttground/local_eig.hpp"
#include "ttground/tt_ops.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ttground {

EigResult lanczos_min_eig(Index dim, const MatVec& matvec, Vector& v,
                          const EigOptions& opt) {
    if (v.size() != dim) throw std::invalid_argument("lanczos_min_eig: bad start size");
    EigResult res;
    const Index m = std::max<Index>(2, std::min(opt.krylov, dim));
    Matrix V(dim, m);
    Vector a(m), b(m), w(dim), Hv(dim);
    const Vector v0 = v;

    for (Index cycle = 0; cycle < opt.max_cycles; ++cycle) {
        double vn = v.norm();
        if (vn == 0.0) {
            v.setZero();
            v[0] = 1.0;
            vn = 1.0;
        }
        V.col(0) = v / vn;
        matvec(V.col(0).data(), w.data());
        ++res.matvecs;
        a[0] = V.col(0).dot(w);
        if (cycle == 0) res.rq_start = a[0];
        Index used = 1;
        for (Index j = 0; j + 1 < m; ++j) {
            w -= a[j] * V.col(j);
            if (j > 0) w -= b[j - 1] * V.col(j - 1);
            // full reorthogonalization, twice is enough
            for (int rep = 0; rep < 2; ++rep)
                w -= V.leftCols(j + 1) * (V.leftCols(j + 1).transpose() * w);
            b[j] = w.norm();
            const double scale = std::max(1.0, a.head(j + 1).cwiseAbs().maxCoeff());
            if (b[j] <= 1e-13 * scale) {
                res.breakdown = true;
                break;
            }
            V.col(j + 1) = w / b[j];
            matvec(V.col(j + 1).data(), w.data());
            ++res.matvecs;
            a[j + 1] = V.col(j + 1).dot(w);
            used = j + 2;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es;
        es.computeFromTridiagonal(a.head(used), b.head(std::max<Index>(used - 1, 0)),
                                  Eigen::ComputeEigenvectors);
        v = V.leftCols(used) * es.eigenvectors().col(0);
        v.normalize();
        matvec(v.data(), Hv.data());
        ++res.matvecs;
        res.theta = v.dot(Hv);
        res.resid = (Hv - res.theta * v).norm();
        if (res.resid <= opt.tol * std::max(1.0, std::abs(res.theta))) break;
        if (res.breakdown) break;  // invariant subspace found, no progress left
    }
    if (v.dot(v0) < 0.0) v = -v;
    return res;
}

EigResult local_min_eig(const LocalOperator& H, Core3& v, const EigOptions& opt) {
    if (v.left() != H.rank_left() || v.mode() != H.rows() || v.right() != H.rank_right())
        throw std::invalid_argument("local_min_eig: core shape mismatch");
    if (H.dim() <= opt.dense_threshold) {
        const Matrix Hd = H.dense();
        Eigen::SelfAdjointEigenSolver<Matrix> es(Hd);
        EigResult res;
        res.theta = es.eigenvalues()(0);
        res.used_dense = true;
        const double wn2 = v.vec().squaredNorm();
        res.rq_start = wn2 > 0.0 ? v.vec().dot(Hd * v.vec()) / wn2
                                 : std::numeric_limits<double>::infinity();
        Vector vec = es.eigenvectors().col(0);
        if (vec.dot(v.vec()) < 0.0) vec = -vec;
        res.resid = (Hd * vec - res.theta * vec).norm();
        v.vec() = vec;
        return res;
    }
    Vector vec = v.vec();
    EigResult res = lanczos_min_eig(
        H.dim(), [&H](const double* in, double* out) { H.apply_vec(in, out); }, vec, opt);
    v.vec() = vec;
    return res;
}

double rayleigh(const TTMatrix& A, const TTVector& x) {
    if (A.site_count() != x.site_count())
        throw std::invalid_argument("rayleigh: site count mismatch");
    Core3 env = Core3::scalar(1.0);
    for (Index k = 0; k < x.site_count(); ++k)
        env = env_step_right(env, A.core(k), x.core(k), x.core(k));
    const double nrm2 = tt_dot(x, x);
    if (nrm2 <= 0.0) throw std::invalid_argument("rayleigh: zero vector");
    return env(0, 0, 0) / nrm2;
}

}  // namespace ttground
