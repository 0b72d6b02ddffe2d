#include "ttground/tt_ops.hpp"

#include "ttground/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ttground {

namespace {

using StrideMap = Eigen::Map<Matrix, 0, Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>>;

void check_same_modes(const TTVector& x, const TTVector& y, const char* who) {
    if (x.mode_sizes() != y.mode_sizes())
        throw std::invalid_argument(std::string(who) + ": mode sizes differ");
}

/// Smallest rank whose discarded singular-value tail satisfies
/// sqrt(sum_{j>=r} s_j^2) <= delta, clamped to [1, rmax].  The squared norm
/// of what was actually discarded is accumulated into *discarded2.
Index choose_rank(const Vector& sv, double delta, Index rmax, double* discarded2,
                  bool* capped) {
    const Index m = sv.size();
    Index keep = m;
    double acc = 0.0;
    const double budget2 = delta * delta;
    for (Index j = m - 1; j >= 0; --j) {
        const double next = acc + sv[j] * sv[j];
        if (next > budget2) break;
        acc = next;
        keep = j;
    }
    if (keep < 1) keep = 1;
    if (keep > rmax) {
        keep = rmax;
        if (capped) *capped = true;
    }
    if (discarded2) {
        double d2 = 0.0;
        for (Index j = keep; j < m; ++j) d2 += sv[j] * sv[j];
        *discarded2 += d2;
    }
    return keep;
}

}  // namespace

TTVector tt_random(const std::vector<Index>& mode_sizes,
                   const std::vector<Index>& ranks, std::uint64_t seed) {
    const size_t d = mode_sizes.size();
    if (d == 0) throw std::invalid_argument("tt_random: no mode sizes");
    if (ranks.size() != d + 1)
        throw std::invalid_argument("tt_random: ranks must have d+1 entries");
    if (ranks.front() != 1 || ranks.back() != 1)
        throw std::invalid_argument("tt_random: boundary ranks must be 1");
    NormalStream rng(seed);
    std::vector<Core3> cores;
    cores.reserve(d);
    for (size_t k = 0; k < d; ++k) {
        Core3 c(ranks[k], mode_sizes[k], ranks[k + 1]);
        for (Index p = 0; p < c.size(); ++p) c.data()[p] = rng.next_normal();
        cores.push_back(std::move(c));
    }
    TTVector x(std::move(cores));
    right_orthogonalize(x);
    normalize(x);
    return x;
}

TTVector tt_random(const std::vector<Index>& mode_sizes, Index uniform_rank,
                   std::uint64_t seed) {
    const size_t d = mode_sizes.size();
    if (uniform_rank < 1) throw std::invalid_argument("tt_random: rank must be >= 1");
    std::vector<Index> ranks(d + 1, 1);
    // clamp to feasible ranks so degenerate requests do not allocate wildly
    Index acc = 1;
    for (size_t k = 1; k < d; ++k) {
        acc = std::min(acc * mode_sizes[k - 1], uniform_rank);
        ranks[k] = acc;
    }
    acc = 1;
    for (size_t k = d; k-- > 1;) {
        acc = std::min(acc * mode_sizes[k], uniform_rank);
        ranks[k] = std::min(ranks[k], acc);
    }
    return tt_random(mode_sizes, ranks, seed);
}

Vector tt_to_dense(const TTVector& x) {
    Index total = 1;
    for (Index n : x.mode_sizes()) {
        total *= n;
        if (total > 10'000'000)
            throw std::invalid_argument("tt_to_dense: result exceeds 1e7 entries");
    }
    Matrix M = Matrix::Ones(1, 1);
    for (Index k = 0; k < x.site_count(); ++k) {
        const Core3& c = x.core(k);
        const Index N = M.rows();
        Matrix T = M * c.right_mat();  // N x (n * r'), axes (prefix, mode, right)
        Matrix M2(N * c.mode(), c.right());
        permute(T.data(), {N, c.mode(), c.right()}, {1, 0, 2}, M2.data());
        M = std::move(M2);
    }
    return M.col(0);
}

TTVector tt_from_dense(const Vector& values, const std::vector<Index>& mode_sizes,
                       double eps, Index rmax) {
    const size_t d = mode_sizes.size();
    if (d == 0) throw std::invalid_argument("tt_from_dense: no mode sizes");
    Index total = 1;
    for (Index n : mode_sizes) total *= n;
    if (total != values.size())
        throw std::invalid_argument("tt_from_dense: length does not match modes");
    if (rmax < 1) throw std::invalid_argument("tt_from_dense: rmax must be >= 1");

    std::vector<Core3> cores;
    cores.reserve(d);
    if (d == 1) {
        Core3 c(1, mode_sizes[0], 1);
        c.vec() = values;
        cores.push_back(std::move(c));
        return TTVector(std::move(cores), 0);
    }

    const double delta = eps * values.norm() / std::sqrt(static_cast<double>(d - 1));
    // A holds the remainder, rows = (r_{k-1}, i_k), cols = flat (i_{k+1}..i_d)
    Index tail = total / mode_sizes[0];
    Matrix A = ConstMatrixMap(values.data(), tail, mode_sizes[0]).transpose();
    Index r_prev = 1;
    for (size_t k = 0; k + 1 < d; ++k) {
        Eigen::BDCSVD<Matrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Index r = choose_rank(svd.singularValues(), delta, rmax, nullptr, nullptr);
        Core3 c(r_prev, mode_sizes[k], r);
        c.left_mat() = svd.matrixU().leftCols(r);
        cores.push_back(std::move(c));
        Matrix rest = svd.singularValues().head(r).asDiagonal() *
                      svd.matrixV().leftCols(r).transpose();  // r x tail
        const Index n_next = mode_sizes[k + 1];
        tail /= n_next;
        Matrix A2(r * n_next, tail);
        permute(rest.data(), {r, tail, n_next}, {0, 2, 1}, A2.data());
        A = std::move(A2);
        r_prev = r;
    }
    Core3 last(r_prev, mode_sizes[d - 1], 1);
    last.vec() = ConstMatrixMap(A.data(), A.size(), 1);
    cores.push_back(std::move(last));
    return TTVector(std::move(cores), static_cast<Index>(d) - 1);
}

double tt_dot(const TTVector& x, const TTVector& y) {
    check_same_modes(x, y, "tt_dot");
    Matrix W = Matrix::Ones(1, 1);
    for (Index k = 0; k < x.site_count(); ++k) {
        const Core3& xc = x.core(k);
        const Core3& yc = y.core(k);
        Matrix T = W * yc.right_mat();  // r_x x (n * r_y')
        W = xc.left_mat().transpose() *
            ConstMatrixMap(T.data(), xc.left() * xc.mode(), yc.right());
    }
    return W(0, 0);
}

double tt_norm(const TTVector& x) {
    if (x.ortho_center()) return x.core(*x.ortho_center()).frobenius_norm();
    return std::sqrt(std::max(tt_dot(x, x), 0.0));
}

TTVector tt_add(const TTVector& x, const TTVector& y) {
    check_same_modes(x, y, "tt_add");
    const Index d = x.site_count();
    std::vector<Core3> cores;
    cores.reserve(d);
    if (d == 1) {
        Core3 c = x.core(0);
        c.vec() += y.core(0).vec();
        cores.push_back(std::move(c));
        return TTVector(std::move(cores));
    }
    for (Index k = 0; k < d; ++k) {
        const Core3& a = x.core(k);
        const Core3& b = y.core(k);
        if (k == 0) {
            Core3 c(1, a.mode(), a.right() + b.right());
            auto lm = c.left_mat();
            lm.leftCols(a.right()) = a.left_mat();
            lm.rightCols(b.right()) = b.left_mat();
            cores.push_back(std::move(c));
        } else if (k == d - 1) {
            Core3 c(a.left() + b.left(), a.mode(), 1);
            auto rm = c.right_mat();
            rm.topRows(a.left()) = a.right_mat();
            rm.bottomRows(b.left()) = b.right_mat();
            cores.push_back(std::move(c));
        } else {
            Core3 c(a.left() + b.left(), a.mode(), a.right() + b.right());
            for (Index i = 0; i < a.mode(); ++i)
                for (Index q = 0; q < a.right(); ++q)
                    for (Index p = 0; p < a.left(); ++p) c(p, i, q) = a(p, i, q);
            for (Index i = 0; i < b.mode(); ++i)
                for (Index q = 0; q < b.right(); ++q)
                    for (Index p = 0; p < b.left(); ++p)
                        c(a.left() + p, i, a.right() + q) = b(p, i, q);
            cores.push_back(std::move(c));
        }
    }
    return TTVector(std::move(cores));
}

TTVector tt_scale(const TTVector& x, double alpha) {
    TTVector y = x;
    scale_inplace(y, alpha);
    return y;
}

void scale_inplace(TTVector& x, double alpha) {
    const std::optional<Index> center = x.ortho_center();
    const Index k = center.value_or(0);
    Core3 c = x.core(k);
    c.vec() *= alpha;
    x.set_core(k, std::move(c));
    x.set_ortho_center(center);  // scaling the center leaves the claim intact
}

void shift_ortho(TTVector& x, Index k, Direction direction) {
    const Index d = x.site_count();
    const bool was_center = x.ortho_center() && *x.ortho_center() == k;
    if (direction == Direction::Right) {
        if (k < 0 || k >= d - 1)
            throw std::out_of_range("shift_ortho: no site to the right");
        const Core3& c = x.core(k);
        auto [Q, R] = thin_qr(c.left_mat());
        Core3 ck(c.left(), c.mode(), Q.cols());
        ck.left_mat() = Q;
        const Core3& nb = x.core(k + 1);
        Core3 cn(R.rows(), nb.mode(), nb.right());
        cn.right_mat() = R * nb.right_mat();
        x.set_core(k, std::move(ck));
        x.set_core(k + 1, std::move(cn));
        x.set_ortho_center(was_center ? std::optional<Index>(k + 1) : std::nullopt);
    } else {
        if (k < 1 || k >= d)
            throw std::out_of_range("shift_ortho: no site to the left");
        const Core3& c = x.core(k);
        auto [Q, R] = thin_qr(c.right_mat().transpose());
        Core3 ck(Q.cols(), c.mode(), c.right());
        ck.right_mat() = Q.transpose();
        const Core3& nb = x.core(k - 1);
        Core3 cn(nb.left(), nb.mode(), R.rows());
        cn.left_mat() = nb.left_mat() * R.transpose();
        x.set_core(k, std::move(ck));
        x.set_core(k - 1, std::move(cn));
        x.set_ortho_center(was_center ? std::optional<Index>(k - 1) : std::nullopt);
    }
}

void right_orthogonalize(TTVector& x) {
    for (Index k = x.site_count() - 1; k >= 1; --k) shift_ortho(x, k, Direction::Left);
    x.set_ortho_center(0);
}

void left_orthogonalize(TTVector& x) {
    for (Index k = 0; k + 1 < x.site_count(); ++k) shift_ortho(x, k, Direction::Right);
    x.set_ortho_center(x.site_count() - 1);
}

void move_ortho_center(TTVector& x, Index k) {
    if (k < 0 || k >= x.site_count())
        throw std::out_of_range("move_ortho_center: site out of range");
    if (!x.ortho_center())
        throw std::logic_error("move_ortho_center: no established center");
    while (*x.ortho_center() < k) shift_ortho(x, *x.ortho_center(), Direction::Right);
    while (*x.ortho_center() > k) shift_ortho(x, *x.ortho_center(), Direction::Left);
}

double normalize(TTVector& x) {
    const double norm = tt_norm(x);
    if (norm > 0.0) scale_inplace(x, 1.0 / norm);
    return norm;
}

TTVector tt_round(const TTVector& x, double eps, Index rmax, RoundInfo* info) {
    if (rmax < 1) throw std::invalid_argument("tt_round: rmax must be >= 1");
    if (eps < 0.0) throw std::invalid_argument("tt_round: eps must be >= 0");
    TTVector y = x;
    right_orthogonalize(y);
    const Index d = y.site_count();
    const double norm = y.core(0).frobenius_norm();
    RoundInfo local;
    if (norm == 0.0) {
        // exactly zero: collapse to the canonical rank-1 zero train
        TTVector z = TTVector::zeros(y.mode_sizes(), std::vector<Index>(d + 1, 1));
        z.set_ortho_center(d - 1);
        if (info) *info = local;
        return z;
    }
    if (d == 1) {
        if (info) *info = local;
        return y;
    }
    const double delta = eps * norm / std::sqrt(static_cast<double>(d - 1));
    double discarded2 = 0.0;
    for (Index k = 0; k + 1 < d; ++k) {
        const Core3& c = y.core(k);
        Eigen::BDCSVD<Matrix> svd(c.left_mat(),
                                  Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Index r =
            choose_rank(svd.singularValues(), delta, rmax, &discarded2, &local.rank_capped);
        Core3 ck(c.left(), c.mode(), r);
        ck.left_mat() = svd.matrixU().leftCols(r);
        Matrix carry = svd.singularValues().head(r).asDiagonal() *
                       svd.matrixV().leftCols(r).transpose();  // r x r_old
        const Core3& nb = y.core(k + 1);
        Core3 cn(r, nb.mode(), nb.right());
        cn.right_mat() = carry * nb.right_mat();
        y.set_core(k, std::move(ck));
        y.set_core(k + 1, std::move(cn));
    }
    y.set_ortho_center(d - 1);
    local.rel_error_bound = std::sqrt(discarded2) / norm;
    if (info) *info = local;
    return y;
}

TTVector mpo_apply(const TTMatrix& A, const TTVector& x) {
    if (A.col_modes() != x.mode_sizes())
        throw std::invalid_argument("mpo_apply: operator column modes do not match vector");
    const Index d = x.site_count();
    std::vector<Core3> cores;
    cores.reserve(d);
    for (Index k = 0; k < d; ++k) {
        const Core4& W = A.core(k);
        const Core3& c = x.core(k);
        const Index R = W.left(), n = W.rows(), m = W.cols(), Rr = W.right();
        const Index r = c.left(), rr = c.right();
        // W permuted to (gamma, i, gamma', j), x permuted to (j, a, b)
        Vector Wp = permuted(W.vec(), {R, n, m, Rr}, {0, 1, 3, 2});
        Vector xp = permuted(c.vec(), {r, m, rr}, {1, 0, 2});
        Matrix P = ConstMatrixMap(Wp.data(), R * n * Rr, m) *
                   ConstMatrixMap(xp.data(), m, r * rr);
        Core3 out(R * r, n, Rr * rr);
        permute(P.data(), {R, n, Rr, r, rr}, {0, 3, 1, 2, 4}, out.data());
        cores.push_back(std::move(out));
    }
    return TTVector(std::move(cores));
}

Matrix mpo_to_dense_guarded(const TTMatrix& A, Index max_rows) {
    Index rows = 1, cols = 1;
    for (Index n : A.row_modes()) {
        rows *= n;
        if (rows > max_rows)
            throw std::invalid_argument("mpo_to_dense: too many rows to densify");
    }
    for (Index m : A.col_modes()) cols *= m;
    const Index d = A.site_count();
    // G holds the partial contraction, axes (row prefix, col prefix, bond)
    Vector G = Vector::Ones(1);
    Index N = 1, M = 1;
    for (Index k = 0; k + 1 < d; ++k) {
        const Core4& W = A.core(k);
        const Index n = W.rows(), m = W.cols(), Rr = W.right();
        Matrix P = ConstMatrixMap(G.data(), N * M, W.left()) *
                   ConstMatrixMap(W.data(), W.left(), n * m * Rr);
        Vector G2(P.size());
        permute(P.data(), {N, M, n, m, Rr}, {2, 0, 3, 1, 4}, G2.data());
        G = std::move(G2);
        N *= n;
        M *= m;
    }
    // last site: scatter straight into the result to avoid an extra buffer
    const Core4& W = A.core(d - 1);
    const Index n = W.rows(), m = W.cols(), R = W.left();
    Matrix dense = Matrix::Zero(rows, cols);
    for (Index j = 0; j < m; ++j) {
        for (Index i = 0; i < n; ++i) {
            StrideMap block(dense.data() + i + rows * j, N, M,
                            Eigen::Stride<Eigen::Dynamic, Eigen::Dynamic>(m * rows, n));
            for (Index g = 0; g < R; ++g) {
                const double w = W(g, i, j, 0);
                if (w == 0.0) continue;
                block += w * ConstMatrixMap(G.data() + N * M * g, N, M);
            }
        }
    }
    return dense;
}

Matrix mpo_to_dense(const TTMatrix& A) { return mpo_to_dense_guarded(A, 4096); }

void enrich(TTVector& x, Index k, const Core3& block, Direction direction) {
    const Index d = x.site_count();
    if (k < 0 || k >= d) throw std::out_of_range("enrich: site out of range");
    if (!x.ortho_center() || *x.ortho_center() != k)
        throw std::logic_error("enrich: orthogonality center must sit at the site");
    const Core3& c = x.core(k);
    if (block.mode() != c.mode())
        throw std::invalid_argument("enrich: block mode size mismatch");
    if (direction == Direction::Right) {
        if (k >= d - 1) throw std::out_of_range("enrich: no bond to the right");
        if (block.left() != c.left())
            throw std::invalid_argument("enrich: block left rank mismatch");
        const Index rho = block.right();
        Core3 ck(c.left(), c.mode(), c.right() + rho);
        auto lm = ck.left_mat();
        lm.leftCols(c.right()) = c.left_mat();
        lm.rightCols(rho) = block.left_mat();
        const Core3& nb = x.core(k + 1);
        Core3 cn(nb.left() + rho, nb.mode(), nb.right());
        auto rm = cn.right_mat();
        rm.topRows(nb.left()) = nb.right_mat();
        rm.bottomRows(rho).setZero();
        x.set_core(k, std::move(ck));
        x.set_core(k + 1, std::move(cn));
        x.set_ortho_center(k);
        shift_ortho(x, k, Direction::Right);
    } else {
        if (k == 0) throw std::out_of_range("enrich: no bond to the left");
        if (block.right() != c.right())
            throw std::invalid_argument("enrich: block right rank mismatch");
        const Index rho = block.left();
        Core3 ck(c.left() + rho, c.mode(), c.right());
        auto rm = ck.right_mat();
        rm.topRows(c.left()) = c.right_mat();
        rm.bottomRows(rho) = block.right_mat();
        const Core3& nb = x.core(k - 1);
        Core3 cn(nb.left(), nb.mode(), nb.right() + rho);
        auto lm = cn.left_mat();
        lm.leftCols(nb.right()) = nb.left_mat();
        lm.rightCols(rho).setZero();
        x.set_core(k, std::move(ck));
        x.set_core(k - 1, std::move(cn));
        x.set_ortho_center(k);
        shift_ortho(x, k, Direction::Left);
    }
}

}  // namespace ttground
