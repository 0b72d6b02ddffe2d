#include "ttground/sweeps.hpp"

#include "ttground/rng.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ttground {

namespace {

using Clock = std::chrono::steady_clock;

/// Largest keep with discarded tail 2-norm <= delta; at least 1, at most rmax.
Index svd_keep(const Vector& sv, double delta, Index rmax) {
    Index keep = sv.size();
    double tail2 = 0.0;
    while (keep > 1) {
        const double t = tail2 + sv[keep - 1] * sv[keep - 1];
        if (std::sqrt(t) > delta) break;
        tail2 = t;
        --keep;
    }
    if (rmax != kNoRankCap && keep > rmax) keep = rmax;
    return std::max<Index>(keep, 1);
}

/// Concatenation [X | sqrt(a) S_1 | ...] (Right) or its row-stacked mirror
/// (Left).  Slices carry their natural norms: a weak channel stays weak, so
/// the admission cut below can drop it.  Rescaling the slices instead would
/// quietly promote them past the cut and change the character of the method.
Matrix averaging_frame(const Core3& xcore, const Core3& block, double a,
                       Direction dir) {
    if (a < 0.0) throw std::invalid_argument("averaging_step: negative weight");
    if (block.mode() != xcore.mode())
        throw std::invalid_argument("averaging_step: mode mismatch");
    const Index rl = xcore.left(), n = xcore.mode(), rr = xcore.right();
    const double w = std::sqrt(a);
    if (dir == Direction::Right) {
        if (block.left() != rl || block.right() % rr != 0)
            throw std::invalid_argument("averaging_step: block shape mismatch");
        const Index R = block.right() / rr;
        Matrix G(rl * n, rr * (R + 1));
        G.leftCols(rr) = xcore.left_mat();
        const auto Bm = block.left_mat();  // column index g + R * b
        for (Index g = 0; g < R; ++g)
            for (Index b = 0; b < rr; ++b)
                G.col(rr * (1 + g) + b) = w * Bm.col(g + R * b);
        return G;
    }
    if (block.right() != rr || block.left() % rl != 0)
        throw std::invalid_argument("averaging_step: block shape mismatch");
    const Index R = block.left() / rl;
    Matrix G(rl * (R + 1), n * rr);
    G.topRows(rl) = xcore.right_mat();
    const auto Bm = block.right_mat();  // row index g + R * a
    for (Index g = 0; g < R; ++g)
        for (Index q = 0; q < rl; ++q)
            G.row(rl * (1 + g) + q) = w * Bm.row(g + R * q);
    return G;
}

/// Directions carrying no weight are never kept: the averaged frame is
/// clamped to the numerical rank of G so a zero correction reduces to a
/// plain orthogonalization of the core.
Index clamp_to_rank(Index keep, const Vector& sv) {
    Index nnz = 0;
    const double floor = sv.size() > 0 ? sv[0] * 1e-14 : 0.0;
    while (nnz < sv.size() && sv[nnz] > floor) ++nnz;
    return std::max<Index>(std::min(keep, nnz), 1);
}

std::pair<Core3, Matrix> averaging_from_frame(const Core3& xcore, const Matrix& G,
                                              Index keep, Direction dir) {
    if (dir == Direction::Right) {
        Eigen::BDCSVD<Matrix> svd(G, Eigen::ComputeThinU);
        keep = std::min(keep, static_cast<Index>(svd.matrixU().cols()));
        keep = clamp_to_rank(keep, svd.singularValues());
        Core3 U(xcore.left(), xcore.mode(), keep);
        U.left_mat() = svd.matrixU().leftCols(keep);
        Matrix T = U.left_mat().transpose() * xcore.left_mat();
        return {std::move(U), std::move(T)};
    }
    Eigen::BDCSVD<Matrix> svd(G, Eigen::ComputeThinV);
    keep = std::min(keep, static_cast<Index>(svd.matrixV().cols()));
    keep = clamp_to_rank(keep, svd.singularValues());
    Core3 U(keep, xcore.mode(), xcore.right());
    U.right_mat() = svd.matrixV().leftCols(keep).transpose();
    Matrix T = xcore.right_mat() * svd.matrixV().leftCols(keep);
    return {std::move(U), std::move(T)};
}

class SweepEngine {
public:
    SweepEngine(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg)
        : A_(A), cfg_(cfg), x_(x0), env_(x0.site_count()),
          rng_(NormalStream::split(cfg.seed, 0x7a1e5u)) {
        cfg_.strategy.validate();
        if (A_.site_count() != x_.site_count())
            throw std::invalid_argument("run_sweeps: operator/state site mismatch");
        for (Index k = 0; k < x_.site_count(); ++k)
            if (A_.core(k).rows() != A_.core(k).cols() ||
                A_.core(k).rows() != x_.core(k).mode())
                throw std::invalid_argument("run_sweeps: mode size mismatch");
        right_orthogonalize(x_);
        normalize(x_);
        env_.rebuild(A_, x_);
        lambda_ = env_.right(0)(0, 0, 0);
        t0_ = Clock::now();
    }

    SweepResult run() {
        const Index d = x_.site_count();
        for (Index sweep = 1; sweep <= cfg_.max_sweeps && !time_up_; ++sweep) {
            out_.sweeps = sweep;
            const double lam0 = lambda_;
            half_sweep(sweep, Direction::Right);
            if (time_up_) break;
            half_sweep(sweep, Direction::Left);
            if (time_up_) break;
            if (std::abs(lambda_ - lam0) <
                cfg_.tol_lambda * std::max(1.0, std::abs(lambda_))) {
                out_.converged = true;
                break;
            }
        }
        out_.stop_reason = out_.converged ? "converged"
                          : time_up_     ? "time_budget"
                                         : "max_sweeps";
        // the amen boundary rounding parks the center away from site 0
        if (d > 1 && x_.ortho_center() != std::optional<Index>(0))
            move_ortho_center(x_, 0);
        out_.x = std::move(x_);
        out_.lambda = lambda_;
        out_.wall_seconds = elapsed();
        return std::move(out_);
    }

private:
    double elapsed() const {
        return std::chrono::duration<double>(Clock::now() - t0_).count();
    }

    bool check_time() {
        if (cfg_.max_seconds > 0.0 && elapsed() >= cfg_.max_seconds) time_up_ = true;
        return time_up_;
    }

    void observe(const char* event, Index site) {
        if (cfg_.observer) cfg_.observer(event, x_, site);
    }

    void emit(Index sweep, Index site, char dir, double resid) {
        ConvergenceRecord rec;
        rec.sweep = sweep;
        rec.site = site;
        rec.direction = dir;
        rec.lambda = lambda_;
        if (cfg_.reference_lambda) rec.lambda_error = lambda_ - *cfg_.reference_lambda;
        rec.resid_estimate = resid;
        rec.max_rank = x_.max_rank();
        rec.wall_seconds = elapsed();
        out_.records.push_back(rec);
    }

    /// Descent bookkeeping: every solve must stay below the warm-start
    /// Rayleigh quotient, and the one-site algorithms preserve the quotient
    /// exactly between solves, so consecutive solves must descend too.
    void note_solve(const EigResult& r) {
        if (!std::isfinite(r.theta))
            throw std::runtime_error("run_sweeps: non-finite local eigenvalue");
        const double slack =
            10.0 * tol_eff_ + 1e-12 * std::max(1.0, std::abs(r.theta));
        double defect = r.theta - (r.rq_start + slack);
        if (chain_valid_ &&
            (cfg_.algorithm == Algorithm::Dmrg1 || cfg_.algorithm == Algorithm::Amen))
            defect = std::max(defect, r.theta - (last_theta_ + slack));
        out_.monotone_defect = std::max(out_.monotone_defect, defect);
        last_theta_ = r.theta;
        chain_valid_ = true;
    }

    EigResult solve_core(const LocalOperator& H, Core3& v) {
        EigOptions opt;
        opt.tol = tol_eff_;
        opt.dense_threshold = cfg_.dense_threshold;
        EigResult r = local_min_eig(H, v, opt);
        note_solve(r);
        lambda_ = r.theta;
        return r;
    }

    Index rank_cap(Index sweep) const {
        if (cfg_.strategy.kind == RankStrategy::Kind::FixedSchedule)
            return cfg_.strategy.entry(sweep).max_rank;
        return cfg_.strategy.rmax;
    }

    double weight_a(Index sweep) const {
        if (cfg_.strategy.kind == RankStrategy::Kind::FixedSchedule)
            return cfg_.strategy.entry(sweep).weight_a;
        return cfg_.weight_a;
    }

    /// Random orthonormal kick directions for dmrg1, capped so the bond
    /// cannot exceed the strategy rank or the frame dimension.
    std::optional<Core3> kick_block(Index k, Index sweep, Direction dir) {
        const Core3& v = x_.core(k);
        const Index bond = dir == Direction::Right ? v.right() : v.left();
        const Index frame = dir == Direction::Right ? v.left() * v.mode()
                                                    : v.mode() * v.right();
        const Index cap = rank_cap(sweep);
        Index cols = std::min(cfg_.enrich_rank, frame - bond);
        if (cap != kNoRankCap) cols = std::min(cols, cap - bond);
        if (cols <= 0) return std::nullopt;
        Matrix S(frame, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < frame; ++i) S(i, j) = rng_.next_normal();
        Matrix Q = thin_qr(S).first;
        if (dir == Direction::Right) {
            Core3 out(v.left(), v.mode(), Q.cols());
            out.left_mat() = Q;
            return out;
        }
        Core3 out(Q.cols(), v.mode(), v.right());
        out.right_mat() = Q.transpose();
        return out;
    }

    /// Enrichment directions for amen at site k: project the residual train
    /// through the orthonormal part of x (GlobalZ) or truncate the local
    /// residual block (LocalProjection).  Blocks are scaled to unit norm;
    /// the represented vector is unaffected either way.
    std::optional<Core3> enrich_block(const LocalOperator& H, Index k, const Core3& v,
                                      Direction dir) {
        Core3 S;
        if (cfg_.enrich_mode == EnrichMode::GlobalZ) {
            const Core3& zc = z_.core(k);
            if (dir == Direction::Right) {
                Matrix M = interface_left(x_, z_, k);
                S = Core3(v.left(), v.mode(), zc.right());
                S.right_mat() = M * zc.right_mat();
            } else {
                Matrix N = interface_right(x_, z_, k + 1);
                S = Core3(zc.left(), v.mode(), v.right());
                S.left_mat() = zc.left_mat() * N.transpose();
            }
        } else {
            Core3 Hv = H.apply(v);
            if (dir == Direction::Right) {
                Matrix Rm = Hv.left_mat() - lambda_ * v.left_mat();
                Eigen::BDCSVD<Matrix> svd(Rm, Eigen::ComputeThinU);
                const Index keep =
                    std::min(cfg_.enrich_rank, static_cast<Index>(svd.matrixU().cols()));
                S = Core3(v.left(), v.mode(), keep);
                S.left_mat() = svd.matrixU().leftCols(keep) *
                               svd.singularValues().head(keep).asDiagonal();
            } else {
                Matrix Rm = Hv.right_mat() - lambda_ * v.right_mat();
                Eigen::BDCSVD<Matrix> svd(Rm, Eigen::ComputeThinV);
                const Index keep =
                    std::min(cfg_.enrich_rank, static_cast<Index>(svd.matrixV().cols()));
                S = Core3(keep, v.mode(), v.right());
                S.right_mat() = svd.singularValues().head(keep).asDiagonal() *
                                svd.matrixV().leftCols(keep).transpose();
            }
        }
        // drop dead blocks, trim to the frame dimension, rescale
        const Index frame = dir == Direction::Right ? v.left() * v.mode()
                                                    : v.mode() * v.right();
        const Index bond = dir == Direction::Right ? v.right() : v.left();
        const Index avail = frame - bond;
        const Index cols = dir == Direction::Right ? S.right() : S.left();
        if (avail <= 0 || S.vec().norm() <= 1e-300) return std::nullopt;
        if (cols > avail) {
            if (dir == Direction::Right) {
                Core3 T(v.left(), v.mode(), avail);
                T.left_mat() = S.left_mat().leftCols(avail);
                S = std::move(T);
            } else {
                Core3 T(avail, v.mode(), v.right());
                T.right_mat() = S.right_mat().topRows(avail);
                S = std::move(T);
            }
        }
        S.vec() /= S.vec().norm();
        return S;
    }

    void one_site_step(Index sweep, Index k, Direction dir, bool last) {
        LocalOperator H(env_.left(k), A_.core(k), env_.right(k + 1));
        Core3 v = x_.core(k);
        const EigResult r = solve_core(H, v);
        x_.set_core(k, std::move(v));
        x_.set_ortho_center(k);
        observe("post_solve", k);

        if (last) {
            // pass-terminal site: no neighbour ahead, so nothing to enrich or
            // transfer into; the return pass re-centers before its first solve
            env_.invalidate_site(k);
            emit(sweep, k, dir == Direction::Right ? 'R' : 'L', r.resid);
            observe("post_step", k);
            return;
        }

        const Core3& cur = x_.core(k);
        const Index nb = dir == Direction::Right ? k + 1 : k - 1;

        switch (cfg_.algorithm) {
        case Algorithm::Dmrg1: {
            std::optional<Core3> S;
            if (cfg_.random_kick && cfg_.enrich_rank > 0) S = kick_block(k, sweep, dir);
            if (S) {
                observe("pre_enrich", k);
                enrich(x_, k, *S, dir);
                observe("post_enrich", k);
            } else {
                shift_ortho(x_, k, dir);
            }
            break;
        }
        case Algorithm::Amen: {
            std::optional<Core3> S;
            if (cfg_.enrich_rank > 0) S = enrich_block(H, k, cur, dir);
            if (S) {
                observe("pre_enrich", k);
                enrich(x_, k, *S, dir);
                observe("post_enrich", k);
            } else {
                shift_ortho(x_, k, dir);
            }
            break;
        }
        case Algorithm::Dmrg1c: {
            const Core3 block = dir == Direction::Right ? H.open_right(cur)
                                                        : H.open_left(cur);
            const double a = weight_a(sweep);
            const Matrix G = averaging_frame(cur, block, a, dir);
            Index keep;
            if (cfg_.strategy.kind == RankStrategy::Kind::FixedSchedule) {
                const Index frame = dir == Direction::Right
                                        ? cur.left() * cur.mode()
                                        : cur.mode() * cur.right();
                keep = std::min(cfg_.strategy.entry(sweep).max_rank, frame);
            } else {
                // dominant-subspace admission: a frame direction is kept
                // only while its singular value clears eps * ||G||, so
                // correction channels (scale sqrt(a) and decaying) stop
                // feeding the rank once they sink below eps; a <~ eps^2
                // eliminates the correction entirely.  The core's own
                // eps-rank is a floor so the state never loses accuracy
                // to the admission cut and a = 0 reduces to the plain
                // truncated one-site update.
                Eigen::BDCSVD<Matrix> gsv(G);
                const Vector& sg = gsv.singularValues();
                const double gate = cfg_.strategy.eps * sg.norm();
                Index admitted = 0;
                while (admitted < sg.size() && sg[admitted] >= gate) ++admitted;
                const Matrix Xm = dir == Direction::Right ? cur.left_mat()
                                                          : cur.right_mat();
                Eigen::BDCSVD<Matrix> xsv(Xm);
                keep = std::max(svd_keep(xsv.singularValues(),
                                         cfg_.strategy.eps * Xm.norm(),
                                         cfg_.strategy.rmax),
                                admitted);
                if (cfg_.strategy.rmax != kNoRankCap && keep > cfg_.strategy.rmax)
                    keep = cfg_.strategy.rmax;
            }
            observe("pre_average", k);
            auto [U, T] = averaging_from_frame(cur, G, keep, dir);
            const Core3 old_nb = x_.core(nb);
            if (dir == Direction::Right) {
                Core3 nb2(T.rows(), old_nb.mode(), old_nb.right());
                nb2.right_mat() = T * old_nb.right_mat();
                x_.set_core(k, std::move(U));
                x_.set_core(nb, std::move(nb2));
            } else {
                Core3 nb2(old_nb.left(), old_nb.mode(), T.cols());
                nb2.left_mat() = old_nb.left_mat() * T;
                x_.set_core(k, std::move(U));
                x_.set_core(nb, std::move(nb2));
            }
            x_.set_ortho_center(nb);
            observe("post_average", k);
            // the averaging perturbs the state, so the descent chain restarts
            chain_valid_ = false;
            break;
        }
        case Algorithm::Dmrg2:
            throw std::logic_error("one_site_step: wrong driver");
        }

        env_.invalidate_site(k);
        env_.invalidate_site(nb);
        if (dir == Direction::Right)
            env_.push_left(k, A_.core(k), x_.core(k), x_.core(k));
        else
            env_.push_right(k, A_.core(k), x_.core(k), x_.core(k));
        emit(sweep, k, dir == Direction::Right ? 'R' : 'L', r.resid);
        observe("post_step", k);
    }

    void two_site_step(Index sweep, Index k, Direction dir) {
        const Core4 W = merge_op_pair(A_.core(k), A_.core(k + 1));
        LocalOperator H(env_.left(k), W, env_.right(k + 2));
        const Core3& c1 = x_.core(k);
        const Core3& c2 = x_.core(k + 1);
        Core3 v(c1.left(), W.rows(), c2.right());
        {
            const Matrix warm = c1.left_mat() * c2.right_mat();
            v.vec() = ConstMatrixMap(warm.data(), warm.size(), 1);
        }
        const EigResult r = solve_core(H, v);
        observe("post_solve", k);

        ConstMatrixMap B(v.data(), c1.left() * c1.mode(), c2.mode() * c2.right());
        Eigen::BDCSVD<Matrix> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Vector& sv = svd.singularValues();
        Index keep;
        if (cfg_.strategy.kind == RankStrategy::Kind::FixedSchedule)
            keep = std::min(cfg_.strategy.entry(sweep).max_rank,
                            static_cast<Index>(sv.size()));
        else
            keep = svd_keep(sv, cfg_.strategy.eps * sv.norm(), cfg_.strategy.rmax);
        double kept = sv.head(keep).norm();
        if (kept <= 0.0) kept = 1.0;

        Core3 cl(c1.left(), c1.mode(), keep);
        Core3 cr(keep, c2.mode(), c2.right());
        if (dir == Direction::Right) {
            cl.left_mat() = svd.matrixU().leftCols(keep);
            cr.right_mat() = (sv.head(keep) / kept).asDiagonal() *
                             svd.matrixV().leftCols(keep).transpose();
        } else {
            cl.left_mat() = svd.matrixU().leftCols(keep) *
                            (sv.head(keep) / kept).asDiagonal();
            cr.right_mat() = svd.matrixV().leftCols(keep).transpose();
        }
        x_.set_core(k, std::move(cl));
        x_.set_core(k + 1, std::move(cr));
        x_.set_ortho_center(dir == Direction::Right ? k + 1 : k);
        env_.invalidate_site(k);
        env_.invalidate_site(k + 1);
        if (dir == Direction::Right)
            env_.push_left(k, A_.core(k), x_.core(k), x_.core(k));
        else
            env_.push_right(k + 1, A_.core(k + 1), x_.core(k + 1), x_.core(k + 1));
        emit(sweep, k, dir == Direction::Right ? 'R' : 'L', r.resid);
        observe("post_step", k);
    }

    /// Rank housekeeping after an amen half sweep: SVD-truncate the whole
    /// train, renormalize and rebuild the environment chain on the side the
    /// next pass consumes.  The recomputed quadratic form is logged as a
    /// direction 'T' record.
    void boundary_round(Index sweep, Direction dir) {
        const Index d = x_.site_count();
        double eps_r = 0.0;
        Index cap = rank_cap(sweep);
        if (cfg_.strategy.kind == RankStrategy::Kind::Adaptive)
            eps_r = cfg_.strategy.eps;
        RoundInfo info;
        x_ = tt_round(x_, eps_r, cap, &info);
        normalize(x_);
        if (dir == Direction::Right) {
            // center is already at d-1 where the return pass starts
            env_ = EnvironmentStack(d);
            for (Index k = 0; k < d; ++k)
                env_.push_left(k, A_.core(k), x_.core(k), x_.core(k));
            lambda_ = env_.left(d)(0, 0, 0);
        } else {
            move_ortho_center(x_, 0);
            env_.rebuild(A_, x_);
            lambda_ = env_.right(0)(0, 0, 0);
        }
        chain_valid_ = false;
        emit(sweep, -1, 'T', info.rel_error_bound);
        observe("post_round", -1);
    }

    void half_sweep(Index sweep, Direction dir) {
        const Index d = x_.site_count();
        const double lam0 = lambda_;
        if (cfg_.algorithm == Algorithm::Amen && cfg_.enrich_rank > 0 &&
            cfg_.enrich_mode == EnrichMode::GlobalZ)
            z_ = compute_residual_tt(A_, x_, lambda_, cfg_.eps_z, cfg_.enrich_rank);

        if (d == 1) {
            LocalOperator H(env_.left(0), A_.core(0), env_.right(1));
            Core3 v = x_.core(0);
            const EigResult r = solve_core(H, v);
            x_.set_core(0, std::move(v));
            x_.set_ortho_center(0);
            normalize(x_);
            env_.invalidate_site(0);
            env_.push_right(0, A_.core(0), x_.core(0), x_.core(0));
            emit(sweep, 0, dir == Direction::Right ? 'R' : 'L', r.resid);
        } else if (cfg_.algorithm == Algorithm::Dmrg2) {
            if (dir == Direction::Right)
                for (Index k = 0; k + 1 < d && !check_time(); ++k)
                    two_site_step(sweep, k, dir);
            else
                for (Index k = d - 2; k >= 0 && !check_time(); --k)
                    two_site_step(sweep, k, dir);
        } else {
            // sites 0..d-1 on the way out, d-2..0 on the way back: the turn
            // site is solved at the end of the outgoing pass, so every
            // enrichment is consumed by a solve in the same pass before any
            // boundary rounding can discard its (still weightless) directions
            if (dir == Direction::Right) {
                for (Index k = 0; k < d && !check_time(); ++k)
                    one_site_step(sweep, k, dir, k == d - 1);
            } else {
                shift_ortho(x_, d - 1, Direction::Left);
                env_.invalidate_site(d - 1);
                env_.invalidate_site(d - 2);
                env_.push_right(d - 1, A_.core(d - 1), x_.core(d - 1), x_.core(d - 1));
                for (Index k = d - 2; k >= 0 && !check_time(); --k)
                    one_site_step(sweep, k, dir, k == 0);
            }
        }

        if (cfg_.algorithm == Algorithm::Amen && cfg_.enrich_rank > 0 && d > 1 &&
            !time_up_)
            boundary_round(sweep, dir);

        // inner tolerance tracks the energy decrement of the last half sweep
        const double dec = std::max(lam0 - lambda_, 0.0);
        tol_eff_ = std::clamp(1e-2 * dec, 1e-10, 1e-2);
    }

    const TTMatrix& A_;
    SweepConfig cfg_;
    TTVector x_;
    EnvironmentStack env_;
    NormalStream rng_;
    TTVector z_;
    SweepResult out_;
    Clock::time_point t0_;
    double lambda_ = 0.0;
    double tol_eff_ = 1e-2;
    double last_theta_ = 0.0;
    bool chain_valid_ = false;
    bool time_up_ = false;
};

}  // namespace

const ScheduleEntry& RankStrategy::entry(Index sweep) const {
    if (schedule.empty())
        throw std::logic_error("RankStrategy: empty schedule");
    const size_t i = static_cast<size_t>(std::max<Index>(sweep, 1)) - 1;
    return schedule[std::min(i, schedule.size() - 1)];
}

void RankStrategy::validate() const {
    if (kind == Kind::Adaptive) {
        if (!(eps > 0.0)) throw std::invalid_argument("RankStrategy: eps must be > 0");
        if (rmax < 1) throw std::invalid_argument("RankStrategy: rmax must be >= 1");
        return;
    }
    if (schedule.empty())
        throw std::invalid_argument("RankStrategy: schedule must not be empty");
    for (const auto& e : schedule) {
        if (e.max_rank < 1)
            throw std::invalid_argument("RankStrategy: schedule ranks must be >= 1");
        if (e.weight_a < 0.0)
            throw std::invalid_argument("RankStrategy: negative schedule weight");
    }
}

TTVector compute_residual_tt(const TTMatrix& A, const TTVector& x, double theta,
                             double eps_z, Index rho) {
    const TTVector ax = mpo_apply(A, x);
    const TTVector z = tt_add(ax, tt_scale(x, -theta));
    return tt_round(z, eps_z, rho < 1 ? kNoRankCap : rho);
}

std::pair<Core3, Matrix> averaging_step(const Core3& xcore, const Core3& block,
                                        double a, Index r_target, Direction dir) {
    const Index frame = dir == Direction::Right ? xcore.left() * xcore.mode()
                                                : xcore.mode() * xcore.right();
    if (r_target < 1 || r_target > frame)
        throw std::invalid_argument("averaging_step: r_target out of range");
    const Matrix G = averaging_frame(xcore, block, a, dir);
    return averaging_from_frame(xcore, G, r_target, dir);
}

SweepResult run_sweeps(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg) {
    return SweepEngine(A, x0, cfg).run();
}

SweepResult run_dmrg1(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg) {
    SweepConfig c = cfg;
    c.algorithm = Algorithm::Dmrg1;
    return run_sweeps(A, x0, c);
}

SweepResult run_dmrg2(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg) {
    SweepConfig c = cfg;
    c.algorithm = Algorithm::Dmrg2;
    return run_sweeps(A, x0, c);
}

SweepResult run_dmrg1c(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg) {
    SweepConfig c = cfg;
    c.algorithm = Algorithm::Dmrg1c;
    return run_sweeps(A, x0, c);
}

SweepResult run_amen(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg) {
    SweepConfig c = cfg;
    c.algorithm = Algorithm::Amen;
    return run_sweeps(A, x0, c);
}

const char* algorithm_name(Algorithm a) {
    switch (a) {
    case Algorithm::Dmrg1: return "dmrg1";
    case Algorithm::Dmrg2: return "dmrg2";
    case Algorithm::Dmrg1c: return "dmrg1c";
    case Algorithm::Amen: return "amen";
    }
    return "unknown";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    if (name == "dmrg1") return Algorithm::Dmrg1;
    if (name == "dmrg2") return Algorithm::Dmrg2;
    if (name == "dmrg1c") return Algorithm::Dmrg1c;
    if (name == "amen") return Algorithm::Amen;
    return std::nullopt;
}

}  // namespace ttground
