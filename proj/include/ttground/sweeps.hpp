#pragma once

#include "ttground/environment.hpp"
#include "ttground/local_eig.hpp"
#include "ttground/tt_ops.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ttground {

enum class Algorithm { Dmrg1, Dmrg2, Dmrg1c, Amen };

/// How an AMEn run obtains its enrichment directions: compress the global
/// residual A x - theta x once per half sweep (GlobalZ), or truncate the
/// local residual block at each site without ever forming a global vector.
enum class EnrichMode { GlobalZ, LocalProjection };

struct ScheduleEntry {
    Index max_rank = 1;
    double weight_a = 0.0;
};

/// Rank control for a run.  Adaptive truncates by a relative Frobenius
/// budget eps with a hard cap rmax; FixedSchedule prescribes per-sweep ranks
/// (and correction weights) directly, the last entry repeating.
struct RankStrategy {
    enum class Kind { Adaptive, FixedSchedule };

    Kind kind = Kind::Adaptive;
    double eps = 1e-6;
    Index rmax = kNoRankCap;
    std::vector<ScheduleEntry> schedule;

    static RankStrategy adaptive(double eps, Index rmax = kNoRankCap) {
        RankStrategy s;
        s.kind = Kind::Adaptive;
        s.eps = eps;
        s.rmax = rmax;
        return s;
    }

    static RankStrategy fixed(std::vector<ScheduleEntry> entries) {
        RankStrategy s;
        s.kind = Kind::FixedSchedule;
        s.schedule = std::move(entries);
        return s;
    }

    /// Entry for a 1-based sweep index; the last entry repeats.
    const ScheduleEntry& entry(Index sweep) const;

    void validate() const;
};

struct SweepConfig {
    Algorithm algorithm = Algorithm::Amen;
    RankStrategy strategy;
    Index max_sweeps = 20;
    /// Stop when |d lambda| over a full sweep < tol_lambda * max(1, |lambda|).
    double tol_lambda = 1e-8;
    /// Enrichment rank rho (amen) or kick rank (dmrg1 with random_kick).
    Index enrich_rank = 4;
    EnrichMode enrich_mode = EnrichMode::GlobalZ;
    /// Correction weight a for dmrg1c under Adaptive rank control; fixed
    /// schedules carry their own per-sweep weights.
    double weight_a = 1e-4;
    /// dmrg1 grows ranks only when this is set (random orthonormal columns).
    bool random_kick = false;
    /// Rounding accuracy for the global residual train; 0 = rank cap only.
    double eps_z = 0.0;
    std::uint64_t seed = 1;
    std::optional<double> reference_lambda;
    /// Wall-clock budget in seconds; 0 disables the budget.
    double max_seconds = 0.0;
    Index dense_threshold = 1500;
    /// Instrumentation hook: events "post_solve", "pre_enrich",
    /// "post_enrich", "post_step", "post_round" with the current state and
    /// site (-1 for whole-train events).  Unset in production runs.
    std::function<void(const char*, const TTVector&, Index)> observer;
};

/// One row of a run trace; a row per local solve plus a row per boundary
/// truncation (direction 'T', site -1).  wall_seconds is cumulative.
struct ConvergenceRecord {
    Index sweep = 0;
    Index site = 0;
    char direction = 'R';
    double lambda = 0.0;
    double lambda_error = std::numeric_limits<double>::quiet_NaN();
    double resid_estimate = 0.0;
    Index max_rank = 0;
    double wall_seconds = 0.0;
};

struct SweepResult {
    TTVector x;
    double lambda = 0.0;
    bool converged = false;
    Index sweeps = 0;
    double wall_seconds = 0.0;
    /// Worst violation of the per-solve descent contract
    /// theta <= rq(warm start) + 10 * solver tol (0 when clean).
    double monotone_defect = 0.0;
    std::string stop_reason;  // "converged", "max_sweeps", "time_budget"
    std::vector<ConvergenceRecord> records;
};

/// Compressed residual z ~ A x - theta x, rounded to accuracy eps_z and
/// rank cap rho.  theta should be the current Rayleigh quotient.
TTVector compute_residual_tt(const TTMatrix& A, const TTVector& x, double theta,
                             double eps_z, Index rho);

/// Subspace-averaging update for the correction scheme.  block is the
/// operator-bond-open product over the Core3 composite axis (open_right for
/// Direction::Right, open_left for Direction::Left); its slices are
/// weighted by sqrt(a) at their natural norms and concatenated with the
/// matricized core.  Returns the r_target dominant singular frame U as the
/// new core plus the transfer T that the caller absorbs into the next core
/// (T * core_{k+1} for Right, core_{k-1} * T for Left).  Requires r_target
/// not to exceed the frame dimension.
std::pair<Core3, Matrix> averaging_step(const Core3& xcore, const Core3& block,
                                        double a, Index r_target, Direction dir);

/// The four alternating drivers.  x0 is copied, right-orthogonalized and
/// normalized; the returned train is unit norm with a recorded center.
SweepResult run_dmrg1(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg);
SweepResult run_dmrg2(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg);
SweepResult run_dmrg1c(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg);
SweepResult run_amen(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg);

/// Dispatch on cfg.algorithm.
SweepResult run_sweeps(const TTMatrix& A, const TTVector& x0, const SweepConfig& cfg);

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);

}  // namespace ttground
