#pragma once

#include "ttground/tt_matrix.hpp"
#include "ttground/tt_vector.hpp"

#include <cstdint>
#include <vector>

namespace ttground {

/// Truncation report for tt_round: rel_error_bound is an upper bound on
/// ||x - round(x)|| / ||x|| accumulated over all bonds; rank_capped is set
/// when rmax forced a larger truncation than eps asked for.
struct RoundInfo {
    double rel_error_bound = 0.0;
    bool rank_capped = false;
};

/// Random TT with the requested bond ranks, right-orthogonalized (center at
/// site 0) and normalized to unit norm.  Infeasible ranks shrink during
/// orthogonalization (r_k <= n_{k+1} * r_{k+1} after the pass).  The entry
/// stream depends only on (seed); identical calls are bit-identical.
TTVector tt_random(const std::vector<Index>& mode_sizes,
                   const std::vector<Index>& ranks, std::uint64_t seed);
TTVector tt_random(const std::vector<Index>& mode_sizes, Index uniform_rank,
                   std::uint64_t seed);

/// Densifies x into a vector of length prod(n_k), index i_1 slowest.
/// Guarded at 1e7 entries.
Vector tt_to_dense(const TTVector& x);

/// Sequential SVD compression of a dense vector into a TT.  Per-bond
/// absolute budget is eps * ||values|| / sqrt(d - 1).
TTVector tt_from_dense(const Vector& values, const std::vector<Index>& mode_sizes,
                       double eps, Index rmax = kNoRankCap);

/// Inner product <x, y> contracted bond by bond, O(d n r^3).
double tt_dot(const TTVector& x, const TTVector& y);

/// sqrt(<x, x>) with the round-off clamped at zero.
double tt_norm(const TTVector& x);

/// Exact sum: block-diagonal interior cores, stacked boundary cores.
TTVector tt_add(const TTVector& x, const TTVector& y);

/// Scales by alpha (applied at the orthogonality center when one is set).
TTVector tt_scale(const TTVector& x, double alpha);
void scale_inplace(TTVector& x, double alpha);

/// Moves the orthogonality center from site k one step in `direction` via a
/// thin QR, absorbing the triangular factor into the neighbour.  The
/// represented vector is unchanged; infeasible ranks shrink.
void shift_ortho(TTVector& x, Index k, Direction direction);

/// Full orthogonalization passes.  After right_orthogonalize the center is
/// site 0; after left_orthogonalize it is site d-1.
void right_orthogonalize(TTVector& x);
void left_orthogonalize(TTVector& x);

/// Moves an existing center to site k by repeated shifts.
void move_ortho_center(TTVector& x, Index k);

/// Scales x to unit norm (at the center); returns the previous norm.
double normalize(TTVector& x);

/// SVD truncation: right-orthogonalization pass followed by a left-to-right
/// sweep of truncated SVDs with per-bond budget eps * ||x|| / sqrt(d - 1) and
/// rank cap rmax.  Guarantees ||x - result|| <= eps * ||x|| when rmax does
/// not bind; the achieved bound is reported through `info`.  Exactly-zero
/// tails collapse to rank 1 with a zero core.  Result center is site d-1.
TTVector tt_round(const TTVector& x, double eps, Index rmax = kNoRankCap,
                  RoundInfo* info = nullptr);

/// Exact operator application; output ranks are R_k * r_k.
TTVector mpo_apply(const TTMatrix& A, const TTVector& x);

/// Densifies A into a (prod n_k) x (prod m_k) matrix, i_1/j_1 slowest.
/// Guarded at 4096 rows.  Used by tests and the brute-force oracle.
Matrix mpo_to_dense(const TTMatrix& A);

/// Internal densifier with a caller-chosen row guard (the oracle admits
/// slightly larger instances than the public guard).
Matrix mpo_to_dense_guarded(const TTMatrix& A, Index max_rows);

/// Appends the block S to core k along the bond pointing in `direction`,
/// zero-pads the neighbour accordingly and re-orthogonalizes with a QR; the
/// center moves one step.  The represented vector is exactly preserved.
/// direction Right: S has shape [r_{k-1}, n_k, rho], the right bond grows.
/// direction Left:  S has shape [rho, n_k, r_k], the left bond grows.
void enrich(TTVector& x, Index k, const Core3& block, Direction direction);

}  // namespace ttground
