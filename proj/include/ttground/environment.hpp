#pragma once

#include "ttground/tt_matrix.hpp"
#include "ttground/tt_vector.hpp"

#include <vector>

namespace ttground {

/// Boundary contractions of <bra| A |ket> around a bond.  An environment at
/// bond k is a Core3 laid out (bra bond, operator bond, ket bond); bond 0 and
/// bond d carry the scalar 1.
///
/// contract_left_op takes the environment left of a site plus the site cores
/// of A and the ket and leaves the right triple open; contract_right_op is
/// its mirror.  Both also serve as the one-site correction blocks of the
/// sweep algorithms.
Core3 contract_left_op(const Core3& left_env, const Core4& W, const Core3& ket);
Core3 contract_right_op(const Core3& right_env, const Core4& W, const Core3& ket);

/// One contraction step over a site: env at bond k plus site k of bra, A,
/// ket gives the env at bond k+1 (env_step_right) or, stepping from bond
/// k+1, the env at bond k (env_step_left).
Core3 env_step_right(const Core3& left_env, const Core4& W, const Core3& bra,
                     const Core3& ket);
Core3 env_step_left(const Core3& right_env, const Core4& W, const Core3& bra,
                    const Core3& ket);

/// Plain two-train overlaps without an operator, used to express a direction
/// z in the frame of x.  interface_left(x,z,k) contracts cores 0..k-1 into a
/// matrix r^x_k x r^z_k; interface_right(x,z,k) contracts cores k..d-1 into
/// r^x_k x r^z_k.  With orthonormal x cores these are frame projections.
Matrix interface_left(const TTVector& x, const TTVector& z, Index k);
Matrix interface_right(const TTVector& x, const TTVector& z, Index k);

/// The d+1 left and right environments of <x| A |x> used by a sweep.
/// left(k) covers sites 0..k-1, right(k) covers sites k..d-1.  Entries carry
/// validity flags: writing core k of x invalidates left(j) for j > k and
/// right(j) for j <= k (report it via invalidate_site), and reading a stale
/// entry throws instead of silently recomputing.
class EnvironmentStack {
public:
    explicit EnvironmentStack(Index sites);

    /// left(0) = 1 and right(k) for all k, from the current cores of x.
    EnvironmentStack(const TTMatrix& A, const TTVector& x);

    Index sites() const { return d_; }

    const Core3& left(Index k) const;
    const Core3& right(Index k) const;

    bool left_valid(Index k) const { return lvalid_.at(static_cast<size_t>(k)) != 0; }
    bool right_valid(Index k) const { return rvalid_.at(static_cast<size_t>(k)) != 0; }

    /// left(k+1) from left(k) over site k.
    void push_left(Index k, const Core4& W, const Core3& bra, const Core3& ket);

    /// right(k) from right(k+1) over site k.
    void push_right(Index k, const Core4& W, const Core3& bra, const Core3& ket);

    /// Records that core k of x changed.
    void invalidate_site(Index k);

    /// Recomputes every right environment (and resets left to just bond 0);
    /// used when a sweep starts from a freshly right-orthogonalized iterate.
    void rebuild(const TTMatrix& A, const TTVector& x);

private:
    Index d_ = 0;
    std::vector<Core3> left_, right_;
    std::vector<char> lvalid_, rvalid_;
};

}  // namespace ttground
