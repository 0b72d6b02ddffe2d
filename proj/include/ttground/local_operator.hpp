#pragma once

#include "ttground/environment.hpp"

namespace ttground {

/// Effective symmetric operator acting on a single core between fixed
/// environments: H[(a,i,b),(a',j,b')] = sum_{g,g'} L(a,g,a') W(g,i,j,g')
/// R(b,g',b').  Holds references; the environments and the operator core
/// must outlive it.  For a two-site problem pass a merged operator core and
/// the environments of the outer bonds.
class LocalOperator {
public:
    LocalOperator(const Core3& left_env, const Core4& W, const Core3& right_env);

    Index rows() const { return n_; }
    Index rank_left() const { return rl_; }
    Index rank_right() const { return rr_; }
    Index dim() const { return rl_ * n_ * rr_; }

    /// H v for a core-shaped v.
    Core3 apply(const Core3& v) const;

    /// Same map on flat storage (the Lanczos iteration works on vectors).
    void apply_vec(const double* in, double* out) const;

    /// Materializes H; only sensible for small dim().
    Matrix dense() const;

    /// L and W contracted with v, right triple (g', b') left open:
    /// shape (r_l, n, R' * r_r_ket).  The enrichment and correction
    /// machinery feeds on these blocks.
    Core3 open_right(const Core3& v) const { return contract_left_op(L_, W_, v); }

    /// Mirror image, left triple (g, a') open: shape (R * r_l_ket, n, r_r).
    Core3 open_left(const Core3& v) const { return contract_right_op(R_, W_, v); }

    const Core3& left_env() const { return L_; }
    const Core3& right_env() const { return R_; }
    const Core4& op_core() const { return W_; }

private:
    const Core3& L_;
    const Core4& W_;
    const Core3& R_;
    Index rl_, n_, rr_;
};

/// Contracts two neighbouring operator cores into one with composite mode
/// indices (i_k fastest), so two-site problems reuse the one-site machinery.
Core4 merge_op_pair(const Core4& W1, const Core4& W2);

/// Materializes H column by column through apply_vec.  Slower than
/// LocalOperator::dense() and capped at dim <= 1500; kept as an independent
/// cross-check of the blockwise assembly.
Matrix local_dense(const LocalOperator& op);

}  // namespace ttground
