#pragma once

#include "ttground/tt_matrix.hpp"

namespace ttground {

enum class OracleMethod { Dense, Lanczos };

struct GroundState {
    double lambda = 0.0;
    Vector vector;
};

/// Brute-force smallest eigenpair of a symmetric operator train.  Dense
/// diagonalizes the densified matrix (guarded at 6561 rows, one extra spin
/// over the public densifier so the d = 8 chain can cross-check the
/// iterative path); Lanczos runs matrix-free on mpo_matvec_dense (guarded at
/// 3^12 rows) with full reorthogonalization and throws if the residual never
/// reaches 1e-8 relative to the Ritz value.
GroundState exact_ground_state(const TTMatrix& A, OracleMethod method);

/// A . v through sequential core contractions, O(d n^2 R N) for N = prod n;
/// never materializes the dense matrix.
Vector mpo_matvec_dense(const TTMatrix& A, const Vector& v);

}  // namespace ttground
