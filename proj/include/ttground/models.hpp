#pragma once

#include "ttground/tt_matrix.hpp"

#include <vector>

namespace ttground {

/// Spin-1 operators in the basis (m = +1, 0, -1), real ladder form:
/// Sz = diag(1,0,-1), Sp = sqrt(2)(e1 e2^T + e2 e3^T), Sm = Sp^T,
/// Sx = (Sp + Sm)/2.  The real form suffices because every bond term below
/// is Sz Sz + (Sp Sm + Sm Sp)/2.
struct SpinOperators {
    Matrix Sz, Sp, Sm, Sx, Id;
};

SpinOperators spin1_ops();

/// Spin-1 Heisenberg chain H = sum_k S_k . S_{k+1} with unit coupling, as an
/// operator train; `periodic` adds the wrap bond S_d . S_1 through three
/// extra carried channels.  Bulk operator rank is 5 open, 8 periodic.
TTMatrix heisenberg_mpo(Index sites, bool periodic);

/// Rank-1 operator train whose densification is diag(v_1) x ... x diag(v_d).
/// The spectrum is every product of one value per site, which makes exact
/// statements about solver output cheap to write down.
TTMatrix diag_test_mpo(const std::vector<Vector>& site_diagonals);

}  // namespace ttground
