#include "ttground/models.hpp"

#include <cmath>
#include <stdexcept>

namespace ttground {

namespace {

void put(Core4& W, Index g, Index gp, const Matrix& op) {
    for (Index j = 0; j < op.cols(); ++j)
        for (Index i = 0; i < op.rows(); ++i) W(g, i, j, gp) = op(i, j);
}

}  // namespace

SpinOperators spin1_ops() {
    SpinOperators s;
    s.Sz = Matrix::Zero(3, 3);
    s.Sz(0, 0) = 1.0;
    s.Sz(2, 2) = -1.0;
    s.Sp = Matrix::Zero(3, 3);
    s.Sp(0, 1) = std::sqrt(2.0);
    s.Sp(1, 2) = std::sqrt(2.0);
    s.Sm = s.Sp.transpose();
    s.Sx = 0.5 * (s.Sp + s.Sm);
    s.Id = Matrix::Identity(3, 3);
    return s;
}

TTMatrix heisenberg_mpo(Index sites, bool periodic) {
    if (sites < 2) throw std::invalid_argument("heisenberg_mpo: need at least 2 sites");
    const SpinOperators s = spin1_ops();
    const Matrix half_sp = 0.5 * s.Sp, half_sm = 0.5 * s.Sm;
    const Index R = periodic ? 8 : 5;

    // Channel layout: 0 awaits a bond, 1..3 carry a started bond (partners
    // Sz, Sm, Sp), 4 is done; periodic channels 5..7 ferry the site-1
    // operators of the wrap bond to the last site.
    std::vector<Core4> cores;
    cores.reserve(sites);
    for (Index k = 0; k < sites; ++k) {
        const bool first = (k == 0), last = (k + 1 == sites);
        Core4 W(first ? 1 : R, 3, 3, last ? 1 : R);
        if (first) {  // sites >= 2, so the first core is never the last
            put(W, 0, 0, s.Id);
            put(W, 0, 1, s.Sz);
            put(W, 0, 2, half_sp);
            put(W, 0, 3, half_sm);
            if (periodic) {
                // d = 2: bond and wrap both close on site 2, giving twice the bond
                put(W, 0, 5, s.Sz);
                put(W, 0, 6, half_sp);
                put(W, 0, 7, half_sm);
            }
        } else if (last) {
            put(W, 1, 0, s.Sz);
            put(W, 2, 0, s.Sm);
            put(W, 3, 0, s.Sp);
            put(W, 4, 0, s.Id);
            if (periodic) {
                put(W, 5, 0, s.Sz);
                put(W, 6, 0, s.Sm);
                put(W, 7, 0, s.Sp);
            }
        } else {
            put(W, 0, 0, s.Id);
            put(W, 0, 1, s.Sz);
            put(W, 0, 2, half_sp);
            put(W, 0, 3, half_sm);
            put(W, 1, 4, s.Sz);
            put(W, 2, 4, s.Sm);
            put(W, 3, 4, s.Sp);
            put(W, 4, 4, s.Id);
            if (periodic) {
                put(W, 5, 5, s.Id);
                put(W, 6, 6, s.Id);
                put(W, 7, 7, s.Id);
            }
        }
        cores.push_back(std::move(W));
    }
    return TTMatrix(std::move(cores), /*symmetric=*/true);
}

TTMatrix diag_test_mpo(const std::vector<Vector>& site_diagonals) {
    if (site_diagonals.empty())
        throw std::invalid_argument("diag_test_mpo: need at least one site");
    std::vector<Core4> cores;
    cores.reserve(site_diagonals.size());
    for (const Vector& v : site_diagonals) {
        if (v.size() < 1) throw std::invalid_argument("diag_test_mpo: empty diagonal");
        Core4 W(1, v.size(), v.size(), 1);
        for (Index i = 0; i < v.size(); ++i) W(0, i, i, 0) = v[i];
        cores.push_back(std::move(W));
    }
    return TTMatrix(std::move(cores), /*symmetric=*/true);
}

}  // namespace ttground
