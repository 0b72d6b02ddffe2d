#include "ttground/environment.hpp"
#include "ttground/local_eig.hpp"
#include "ttground/tt_ops.hpp"

#include "doctest.h"
#include "support/test_helpers.hpp"

#include <vector>

using namespace ttground;

namespace {

struct Setup {
    TTMatrix A;
    TTVector x;
    Matrix Ad;
    Setup()
        : A(test::random_mpo({3, 2, 3, 2}, {3, 2, 3, 2}, {1, 3, 2, 3, 1}, 31)),
          x(tt_random({3, 2, 3, 2}, 3, 32)),
          Ad(mpo_to_dense(A)) {}
};

}  // namespace

TEST_CASE("environments split the quadratic form at every bond") {
    Setup s;
    const Vector xd = tt_to_dense(s.x);
    const double form = xd.dot(s.Ad * xd);
    EnvironmentStack env(s.A, s.x);
    for (Index k = 0; k <= s.x.site_count(); ++k) {
        CHECK(env.left(k).vec().dot(env.right(k).vec()) ==
              doctest::Approx(form).epsilon(1e-12));
        if (k < s.x.site_count())
            env.push_left(k, s.A.core(k), s.x.core(k), s.x.core(k));
    }
}

TEST_CASE("one-site effective operator matches its dense frame projection") {
    Setup s;
    EnvironmentStack env(s.A, s.x);
    for (Index k = 0; k < 2; ++k)
        env.push_left(k, s.A.core(k), s.x.core(k), s.x.core(k));

    const Index k = 2;
    LocalOperator H(env.left(k), s.A.core(k), env.right(k + 1));
    const Matrix F = test::frame_matrix(s.x, k);
    const Matrix expected = F.transpose() * s.Ad * F;
    CHECK((H.dense() - expected).norm() < 1e-11 * expected.norm());

    TTVector probe = tt_random(s.x.mode_sizes(), s.x.ranks(), 77);
    const Core3& v = probe.core(k);
    Core3 w = H.apply(v);
    CHECK((w.vec() - expected * v.vec()).norm() < 1e-11 * expected.norm());
}

TEST_CASE("two-site merged operator matches the dense pair") {
    Setup s;
    EnvironmentStack env(s.A, s.x);
    env.push_left(0, s.A.core(0), s.x.core(0), s.x.core(0));

    const Index k = 1;
    Core4 WW = merge_op_pair(s.A.core(k), s.A.core(k + 1));
    CHECK(WW.rows() == 6);
    LocalOperator H2(env.left(k), WW, env.right(k + 2));
    const Matrix F2 = test::frame_matrix2(s.x, k);
    const Matrix expected = F2.transpose() * s.Ad * F2;
    CHECK((H2.dense() - expected).norm() < 1e-11 * expected.norm());
}

TEST_CASE("open blocks recombine into the full application") {
    Setup s;
    EnvironmentStack env(s.A, s.x);
    env.push_left(0, s.A.core(0), s.x.core(0), s.x.core(0));
    const Index k = 1;
    LocalOperator H(env.left(k), s.A.core(k), env.right(k + 1));
    const Core3& v = s.x.core(k);

    const Core3 w = H.apply(v);
    const Core3 br = H.open_right(v);
    Matrix via_right = br.left_mat() * env.right(k + 1).right_mat().transpose();
    CHECK((ConstMatrixMap(via_right.data(), w.size(), 1) - w.vec()).norm() < 1e-12);

    const Core3 bl = H.open_left(v);
    Matrix via_left = env.left(k).right_mat() * bl.right_mat();
    CHECK((ConstMatrixMap(via_left.data(), w.size(), 1) - w.vec()).norm() < 1e-12);
}

TEST_CASE("lanczos converges to the smallest eigenpair") {
    const Index n = 180;
    Matrix S(n, n);
    NormalStream rng(55);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i) S(i, j) = rng.next_normal();
    Matrix M = 0.5 * (S + S.transpose());
    const auto exact = test::dense_min_eig(M);

    Vector v = test::random_dense(n, 56);
    const double rq0 = v.dot(M * v) / v.squaredNorm();
    EigOptions opt;
    opt.tol = 1e-9;
    opt.max_cycles = 8;
    opt.krylov = 40;
    auto matvec = [&M](const double* in, double* out) {
        ConstMatrixMap vi(in, M.rows(), 1);
        MatrixMap(out, M.rows(), 1) = M * vi;
    };
    EigResult res = lanczos_min_eig(n, matvec, v, opt);
    CHECK(res.theta == doctest::Approx(exact.lambda).epsilon(1e-9));
    CHECK(res.resid <= opt.tol * std::max(1.0, std::abs(res.theta)));
    CHECK(res.theta <= rq0 + 1e-12);
    CHECK(std::abs(std::abs(v.dot(exact.vector)) - 1.0) < 1e-6);

    // identity map: the warm start is already an eigenvector
    Vector e = test::random_dense(n, 57);
    EigResult idres = lanczos_min_eig(
        n, [](const double* in, double* out) { MatrixMap(out, 180, 1) = ConstMatrixMap(in, 180, 1); },
        e, opt);
    CHECK(idres.breakdown);
    CHECK(idres.theta == doctest::Approx(1.0));
}

TEST_CASE("local eigensolver agrees across dense and iterative paths") {
    Setup s;
    TTMatrix Asym = s.A;
    // symmetrize through the dense image to get a meaningful spectrum
    Matrix Md = 0.5 * (s.Ad + s.Ad.transpose());
    EnvironmentStack env(s.A, s.x);
    env.push_left(0, s.A.core(0), s.x.core(0), s.x.core(0));
    const Index k = 1;

    // H_eff is symmetric only for symmetric A; build one from A + A^T via frames
    const Matrix F = test::frame_matrix(s.x, k);
    const Matrix Hd = F.transpose() * Md * F;
    const auto exact = test::dense_min_eig(Hd);

    Vector v = test::random_dense(Hd.rows(), 58);
    EigOptions opt;
    opt.tol = 1e-10;
    opt.max_cycles = 10;
    opt.krylov = 30;
    auto matvec = [&Hd](const double* in, double* out) {
        ConstMatrixMap vi(in, Hd.rows(), 1);
        MatrixMap(out, Hd.rows(), 1) = Hd * vi;
    };
    EigResult res = lanczos_min_eig(Hd.rows(), matvec, v, opt);
    CHECK(res.theta == doctest::Approx(exact.lambda).epsilon(1e-9));
}
