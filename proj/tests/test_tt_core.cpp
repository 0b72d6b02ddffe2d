#include "ttground/models.hpp"
#include "ttground/tt_io.hpp"
#include "ttground/tt_ops.hpp"

#include "doctest.h"
#include "support/test_helpers.hpp"

#include <cstdint>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace ttground;

namespace {

double dense_gap(const TTVector& a, const TTVector& b) {
    return (tt_to_dense(a) - tt_to_dense(b)).norm();
}

bool is_identity(const Matrix& M, double tol) {
    return (M - Matrix::Identity(M.rows(), M.cols())).norm() < tol;
}

}  // namespace

TEST_CASE("random train is right-orthogonal, normalized and reproducible") {
    const std::vector<Index> modes{2, 3, 4, 3};
    TTVector x = tt_random(modes, 5, 42);
    REQUIRE(x.site_count() == 4);
    CHECK(x.ortho_center() == std::optional<Index>(0));
    for (Index k = 1; k < x.site_count(); ++k) {
        const auto rm = x.core(k).right_mat();
        CHECK(is_identity(rm * rm.transpose(), 1e-12));
    }
    CHECK(tt_norm(x) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tt_to_dense(x).norm() == doctest::Approx(1.0).epsilon(1e-12));

    TTVector y = tt_random(modes, 5, 42);
    CHECK(dense_gap(x, y) == 0.0);  // bit-identical by construction
    TTVector z = tt_random(modes, 5, 43);
    CHECK(dense_gap(x, z) > 1e-3);

    // infeasible uniform rank shrinks instead of padding with junk
    TTVector w = tt_random({2, 2, 2}, 50, 7);
    CHECK(w.max_rank() <= 4);
    CHECK(tt_norm(w) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("dense conversions invert each other") {
    const std::vector<Index> modes{3, 3, 3, 3};
    TTVector x = tt_random(modes, 4, 3);
    Vector v = tt_to_dense(x);
    TTVector y = tt_from_dense(v, modes, 1e-13);
    CHECK((tt_to_dense(y) - v).norm() < 1e-11);
    CHECK(y.max_rank() <= x.max_rank());

    // an unstructured vector compresses only within the requested budget
    Vector raw = test::random_dense(81, 11);
    TTVector exact = tt_from_dense(raw, modes, 0.0);
    CHECK((tt_to_dense(exact) - raw).norm() < 1e-12 * raw.norm());
    TTVector lossy = tt_from_dense(raw, modes, 0.3);
    CHECK((tt_to_dense(lossy) - raw).norm() <= 0.3 * raw.norm() + 1e-12);
    CHECK(lossy.max_rank() < exact.max_rank());

    TTVector single = tt_from_dense(raw.head(3), {3}, 0.0);
    CHECK((tt_to_dense(single) - raw.head(3)).norm() == 0.0);
}

TEST_CASE("dot products and norms agree with dense arithmetic") {
    const std::vector<Index> modes{2, 4, 3, 2};
    TTVector x = tt_random(modes, 3, 1);
    TTVector y = tt_random(modes, 4, 2);
    const Vector xd = tt_to_dense(x), yd = tt_to_dense(y);
    CHECK(tt_dot(x, y) == doctest::Approx(xd.dot(yd)).epsilon(1e-12));
    CHECK(tt_norm(y) == doctest::Approx(yd.norm()).epsilon(1e-12));

    TTVector z = tt_add(tt_scale(x, 2.5), tt_scale(y, -1.0));
    CHECK((tt_to_dense(z) - (2.5 * xd - yd)).norm() < 1e-12);
    CHECK(z.rank(2) == x.rank(2) + y.rank(2));
}

TEST_CASE("orthogonalization moves the center without touching the vector") {
    TTVector x = tt_random({3, 2, 3, 2, 3}, 4, 9);
    TTVector y = x;
    left_orthogonalize(y);
    CHECK(y.ortho_center() == std::optional<Index>(4));
    CHECK(dense_gap(x, y) < 1e-12);
    for (Index k = 0; k < 4; ++k) {
        const auto lm = y.core(k).left_mat();
        CHECK(is_identity(lm.transpose() * lm, 1e-12));
    }
    move_ortho_center(y, 2);
    CHECK(y.ortho_center() == std::optional<Index>(2));
    CHECK(dense_gap(x, y) < 1e-12);
    CHECK(tt_norm(y) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rounding keeps the error inside the budget and reports it") {
    const std::vector<Index> modes{3, 3, 3, 3, 3};
    TTVector big = tt_random(modes, 3, 21);
    TTVector noise = tt_random(modes, 3, 22);
    TTVector x = tt_add(big, tt_scale(noise, 1e-8));

    RoundInfo info;
    TTVector y = tt_round(x, 1e-4, kNoRankCap, &info);
    const double norm = tt_to_dense(x).norm();
    CHECK(dense_gap(x, y) <= 1e-4 * norm);
    CHECK(dense_gap(x, y) <= info.rel_error_bound * norm + 1e-13);
    CHECK(y.max_rank() == big.max_rank());  // the 1e-8 sliver is gone
    CHECK_FALSE(info.rank_capped);
    CHECK(y.ortho_center() == std::optional<Index>(4));

    TTVector exact = tt_round(x, 0.0);
    CHECK(dense_gap(x, exact) < 1e-12);

    RoundInfo capped;
    TTVector z = tt_round(x, 0.0, 2, &capped);
    CHECK(z.max_rank() <= 2);
    CHECK(capped.rank_capped);
    CHECK(capped.rel_error_bound > 0.0);

    TTVector nil = tt_round(TTVector::zeros(modes, {1, 2, 4, 4, 2, 1}), 1e-6);
    CHECK(nil.max_rank() == 1);
    CHECK(tt_to_dense(nil).norm() == 0.0);
}

TEST_CASE("operator application matches the densified operator") {
    const std::vector<Index> modes{2, 3, 2, 3};
    TTMatrix A = test::random_mpo(modes, modes, {1, 3, 2, 3, 1}, 5);
    TTVector x = tt_random(modes, 3, 6);
    TTVector y = mpo_apply(A, x);
    CHECK(y.rank(1) == 3 * x.rank(1));
    const Matrix Ad = mpo_to_dense(A);
    CHECK((tt_to_dense(y) - Ad * tt_to_dense(x)).norm() < 1e-11);

    // rectangular modes exercise the row/col bookkeeping
    const std::vector<Index> rows{2, 2, 2, 2};
    TTMatrix B = test::random_mpo(rows, modes, {1, 2, 2, 2, 1}, 8);
    TTVector z = mpo_apply(B, x);
    CHECK(z.mode_sizes() == rows);
    CHECK((tt_to_dense(z) - mpo_to_dense(B) * tt_to_dense(x)).norm() < 1e-11);
}

TEST_CASE("enrichment grows a bond but never changes the vector") {
    TTVector x = tt_random({3, 3, 3, 3}, 3, 17);
    const Vector ref = tt_to_dense(x);

    TTVector y = x;
    move_ortho_center(y, 1);
    NormalStream rng(99);
    Core3 S(y.core(1).left(), 3, 2);
    for (Index p = 0; p < S.size(); ++p) S.data()[p] = rng.next_normal();
    enrich(y, 1, S, Direction::Right);
    CHECK(y.ortho_center() == std::optional<Index>(2));
    CHECK(y.rank(2) == std::min<Index>(y.core(1).left() * 3, 5));
    CHECK((tt_to_dense(y) - ref).norm() < 1e-12);

    TTVector w = x;
    move_ortho_center(w, 2);
    Core3 T(2, 3, w.core(2).right());
    for (Index p = 0; p < T.size(); ++p) T.data()[p] = rng.next_normal();
    enrich(w, 2, T, Direction::Left);
    CHECK(w.ortho_center() == std::optional<Index>(1));
    CHECK((tt_to_dense(w) - ref).norm() < 1e-12);

    // the center invariant still holds after enrichment
    for (Index k = 0; k < 1; ++k) {
        const auto lm = w.core(k).left_mat();
        CHECK(is_identity(lm.transpose() * lm, 1e-12));
    }
    for (Index k = 2; k < 4; ++k) {
        const auto rm = w.core(k).right_mat();
        CHECK(is_identity(rm * rm.transpose(), 1e-12));
    }
}

TEST_CASE("binary container round-trips trains and operators") {
    const TTVector x = tt_random({3, 4, 2, 3}, 5, 31);

    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_tt(buf, x);
    const TTVector y = read_tt_vector(buf);
    REQUIRE(y.site_count() == x.site_count());
    CHECK(y.ranks() == x.ranks());
    for (Index k = 0; k < x.site_count(); ++k)
        CHECK((y.core(k).vec() - x.core(k).vec()).norm() == 0.0);

    const TTMatrix A = heisenberg_mpo(4, true);
    std::stringstream mbuf(std::ios::in | std::ios::out | std::ios::binary);
    write_tt(mbuf, A);
    const TTMatrix B = read_tt_matrix(mbuf);
    REQUIRE(B.site_count() == A.site_count());
    CHECK(B.op_ranks() == A.op_ranks());
    for (Index k = 0; k < A.site_count(); ++k)
        CHECK((B.core(k).vec() - A.core(k).vec()).norm() == 0.0);

    // file-path round trip plus a spot check of the layout: after the header
    // (4 + 8*(1 + d + d + 1) bytes for this shape) the first payload float is
    // core 0 entry (0, 0, 0)
    const std::string path = "io_roundtrip.ttv";
    save_tt(x, path);
    const TTVector z = load_tt_vector(path);
    CHECK((tt_to_dense(z) - tt_to_dense(x)).norm() == 0.0);
    std::ifstream raw(path, std::ios::binary);
    REQUIRE(raw.good());
    char magic[4];
    raw.read(magic, 4);
    CHECK(std::string(magic, 4) == "TTV1");
    raw.seekg(4 + 8 * (1 + 4 + 5));
    unsigned char le[8];
    raw.read(reinterpret_cast<char*>(le), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(le[i]) << (8 * i);
    double first;
    std::memcpy(&first, &bits, 8);
    CHECK(first == x.core(0)(0, 0, 0));
    std::remove(path.c_str());
}

TEST_CASE("binary container rejects malformed input") {
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    buf.write("TTX1", 4);
    CHECK_THROWS_AS((void)read_tt_vector(buf), std::runtime_error);

    const TTVector x = tt_random({3, 3}, 2, 1);
    std::stringstream ok(std::ios::in | std::ios::out | std::ios::binary);
    write_tt(ok, x);
    const std::string bytes = ok.str();

    // truncated payload
    std::stringstream cut(bytes.substr(0, bytes.size() - 4),
                          std::ios::in | std::ios::binary);
    CHECK_THROWS_AS((void)read_tt_vector(cut), std::runtime_error);

    // vector magic fed to the operator loader
    std::stringstream wrong(bytes, std::ios::in | std::ios::binary);
    CHECK_THROWS_AS((void)read_tt_matrix(wrong), std::runtime_error);

    CHECK_THROWS_AS((void)load_tt_vector("no_such_file.ttv"), std::runtime_error);
}
