"""End-to-end checks of the python face: containers, arithmetic, solvers."""

import numpy as np
import pytest

import ttground as tt


def test_random_train_round_trips_to_dense():
    x = tt.tt_random([3, 3, 3, 3], 4, seed=7)
    dense = tt.tt_to_dense(x)
    assert dense.shape == (81,)
    assert abs(np.linalg.norm(dense) - 1.0) < 1e-12  # unit norm by construction

    y = tt.tt_from_dense(dense, [3, 3, 3, 3])
    assert np.linalg.norm(tt.tt_to_dense(y) - dense) < 1e-12

    z = tt.tt_round(x, 1e-2)
    assert np.linalg.norm(tt.tt_to_dense(z) - dense) <= 1e-2 + 1e-12
    assert z.max_rank <= x.max_rank


def test_arithmetic_matches_numpy():
    x = tt.tt_random([2, 3, 4], 3, seed=1)
    y = tt.tt_random([2, 3, 4], 2, seed=2)
    xd, yd = tt.tt_to_dense(x), tt.tt_to_dense(y)
    assert abs(tt.tt_dot(x, y) - xd @ yd) < 1e-12
    s = tt.tt_add(x, tt.tt_scale(y, -2.5))
    assert np.linalg.norm(tt.tt_to_dense(s) - (xd - 2.5 * yd)) < 1e-12
    assert abs(tt.tt_norm(s) - np.linalg.norm(xd - 2.5 * yd)) < 1e-12


def test_heisenberg_model_and_oracle():
    A = tt.heisenberg_mpo(3, periodic=True)
    assert A.site_count == 3
    dense = tt.mpo_to_dense(A)
    assert np.linalg.norm(dense - dense.T) < 1e-13
    lam, vec = tt.exact_ground_state(A)
    assert abs(lam + 3.0) < 1e-10
    assert np.linalg.norm(dense @ vec - lam * vec) < 1e-9

    xs = tt.tt_from_dense(vec, [3, 3, 3])
    assert abs(tt.rayleigh(A, xs) - lam) < 1e-10


def test_mpo_apply_matches_dense():
    A = tt.heisenberg_mpo(4, periodic=False)
    x = tt.tt_random([3, 3, 3, 3], 3, seed=11)
    ax = tt.tt_to_dense(tt.mpo_apply(A, x))
    ref = tt.mpo_to_dense(A) @ tt.tt_to_dense(x)
    assert np.linalg.norm(ax - ref) < 1e-11


@pytest.mark.parametrize("runner", [tt.run_amen, tt.run_dmrg2])
def test_solvers_reach_the_dense_ground_state(runner):
    A = tt.heisenberg_mpo(4, periodic=True)
    lam_ref, _ = tt.exact_ground_state(A)
    x0 = tt.tt_random([3, 3, 3, 3], 2, seed=1)
    res = runner(A, x0, eps=1e-6)
    assert res["converged"]
    assert abs(res["lambda"] - lam_ref) < 1e-7
    assert res["lambda"] >= lam_ref - 1e-9  # variational bound
    assert res["monotone_defect"] <= 0.0
    recs = res["records"]
    assert recs and recs[0]["sweep"] == 1
    assert all(r["wall_seconds"] >= 0 for r in recs)
    assert abs(tt.rayleigh(A, res["x"]) - res["lambda"]) < 1e-9


def test_two_site_solver_is_exact_on_two_sites():
    A = tt.heisenberg_mpo(2, periodic=True)
    res = tt.run_dmrg2(A, tt.tt_random([3, 3], 2, seed=3))
    assert abs(res["lambda"] + 4.0) < 1e-10


def test_container_file_round_trip(tmp_path):
    x = tt.tt_random([3, 4, 3], 5, seed=9)
    path = str(tmp_path / "x.ttv")
    tt.save_tt(x, path)
    y = tt.load_tt_vector(path)
    assert np.array_equal(tt.tt_to_dense(x), tt.tt_to_dense(y))

    A = tt.heisenberg_mpo(3, periodic=True)
    mpath = str(tmp_path / "a.ttm")
    tt.save_tt_matrix(A, mpath)
    B = tt.load_tt_matrix(mpath)
    assert np.array_equal(tt.mpo_to_dense(A), tt.mpo_to_dense(B))


def test_fixed_schedule_and_errors():
    A = tt.heisenberg_mpo(4, periodic=True)
    x0 = tt.tt_random([3, 3, 3, 3], 2, seed=5)
    res = tt.run_dmrg2(A, x0, schedule=[(2, 0.0), (9, 0.0)], tol_lambda=0.0,
                       max_sweeps=4)
    assert max(r["max_rank"] for r in res["records"] if r["sweep"] == 1) <= 2

    with pytest.raises(ValueError):
        tt.run_amen(A, x0, enrich_mode="bogus")
    with pytest.raises(ValueError):
        tt.run_amen(A, x0, eps=-1.0)
