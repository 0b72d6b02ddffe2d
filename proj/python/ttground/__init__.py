"""Tensor-train ground-state solvers: containers, arithmetic, sweep drivers."""

from ._ttground import (
    TTMatrix,
    TTVector,
    __version__,
    diag_test_mpo,
    exact_ground_state,
    heisenberg_mpo,
    load_tt_matrix,
    load_tt_vector,
    mpo_apply,
    mpo_to_dense,
    rayleigh,
    run_amen,
    run_dmrg1,
    run_dmrg1c,
    run_dmrg2,
    save_tt,
    save_tt_matrix,
    tt_add,
    tt_dot,
    tt_from_dense,
    tt_norm,
    tt_random,
    tt_round,
    tt_scale,
    tt_to_dense,
)

__all__ = [
    "TTMatrix",
    "TTVector",
    "__version__",
    "diag_test_mpo",
    "exact_ground_state",
    "heisenberg_mpo",
    "load_tt_matrix",
    "load_tt_vector",
    "mpo_apply",
    "mpo_to_dense",
    "rayleigh",
    "run_amen",
    "run_dmrg1",
    "run_dmrg1c",
    "run_dmrg2",
    "save_tt",
    "save_tt_matrix",
    "tt_add",
    "tt_dot",
    "tt_from_dense",
    "tt_norm",
    "tt_random",
    "tt_round",
    "tt_scale",
    "tt_to_dense",
]
