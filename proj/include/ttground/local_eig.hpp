#pragma once

#include "ttground/local_operator.hpp"

#include <functional>

namespace ttground {

struct EigOptions {
    double tol = 1e-10;            // residual target, relative to max(1, |theta|)
    Index max_cycles = 3;          // Lanczos restart cycles
    Index krylov = 30;             // vectors per cycle
    Index dense_threshold = 1500;  // direct solve below this dimension
};

struct EigResult {
    double theta = 0.0;
    double resid = 0.0;      // explicit ||Hv - theta v|| at exit
    double rq_start = 0.0;   // Rayleigh quotient of the warm start
    bool breakdown = false;  // the Krylov space closed before the cycle filled
    bool used_dense = false;
    Index matvecs = 0;
};

using MatVec = std::function<void(const double*, double*)>;

/// Smallest eigenpair of a symmetric map, warm started from v (overwritten
/// with the unit-norm Ritz vector).  Full reorthogonalization; the returned
/// theta never exceeds the Rayleigh quotient of the warm start.
EigResult lanczos_min_eig(Index dim, const MatVec& matvec, Vector& v,
                          const EigOptions& opt);

/// Smallest local eigenpair between frames; dense direct solve below
/// opt.dense_threshold, Lanczos above.  v carries the warm start in and the
/// solution out; its sign is aligned with the warm start.
EigResult local_min_eig(const LocalOperator& H, Core3& v, const EigOptions& opt);

/// <x|A|x> / <x|x> by sweeping environment steps across the train, never
/// forming A x.  Throws on a zero vector.
double rayleigh(const TTMatrix& A, const TTVector& x);

}  // namespace ttground
