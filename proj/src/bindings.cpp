// Python face of the library: train/operator containers as opaque handles
// with numpy conversions, the arithmetic that tests need, and the four sweep
// drivers taking keyword options.

#include "ttground/models.hpp"
#include "ttground/oracle.hpp"
#include "ttground/sweeps.hpp"
#include "ttground/tt_io.hpp"
#include "ttground/tt_ops.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace ttground;

namespace {

Vector to_vector(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 1) throw std::invalid_argument("expected a 1-d array");
    Vector v(a.shape(0));
    std::copy(a.data(), a.data() + a.shape(0), v.data());
    return v;
}

py::array_t<double> from_vector(const Vector& v) {
    py::array_t<double> out(v.size());
    std::copy(v.data(), v.data() + v.size(), out.mutable_data());
    return out;
}

py::array_t<double> core_array(const Core3& c) {
    py::array_t<double> out({c.left(), c.mode(), c.right()});
    auto w = out.mutable_unchecked<3>();
    for (Index a = 0; a < c.left(); ++a)
        for (Index i = 0; i < c.mode(); ++i)
            for (Index b = 0; b < c.right(); ++b) w(a, i, b) = c(a, i, b);
    return out;
}

py::array_t<double> core_array(const Core4& c) {
    py::array_t<double> out({c.left(), c.rows(), c.cols(), c.right()});
    auto w = out.mutable_unchecked<4>();
    for (Index g = 0; g < c.left(); ++g)
        for (Index i = 0; i < c.rows(); ++i)
            for (Index j = 0; j < c.cols(); ++j)
                for (Index h = 0; h < c.right(); ++h) w(g, i, j, h) = c(g, i, j, h);
    return out;
}

SweepConfig make_sweep_config(const std::string& algorithm, double eps, Index rmax,
                              const std::optional<std::vector<std::pair<Index, double>>>& schedule,
                              Index max_sweeps, double tol_lambda, Index enrich_rank,
                              const std::string& enrich_mode, double weight_a,
                              bool random_kick, double max_seconds,
                              std::uint64_t seed,
                              std::optional<double> reference_lambda) {
    SweepConfig cfg;
    const auto alg = algorithm_from_name(algorithm);
    if (!alg) throw std::invalid_argument("unknown algorithm '" + algorithm + "'");
    cfg.algorithm = *alg;
    if (schedule) {
        std::vector<ScheduleEntry> entries;
        for (const auto& [rank, weight] : *schedule)
            entries.push_back(ScheduleEntry{rank, weight});
        cfg.strategy = RankStrategy::fixed(entries);
    } else {
        cfg.strategy = RankStrategy::adaptive(eps, rmax > 0 ? rmax : kNoRankCap);
    }
    cfg.strategy.validate();
    if (enrich_mode == "global_z")
        cfg.enrich_mode = EnrichMode::GlobalZ;
    else if (enrich_mode == "local_projection")
        cfg.enrich_mode = EnrichMode::LocalProjection;
    else
        throw std::invalid_argument("unknown enrich_mode '" + enrich_mode + "'");
    cfg.max_sweeps = max_sweeps;
    cfg.tol_lambda = tol_lambda;
    cfg.enrich_rank = enrich_rank;
    cfg.weight_a = weight_a;
    cfg.random_kick = random_kick;
    cfg.max_seconds = max_seconds;
    cfg.seed = seed;
    cfg.reference_lambda = reference_lambda;
    return cfg;
}

py::dict result_dict(SweepResult res) {
    py::list records;
    for (const auto& r : res.records) {
        py::dict row;
        row["sweep"] = r.sweep;
        row["site"] = r.site;
        row["direction"] = std::string(1, r.direction);
        row["lambda"] = r.lambda;
        row["lambda_error"] = r.lambda_error;
        row["resid_estimate"] = r.resid_estimate;
        row["max_rank"] = r.max_rank;
        row["wall_seconds"] = r.wall_seconds;
        records.append(row);
    }
    py::dict out;
    out["x"] = py::cast(std::move(res.x));
    out["lambda"] = res.lambda;
    out["converged"] = res.converged;
    out["sweeps"] = res.sweeps;
    out["wall_seconds"] = res.wall_seconds;
    out["monotone_defect"] = res.monotone_defect;
    out["stop_reason"] = res.stop_reason;
    out["records"] = records;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ttground, m) {
    m.doc() = "tensor-train containers, arithmetic and ground-state sweeps";

    py::class_<TTVector>(m, "TTVector")
        .def_property_readonly("site_count", &TTVector::site_count)
        .def_property_readonly("mode_sizes", &TTVector::mode_sizes)
        .def_property_readonly("ranks", &TTVector::ranks)
        .def_property_readonly("max_rank", &TTVector::max_rank)
        .def_property_readonly("ortho_center",
                               [](const TTVector& x) -> std::optional<Index> {
                                   return x.ortho_center();
                               })
        .def("core", [](const TTVector& x, Index k) { return core_array(x.core(k)); },
             py::arg("k"), "core k as an array of shape (left, mode, right)")
        .def("__repr__", [](const TTVector& x) {
            return "<TTVector d=" + std::to_string(x.site_count()) +
                   " max_rank=" + std::to_string(x.max_rank()) + ">";
        });

    py::class_<TTMatrix>(m, "TTMatrix")
        .def_property_readonly("site_count", &TTMatrix::site_count)
        .def_property_readonly("row_modes", &TTMatrix::row_modes)
        .def_property_readonly("col_modes", &TTMatrix::col_modes)
        .def_property_readonly("op_ranks", &TTMatrix::op_ranks)
        .def_property_readonly("symmetric", &TTMatrix::symmetric)
        .def("core", [](const TTMatrix& A, Index k) { return core_array(A.core(k)); },
             py::arg("k"), "core k as an array of shape (left, row, col, right)")
        .def("__repr__", [](const TTMatrix& A) {
            return "<TTMatrix d=" + std::to_string(A.site_count()) +
                   " max_rank=" + std::to_string(A.max_op_rank()) + ">";
        });

    m.def(
        "tt_random",
        [](const std::vector<Index>& modes, Index rank, std::uint64_t seed) {
            return tt_random(modes, rank, seed);
        },
        py::arg("mode_sizes"), py::arg("rank"), py::arg("seed"),
        "random right-orthogonal unit-norm train");
    m.def(
        "tt_from_dense",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& values,
           const std::vector<Index>& modes, double eps, Index rmax) {
            return tt_from_dense(to_vector(values), modes, eps,
                                 rmax > 0 ? rmax : kNoRankCap);
        },
        py::arg("values"), py::arg("mode_sizes"), py::arg("eps") = 0.0,
        py::arg("rmax") = 0, "sequential-SVD compression of a dense tensor");
    m.def("tt_to_dense", [](const TTVector& x) { return from_vector(tt_to_dense(x)); },
          py::arg("x"));
    m.def(
        "tt_round",
        [](const TTVector& x, double eps, Index rmax) {
            return tt_round(x, eps, rmax > 0 ? rmax : kNoRankCap);
        },
        py::arg("x"), py::arg("eps"), py::arg("rmax") = 0);
    m.def("tt_add", &tt_add, py::arg("a"), py::arg("b"));
    m.def("tt_scale", &tt_scale, py::arg("x"), py::arg("alpha"));
    m.def("tt_dot", &tt_dot, py::arg("a"), py::arg("b"));
    m.def("tt_norm", &tt_norm, py::arg("x"));

    m.def("heisenberg_mpo", &heisenberg_mpo, py::arg("sites"), py::arg("periodic"),
          "spin-1 Heisenberg chain as an operator train");
    m.def(
        "diag_test_mpo",
        [](const std::vector<py::array_t<double, py::array::c_style |
                                                     py::array::forcecast>>& diags) {
            std::vector<Vector> d;
            d.reserve(diags.size());
            for (const auto& a : diags) d.push_back(to_vector(a));
            return diag_test_mpo(d);
        },
        py::arg("site_diagonals"));
    m.def("mpo_apply", &mpo_apply, py::arg("A"), py::arg("x"));
    m.def("mpo_to_dense",
          [](const TTMatrix& A) {
              const Matrix M = mpo_to_dense(A);
              py::array_t<double> out({M.rows(), M.cols()});
              auto w = out.mutable_unchecked<2>();
              for (Index i = 0; i < M.rows(); ++i)
                  for (Index j = 0; j < M.cols(); ++j) w(i, j) = M(i, j);
              return out;
          },
          py::arg("A"));
    m.def("rayleigh", &rayleigh, py::arg("A"), py::arg("x"),
          "(x, A x) / (x, x) via environment contractions");

    m.def(
        "exact_ground_state",
        [](const TTMatrix& A, const std::string& method) {
            const GroundState gs = exact_ground_state(
                A, method == "lanczos" ? OracleMethod::Lanczos : OracleMethod::Dense);
            return py::make_tuple(gs.lambda, from_vector(gs.vector));
        },
        py::arg("A"), py::arg("method") = "dense",
        "brute-force minimal eigenpair (dense or matrix-free lanczos)");

    m.def("save_tt", py::overload_cast<const TTVector&, const std::string&>(&save_tt),
          py::arg("x"), py::arg("path"));
    m.def("save_tt_matrix",
          py::overload_cast<const TTMatrix&, const std::string&>(&save_tt),
          py::arg("A"), py::arg("path"));
    m.def("load_tt_vector", &load_tt_vector, py::arg("path"));
    m.def("load_tt_matrix", &load_tt_matrix, py::arg("path"));

    const auto bind_solver = [&m](const char* name, const char* default_alg,
                                  const char* doc) {
        m.def(
            name,
            [default_alg](const TTMatrix& A, const TTVector& x0, double eps, Index rmax,
                          const std::optional<std::vector<std::pair<Index, double>>>& schedule,
                          Index max_sweeps, double tol_lambda, Index enrich_rank,
                          const std::string& enrich_mode, double weight_a,
                          bool random_kick, double max_seconds, std::uint64_t seed,
                          std::optional<double> reference_lambda) {
                const SweepConfig cfg = make_sweep_config(
                    default_alg, eps, rmax, schedule, max_sweeps, tol_lambda,
                    enrich_rank, enrich_mode, weight_a, random_kick, max_seconds,
                    seed, reference_lambda);
                return result_dict(run_sweeps(A, x0, cfg));
            },
            py::arg("A"), py::arg("x0"), py::arg("eps") = 1e-6, py::arg("rmax") = 0,
            py::arg("schedule") = py::none(), py::arg("max_sweeps") = 20,
            py::arg("tol_lambda") = 1e-8, py::arg("enrich_rank") = 4,
            py::arg("enrich_mode") = "global_z", py::arg("weight_a") = 1e-4,
            py::arg("random_kick") = false, py::arg("max_seconds") = 0.0,
            py::arg("seed") = 1, py::arg("reference_lambda") = py::none(), doc);
    };
    bind_solver("run_dmrg1", "dmrg1", "one-site alternating minimization");
    bind_solver("run_dmrg2", "dmrg2", "two-site alternating minimization");
    bind_solver("run_dmrg1c", "dmrg1c",
                "one-site minimization with corrected subspace averaging");
    bind_solver("run_amen", "amen",
                "one-site minimization with residual basis enrichment");

#ifdef TTGROUND_VERSION
    m.attr("__version__") = TTGROUND_VERSION;
#else
    m.attr("__version__") = "dev";
#endif
}
