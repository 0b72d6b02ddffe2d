#include "ttground/harness.hpp"

#include "ttground/models.hpp"
#include "ttground/oracle.hpp"
#include "ttground/tt_ops.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ttground {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
    throw std::invalid_argument("invalid value for " + key + ": '" + value + "'");
}

double parse_f64(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) bad_value(key, value);
        return v;
    } catch (const std::invalid_argument&) {
        bad_value(key, value);
    } catch (const std::out_of_range&) {
        bad_value(key, value);
    }
}

Index parse_index(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const long long v = std::stoll(value, &used);
        if (used != value.size()) bad_value(key, value);
        return static_cast<Index>(v);
    } catch (const std::invalid_argument&) {
        bad_value(key, value);
    } catch (const std::out_of_range&) {
        bad_value(key, value);
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) bad_value(key, value);
        return static_cast<std::uint64_t>(v);
    } catch (const std::invalid_argument&) {
        bad_value(key, value);
    } catch (const std::out_of_range&) {
        bad_value(key, value);
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on")
        return true;
    if (value == "false" || value == "0" || value == "no" || value == "off")
        return false;
    bad_value(key, value);
}

std::vector<ScheduleEntry> parse_schedule(const std::string& text) {
    std::vector<ScheduleEntry> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const auto colon = item.find(':');
        ScheduleEntry e;
        e.max_rank = parse_index("solver.schedule", item.substr(0, colon));
        e.weight_a = colon == std::string::npos
                         ? 0.0
                         : parse_f64("solver.schedule", item.substr(colon + 1));
        entries.push_back(e);
    }
    if (entries.empty()) bad_value("solver.schedule", text);
    return entries;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct PreparedRun {
    TTMatrix A;
    TTVector x0;
    SweepConfig sweep;
};

PreparedRun prepare(const RunConfig& cfg) {
    PreparedRun run{heisenberg_mpo(cfg.d, cfg.periodic), TTVector(), cfg.sweep_config()};
    run.x0 = tt_random(run.A.row_modes(), std::max<Index>(1, cfg.start_rank), cfg.seed);
    return run;
}

void print_outcome(std::ostream& out, const SweepResult& res) {
    out << "lambda = " << fmt17(res.lambda) << "\n";
    out << "max_rank = " << res.x.max_rank() << "\n";
    out << "seconds = " << res.wall_seconds << "\n";
    out << "stop = " << res.stop_reason << " after " << res.sweeps << " sweeps\n";
}

}  // namespace

const std::vector<std::string>& RunConfig::keys() {
    static const std::vector<std::string> k = {
        "model.d",           "model.periodic",     "solver.algorithm",
        "solver.eps",        "solver.rmax",        "solver.enrich_rank",
        "solver.enrich_mode", "solver.weight_a",   "solver.max_sweeps",
        "solver.tol_lambda", "solver.schedule",    "solver.max_seconds",
        "solver.start_rank", "seed",               "reference_lambda",
        "output.csv"};
    return k;
}

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "model.d")
        d = parse_index(key, value);
    else if (key == "model.periodic")
        periodic = parse_bool(key, value);
    else if (key == "solver.algorithm")
        algorithm = value;
    else if (key == "solver.eps")
        eps = parse_f64(key, value);
    else if (key == "solver.rmax")
        rmax = parse_index(key, value);
    else if (key == "solver.enrich_rank")
        enrich_rank = parse_index(key, value);
    else if (key == "solver.enrich_mode")
        enrich_mode = value;
    else if (key == "solver.weight_a")
        weight_a = parse_f64(key, value);
    else if (key == "solver.max_sweeps")
        max_sweeps = parse_index(key, value);
    else if (key == "solver.tol_lambda")
        tol_lambda = parse_f64(key, value);
    else if (key == "solver.schedule")
        schedule = value;
    else if (key == "solver.max_seconds")
        max_seconds = parse_f64(key, value);
    else if (key == "solver.start_rank")
        start_rank = parse_index(key, value);
    else if (key == "seed")
        seed = parse_u64(key, value);
    else if (key == "reference_lambda")
        reference_lambda = parse_f64(key, value);
    else if (key == "output.csv")
        csv_path = value;
    else
        throw std::invalid_argument("unknown config key '" + key + "'");
}

SweepConfig RunConfig::sweep_config() const {
    SweepConfig s;
    const auto alg = algorithm_from_name(algorithm);
    if (!alg)
        throw std::invalid_argument("invalid value for solver.algorithm: '" +
                                    algorithm + "'");
    s.algorithm = *alg;
    if (schedule.empty())
        s.strategy = RankStrategy::adaptive(eps, rmax > 0 ? rmax : kNoRankCap);
    else
        s.strategy = RankStrategy::fixed(parse_schedule(schedule));
    s.strategy.validate();
    if (enrich_mode == "global_z")
        s.enrich_mode = EnrichMode::GlobalZ;
    else if (enrich_mode == "local_projection")
        s.enrich_mode = EnrichMode::LocalProjection;
    else
        throw std::invalid_argument("invalid value for solver.enrich_mode: '" +
                                    enrich_mode + "'");
    s.enrich_rank = enrich_rank;
    s.weight_a = weight_a;
    s.max_sweeps = max_sweeps;
    s.tol_lambda = tol_lambda;
    s.max_seconds = max_seconds;
    s.seed = seed;
    s.reference_lambda = reference_lambda;
    if (s.max_sweeps < 1)
        throw std::invalid_argument("invalid value for solver.max_sweeps: '" +
                                    std::to_string(max_sweeps) + "'");
    return s;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " has an empty key");
        entries[key] = trim(line.substr(eq + 1));
    }
    return entries;
}

RunConfig make_run_config(const std::map<std::string, std::string>& file_entries,
                          const std::map<std::string, std::string>& overrides) {
    RunConfig cfg;
    for (const auto& [key, value] : file_entries) cfg.set(key, value);
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    return cfg;
}

void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergenceRecord>& records,
                           const std::string& algorithm, bool append) {
    std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open CSV for writing: " + path);
    if (!append) {
        out << "# ttground convergence trace\n";
        out << "# wall_seconds is cumulative wall-clock time (monotonic source), "
               "not CPU time\n";
        out << "# one half-sweep = one iteration: direction R/L marks the "
               "first/second half of each sweep; T rows are whole-train "
               "truncations (site -1)\n";
        if (!algorithm.empty()) out << "algorithm,";
        out << "sweep,site,direction,lambda,lambda_error,resid_estimate,"
               "max_rank,wall_seconds\n";
    }
    char wall[32];
    for (const auto& r : records) {
        if (!algorithm.empty()) out << algorithm << ',';
        out << r.sweep << ',' << r.site << ',' << r.direction << ','
            << fmt17(r.lambda) << ',';
        if (std::isfinite(r.lambda_error)) out << fmt17(r.lambda_error);
        out << ',' << fmt17(r.resid_estimate) << ',' << r.max_rank << ',';
        std::snprintf(wall, sizeof wall, "%.6f", r.wall_seconds);
        out << wall << '\n';
    }
    if (!out) throw std::runtime_error("CSV write failed: " + path);
}

std::optional<double> oracle_reference(Index d, bool periodic) {
    double size = 1.0;
    for (Index k = 0; k < d; ++k) size *= 3.0;
    if (size > 531441.0) return std::nullopt;
    const TTMatrix A = heisenberg_mpo(d, periodic);
    const OracleMethod method = size <= 6561.0 ? OracleMethod::Dense
                                               : OracleMethod::Lanczos;
    return exact_ground_state(A, method).lambda;
}

std::string per_algorithm_csv_path(const std::string& merged_path,
                                   const std::string& algorithm) {
    const auto slash = merged_path.find_last_of("/\\");
    const auto dot = merged_path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return merged_path + "_" + algorithm;
    return merged_path.substr(0, dot) + "_" + algorithm + merged_path.substr(dot);
}

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const PreparedRun run = prepare(cfg);
        const SweepResult res = run_sweeps(run.A, run.x0, run.sweep);
        if (!cfg.csv_path.empty())
            write_convergence_csv(cfg.csv_path, res.records);
        print_outcome(out, res);
        return res.converged ? 0 : 2;
    } catch (const std::exception& e) {
        err << "ttground: " << e.what() << "\n";
        return 1;
    }
}

int cmd_bench(const RunConfig& cfg, const std::vector<std::string>& algorithms,
              std::ostream& out, std::ostream& err) {
    if (algorithms.empty()) {
        err << "ttground: bench needs a non-empty algorithm list\n";
        return 1;
    }
    RunConfig base = cfg;
    if (base.csv_path.empty()) base.csv_path = "bench.csv";
    try {
        if (!base.reference_lambda)
            base.reference_lambda = oracle_reference(base.d, base.periodic);
    } catch (const std::exception& e) {
        err << "ttground: reference computation failed: " << e.what() << "\n";
        return 1;
    }

    int worst = 0;
    bool merged_started = false;
    for (const std::string& name : algorithms) {
        RunConfig rc = base;
        rc.algorithm = name;
        try {
            const PreparedRun run = prepare(rc);
            const SweepResult res = run_sweeps(run.A, run.x0, run.sweep);
            write_convergence_csv(per_algorithm_csv_path(base.csv_path, name),
                                  res.records);
            write_convergence_csv(base.csv_path, res.records, name,
                                  /*append=*/merged_started);
            merged_started = true;
            out << "[" << name << "]\n";
            print_outcome(out, res);
            worst = std::max(worst, res.converged ? 0 : 2);
        } catch (const std::exception& e) {
            err << "ttground: " << name << ": " << e.what() << "\n";
            worst = std::max(worst, 1);
        }
    }
    return worst;
}

int cmd_oracle(Index d, bool periodic, const std::string& method,
               const std::string& fixture_path, std::ostream& out,
               std::ostream& err) {
    try {
        OracleMethod m;
        if (method == "dense")
            m = OracleMethod::Dense;
        else if (method == "lanczos")
            m = OracleMethod::Lanczos;
        else
            throw std::invalid_argument("invalid value for method: '" + method +
                                        "'");
        const TTMatrix A = heisenberg_mpo(d, periodic);
        const GroundState gs = exact_ground_state(A, m);
        out << fmt17(gs.lambda) << "\n";
        if (!fixture_path.empty()) {
            std::ofstream fx(fixture_path);
            if (!fx)
                throw std::runtime_error("cannot open fixture file: " +
                                         fixture_path);
            fx << "# spin-1 Heisenberg chain, d=" << d << ", "
               << (periodic ? "periodic" : "open") << ", minimal eigenvalue\n";
            fx << "# generated by: ttground oracle --d " << d
               << (periodic ? " --periodic" : "") << " --method " << method
               << "\n";
            fx << "lambda = " << fmt17(gs.lambda) << "\n";
            if (!fx) throw std::runtime_error("fixture write failed: " + fixture_path);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "ttground: " << e.what() << "\n";
        return 1;
    }
}

std::optional<double> read_fixture_lambda(const std::string& path) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.rfind("lambda", 0) != 0) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        try {
            return parse_f64("lambda", trim(line.substr(eq + 1)));
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace ttground
