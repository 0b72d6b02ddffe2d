// Command-line front end: `ttground solve|bench|oracle`.  All experiment
// settings live in a flat "section.key = value" config file; every key is
// also a --section.key flag, with flags winning over the file.

#include "ttground/harness.hpp"

#include "CLI11.hpp"

#include <Eigen/Core>

#include <cstdlib>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace {

void apply_thread_cap() {
    if (const char* env = std::getenv("TTGROUND_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

// Registers one string option per config key so CLI11 handles the flag
// syntax; values are funneled through RunConfig::set for typed parsing.
void add_config_flags(CLI::App* cmd, std::map<std::string, std::string>& overrides) {
    for (const std::string& key : ttground::RunConfig::keys()) {
        cmd->add_option_function<std::string>(
            "--" + key,
            [&overrides, key](const std::string& value) { overrides[key] = value; },
            "config key " + key);
    }
}

int build_config(const std::string& config_path,
                 const std::map<std::string, std::string>& overrides,
                 ttground::RunConfig& cfg) {
    try {
        std::map<std::string, std::string> file_entries;
        if (!config_path.empty())
            file_entries = ttground::parse_config_file(config_path);
        cfg = ttground::make_run_config(file_entries, overrides);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "ttground: " << e.what() << "\n";
        return 1;
    }
}

std::vector<std::string> split_names(const std::vector<std::string>& args) {
    std::vector<std::string> names;
    for (const std::string& arg : args) {
        std::stringstream ss(arg);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) names.push_back(item);
    }
    return names;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"tensor-train minimal eigenvalue solvers"};
    app.require_subcommand(1);

    std::string config_path;
    std::map<std::string, std::string> overrides;

    CLI::App* solve = app.add_subcommand("solve", "run one solver, log convergence");
    solve->add_option("--config", config_path, "flat key = value config file");
    add_config_flags(solve, overrides);

    CLI::App* bench = app.add_subcommand(
        "bench", "run several solvers on one model, emit plottable CSVs");
    bench->add_option("--config", config_path, "flat key = value config file");
    std::vector<std::string> algorithm_args;
    bench->add_option("--algorithms", algorithm_args,
                      "comma separated list from dmrg1,dmrg2,dmrg1c,amen");
    add_config_flags(bench, overrides);

    CLI::App* oracle = app.add_subcommand(
        "oracle", "brute-force reference eigenvalue for small chains");
    ttground::Index oracle_d = 4;
    bool oracle_periodic = false;
    std::string oracle_method = "dense";
    std::string fixture_path;
    oracle->add_option("--d", oracle_d, "number of sites")->required();
    oracle->add_flag("--periodic", oracle_periodic, "periodic closure");
    oracle->add_option("--method", oracle_method, "dense or lanczos");
    oracle->add_option("--out", fixture_path,
                       "fixture file to write (default: no file)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "ttground: " << e.what() << "\n";
        return 1;
    }

    if (solve->parsed()) {
        ttground::RunConfig cfg;
        if (const int rc = build_config(config_path, overrides, cfg)) return rc;
        return ttground::cmd_solve(cfg, std::cout, std::cerr);
    }
    if (bench->parsed()) {
        ttground::RunConfig cfg;
        if (const int rc = build_config(config_path, overrides, cfg)) return rc;
        return ttground::cmd_bench(cfg, split_names(algorithm_args), std::cout,
                                   std::cerr);
    }
    return ttground::cmd_oracle(oracle_d, oracle_periodic, oracle_method,
                                fixture_path, std::cout, std::cerr);
}
