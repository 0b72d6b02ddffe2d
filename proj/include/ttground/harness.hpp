#pragma once

#include "ttground/sweeps.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ttground {

/// Flat experiment configuration.  Every field maps to one "section.key"
/// entry, settable from a config file or a --section.key=value flag; the two
/// sources share a single typed parser so diagnostics always name the key.
struct RunConfig {
    Index d = 4;
    bool periodic = true;
    std::string algorithm = "amen";
    double eps = 1e-6;
    Index rmax = 0;  // 0 = uncapped
    Index enrich_rank = 4;
    std::string enrich_mode = "global_z";
    double weight_a = 1e-4;
    Index max_sweeps = 20;
    double tol_lambda = 1e-8;
    std::string schedule;  // "rank:weight,rank:weight,..."; empty = adaptive
    double max_seconds = 0.0;
    Index start_rank = 2;
    std::uint64_t seed = 1;
    std::optional<double> reference_lambda;
    std::string csv_path;

    /// Known keys in declaration order, for flag registration and help.
    static const std::vector<std::string>& keys();

    /// Sets one key from its string form; throws std::invalid_argument
    /// naming the key on unknown keys or unparseable values.
    void set(const std::string& key, const std::string& value);

    /// Translates into solver terms; throws std::invalid_argument on
    /// inconsistent settings (unknown algorithm/mode, bad schedule).
    SweepConfig sweep_config() const;
};

/// Parses a flat "section.key = value" config file ('#' comments, blank
/// lines ignored).  Throws std::invalid_argument naming the offending line.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// File entries first, then command-line overrides, on top of defaults.
RunConfig make_run_config(const std::map<std::string, std::string>& file_entries,
                          const std::map<std::string, std::string>& overrides);

/// Writes one convergence trace as CSV.  A non-empty `algorithm` prepends a
/// key column (the bench merge format).  Appends when `append` is set so the
/// merged file can be built incrementally.
void write_convergence_csv(const std::string& path,
                           const std::vector<ConvergenceRecord>& records,
                           const std::string& algorithm = "", bool append = false);

/// Brute-force reference for the configured model if it is small enough,
/// std::nullopt otherwise.
std::optional<double> oracle_reference(Index d, bool periodic);

/// Derives the per-algorithm CSV path used by cmd_bench ("runs.csv" ->
/// "runs_amen.csv").
std::string per_algorithm_csv_path(const std::string& merged_path,
                                   const std::string& algorithm);

// Subcommand drivers.  Exit codes: 0 success/converged, 2 stopped without
// reaching tol_lambda, 1 configuration or I/O error.
int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_bench(const RunConfig& cfg, const std::vector<std::string>& algorithms,
              std::ostream& out, std::ostream& err);
int cmd_oracle(Index d, bool periodic, const std::string& method,
               const std::string& fixture_path, std::ostream& out,
               std::ostream& err);

/// Reads "lambda = <value>" from a fixture file written by cmd_oracle.
std::optional<double> read_fixture_lambda(const std::string& path);

}  // namespace ttground
