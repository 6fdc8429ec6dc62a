#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rtasim/model.hpp"
#include "rtasim/stats.hpp"

namespace rtasim {

/// Bad command line; the CLI exits with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; what() holds the help text.
class HelpRequested : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caps the worker pool when set to a positive integer.
inline constexpr const char* kMaxWorkersEnv = "RTASIM_MAX_WORKERS";

/**
 * A batch of experiments: the cartesian product of algorithms, f values,
 * station counts and arrival rates, each point replicated with
 * independent seeds.
 */
struct SweepSpec {
    SimConfig base;
    std::vector<Algorithm> algorithms;
    std::vector<int> f_values;
    std::vector<int> stations;
    std::vector<double> lambdas;
    int replications = 10;
    std::optional<std::string> output_path;  // stdout when absent
    unsigned jobs = 0;                         // 0 = hardware concurrency
};

/// "a:b:c" (inclusive, step c), "a:b" (step 1), or "x,y,z" lists mixing both.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

/// Throws UsageError (or HelpRequested) on bad input; every resulting
/// sweep point is validated.
SweepSpec parse_args(std::span<const std::string> args);
SweepSpec parse_args(int argc, const char* const* argv);

struct SweepPoint {
    Algorithm algorithm = Algorithm::Cra;
    int f_ra = 0;
    int n_stations = 0;
    double lambda = 0.0;
};

/// Points in output order: (algorithm, f, n_stations, lambda).
std::vector<SweepPoint> sweep_points(const SweepSpec& spec);

/// Configuration of one replication. The seed depends only on the base
/// seed, the point coordinates and the replication index.
SimConfig replication_config(const SweepSpec& spec, const SweepPoint& point, int replication);

struct SweepRow {
    SweepPoint point;
    SimConfig config;  // replication 0's config, for the descriptive columns
    int replications = 0;
    RunMetrics metrics;  // merged over replications
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> failures;  // one diagnostic per failed point
};

/// Runs every replication on a worker pool; progress lines go to `log`.
SweepResult compute_sweep(const SweepSpec& spec, std::ostream& log);

std::string csv_header();
std::string csv_row(const SweepRow& row, std::uint64_t seed_base);
void write_csv(const SweepResult& result, std::uint64_t seed_base, std::ostream& out);

/// compute_sweep + write_csv. With an output path the CSV goes to a
/// temporary sibling that is renamed into place, otherwise to `out`.
/// Returns the process exit status (0 ok, 1 runtime failure).
int run_sweep(const SweepSpec& spec, std::ostream& out, std::ostream& log);

/// Full CLI entry point: parse, run, map errors to exit statuses.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rtasim
