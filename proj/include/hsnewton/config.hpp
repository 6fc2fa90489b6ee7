// JSON experiment configuration: problem + solver + source + experiment
// blocks with cross-field validation, and the command-line entry points.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsnewton/harness.hpp"

namespace hsnewton {

// Carries every violation found in a config, not just the first.
class ConfigError : public std::runtime_error {
  public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const { return violations_; }

  private:
    std::vector<std::string> violations_;
};

struct ExperimentConfig {
    // problem
    std::string problem_name = "diagonal-linear";
    int dim = 256;
    double a = 1.0;
    double gamma = 0.1;  // quadratic-rank1 only
    double rho = 0.0;    // 0: per-problem default

    // solver
    double s = 0.0;
    double tau = 2.0;
    FilterFamily filter;             // default iterated_tikhonov(1)
    AlphaSchedule schedule;          // default constant alpha = 1
    int max_iter = 0;                // 0: schedule length
    FilterMode mode = FilterMode::Spectral;

    // source
    double mu = 1.0;
    double omega_norm = 1.0;         // spread profile scaled to this norm
    std::vector<double> omega;       // explicit coefficients override profile
    bool rescale = true;             // apply the scaling normalization first

    // experiment
    std::vector<double> deltas;
    std::vector<std::uint64_t> seeds;
    std::vector<double> r_list;
    double solve_delta = 1e-3;       // single-run noise level for `solve`
    std::uint64_t solve_seed = 1;

    // output
    std::string out_dir = "out";
    std::string format = "json";     // "json" or "csv" for report emission
    bool plot_script = false;
};

// Parses and fully validates a config file; throws ConfigError listing all
// violations (parse-stage and constraint-stage together), each naming the
// condition it enforces.
ExperimentConfig parse_config(const std::string& path);

// Parse stage only. With a collector, field-level problems are appended and
// defaults substituted; without one, they throw.
ExperimentConfig parse_config_json(const std::string& json_text,
                                   std::vector<std::string>* collect = nullptr);

// Collects every constraint violation (empty means valid).
std::vector<std::string> validate_config(const ExperimentConfig& cfg);

// Builds the problem/solver/source triple a validated config describes.
struct ExperimentSetup {
    ProblemPtr problem;
    double scale_factor = 1.0;
    SolverConfig solver;
    SourceConstruction source;
};
ExperimentSetup build_experiment(const ExperimentConfig& cfg);

// Subcommands: solve <config>, rates <config>, check-filters <config>,
// problems. Exit 0 on success, 1 on usage/validation errors, 2 on runtime
// failures (e.g. a rate run without a discrepancy stop). Flag overrides:
// --seed, --out, --format; HSNEWTON_OUT_DIR sets the default output dir.
int run_command(const std::vector<std::string>& args);

}  // namespace hsnewton
