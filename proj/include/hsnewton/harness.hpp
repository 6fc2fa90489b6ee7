// Experiment driver: convergence-rate fits against the order-optimal
// exponent (mu-r)/(a+mu), schedule-sum probes, batch filter certification,
// and CSV/JSON export.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hsnewton/certification.hpp"
#include "hsnewton/solver.hpp"

namespace hsnewton {

struct RateRow {
    double delta = 0.0;
    std::uint64_t seed = 0;
    int n_delta = -1;
    double error_r = 0.0;
};

struct RateReport {
    std::string problem_id;
    std::string filter_id;
    double s = 0.0, mu = 0.0, a = 0.0;
    double r = 0.0;  // error norm index
    std::vector<RateRow> rows;  // sorted by (delta, seed)
    double fitted_slope = 0.0;  // log error vs log delta, per-delta log-means
    double theory_slope = 0.0;  // (mu - r) / (a + mu)
    double slope_ci = 0.0;      // 1.96 * stderr of the fitted slope
    bool all_discrepancy = false;  // false flags the report invalid
};

struct RateExperimentSpec {
    std::vector<double> deltas;        // >= 4 points over >= 2 decades
    std::vector<std::uint64_t> seeds;  // >= 1
    std::vector<double> r_list;        // each in [-a, mu]
};

// {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5}, seeds 1..5, r in {0, -a}.
RateExperimentSpec default_rate_spec(double a);

// Runs the solver for every (delta, seed) cell — cells execute in parallel,
// results merge in (delta, seed) order — and fits the log-log slope per r.
// config.x0 is ignored; the start iterate is source.x0.
std::vector<RateReport> rate_experiment(const ProblemPtr& problem,
                                        const SolverConfig& config,
                                        const SourceConstruction& source,
                                        const RateExperimentSpec& spec);

struct ScheduleSumRow {
    int n = 0;
    double sum = 0.0;         // S(n) = sum_j (1/alpha_j)(s_n-s_{j-1})^{-p} s_j^{-q}
    double normalized = 0.0;  // S(n) / bound shape
};

// Direct evaluation of the weighted schedule sums against the bound shape
// s_n^{1-p-q} (corr_q(alpha_0 s_n) + corr_p(alpha_n s_n))/2, where corr_e(t)
// is 1 for e < 1, log(1+2t) for e = 1 and (2t)^{e-1} for e > 1. For p = q = 0
// the sum telescopes to s_n and the normalized column is exactly 1; it stays
// flat in n whenever the bound is sharp.
std::vector<ScheduleSumRow> schedule_sum_probe(const AlphaSchedule& sched,
                                               double p, double q,
                                               const std::vector<int>& n_list);

struct CertificationCell {
    std::string family;
    std::string schedule_kind;
    bool admissible = false;
    double max_v1 = 0.0;
    double b2_estimate = 0.0;
    double b0_estimate = 0.0;
    double b1_integral = 0.0;  // max over the schedule's alpha values
    double quadrature_refinement_delta = 0.0;
    bool pass = false;
    std::string note;  // reason when inadmissible
};

struct CertificationReport {
    std::vector<CertificationCell> cells;
    bool overall_pass = false;  // every admissible cell passes
};

// Full family x schedule matrix: residual-product maxima plus contour
// integrals over the schedule's distinct alpha values. A cell passes when
// max_v1 <= 1 + 1e-10 and the quadrature is refinement-stable (< 1%).
CertificationReport certify_filters(const std::vector<FilterFamily>& families,
                                    const std::vector<AlphaSchedule>& schedules,
                                    const CheckConfig& cfg);

// CSV with columns exactly {delta, seed, n_delta, error_r, r}.
void export_report_csv(const RateReport& report, const std::filesystem::path& path);

// JSON mirror of the report struct; parse_rate_report inverts it.
void export_report_json(const RateReport& report, const std::filesystem::path& path);
RateReport parse_rate_report(const std::filesystem::path& path);

std::string certification_to_json(const CertificationReport& report);

// Gnuplot command file plotting error_r against delta from the CSV
// (referenced by relative path), one call per rate report.
void export_plot_script(const std::vector<std::string>& csv_names,
                        const std::filesystem::path& path);

}  // namespace hsnewton
