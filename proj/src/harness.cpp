#include "hsnewton/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace hsnewton {

RateExperimentSpec default_rate_spec(double a) {
    RateExperimentSpec spec;
    spec.deltas = {1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5};
    spec.seeds = {1, 2, 3, 4, 5};
    spec.r_list = {0.0, -a};
    return spec;
}

namespace {

struct CellOutcome {
    int n_delta = -1;
    bool discrepancy = false;
    std::vector<double> errors;  // one per r in spec.r_list
};

void validate_spec(const RateExperimentSpec& spec, double a, double mu) {
    if (spec.deltas.size() < 4)
        throw std::invalid_argument("rate_experiment: need >= 4 delta points");
    const auto [lo, hi] = std::minmax_element(spec.deltas.begin(), spec.deltas.end());
    if (!(*lo > 0.0) || *hi / *lo < 100.0 * (1.0 - 1e-12))
        throw std::invalid_argument("rate_experiment: deltas must span >= 2 decades");
    if (spec.seeds.empty()) throw std::invalid_argument("rate_experiment: need >= 1 seed");
    for (double r : spec.r_list)
        if (r < -a - 1e-12 || r > mu + 1e-12)
            throw std::invalid_argument("rate_experiment: r values must lie in [-a, mu]");
}

}  // namespace

std::vector<RateReport> rate_experiment(const ProblemPtr& problem,
                                        const SolverConfig& config,
                                        const SourceConstruction& source,
                                        const RateExperimentSpec& spec) {
    validate_spec(spec, problem->a(), source.source.mu);
    SolverConfig run_config = config;
    run_config.x0 = source.x0;
    run_config.mu = source.source.mu;
    run_config.validate(*problem);

    struct Cell {
        double delta;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (double d : spec.deltas)
        for (std::uint64_t s : spec.seeds) cells.push_back({d, s});

    std::vector<CellOutcome> outcomes(cells.size());
    const auto work = [&](size_t i) {
        const NoisyData data = make_noisy(*problem, cells[i].delta, cells[i].seed);
        const SolverResult res = run(*problem, run_config, data);
        CellOutcome out;
        out.discrepancy = res.stop_reason == StopReason::Discrepancy;
        out.n_delta = res.n_delta;
        const Vector err = res.x_final - problem->x_truth();
        for (double r : spec.r_list)
            out.errors.push_back(norm_r(problem->scale(), r, err));
        outcomes[i] = std::move(out);
    };

    // Independent cells, deterministic slots; strided threads over the list.
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const size_t workers = std::min<size_t>(hw, cells.size());
    std::vector<std::future<void>> tasks;
    for (size_t w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w]() {
            for (size_t i = w; i < cells.size(); i += workers) work(i);
        }));
    }
    for (auto& t : tasks) t.get();

    std::vector<size_t> order(cells.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
        if (cells[lhs].delta != cells[rhs].delta) return cells[lhs].delta < cells[rhs].delta;
        return cells[lhs].seed < cells[rhs].seed;
    });

    std::vector<RateReport> reports;
    for (size_t ri = 0; ri < spec.r_list.size(); ++ri) {
        RateReport rep;
        rep.problem_id = problem->name();
        rep.filter_id = run_config.filter.name();
        rep.s = run_config.s;
        rep.mu = source.source.mu;
        rep.a = problem->a();
        rep.r = spec.r_list[ri];
        rep.theory_slope = (rep.mu - rep.r) / (rep.a + rep.mu);
        rep.all_discrepancy = true;

        std::map<double, std::vector<double>> log_errors_by_delta;
        for (size_t idx : order) {
            const CellOutcome& out = outcomes[idx];
            RateRow row;
            row.delta = cells[idx].delta;
            row.seed = cells[idx].seed;
            row.n_delta = out.n_delta;
            row.error_r = out.errors[ri];
            rep.rows.push_back(row);
            rep.all_discrepancy = rep.all_discrepancy && out.discrepancy;
            log_errors_by_delta[row.delta].push_back(
                std::log(std::max(row.error_r, 1e-300)));
        }

        std::vector<double> xs, ys;
        for (const auto& [delta, logs] : log_errors_by_delta) {
            double mean = 0.0;
            for (double v : logs) mean += v;
            xs.push_back(std::log(delta));
            ys.push_back(mean / static_cast<double>(logs.size()));
        }
        const LineFit fit = fit_line(xs, ys);
        rep.fitted_slope = fit.slope;
        rep.slope_ci = 1.96 * fit.slope_stderr;
        reports.push_back(std::move(rep));
    }
    return reports;
}

namespace {

double bound_correction(double expo, double t) {
    if (expo < 1.0) return 1.0;
    if (expo == 1.0) return std::log1p(2.0 * t);
    return std::pow(2.0 * t, expo - 1.0);
}

}  // namespace

std::vector<ScheduleSumRow> schedule_sum_probe(const AlphaSchedule& sched, double p,
                                               double q, const std::vector<int>& n_list) {
    if (p < 0.0 || q < 0.0)
        throw std::invalid_argument("schedule_sum_probe: p and q must be >= 0");
    std::vector<ScheduleSumRow> rows;
    for (int n : n_list) {
        if (n < 0 || n >= sched.length())
            throw std::invalid_argument("schedule_sum_probe: n outside the stored prefix");
        const double sn = sched.s(n);
        double total = 0.0, comp = 0.0;
        for (int j = 0; j <= n; ++j) {
            const double term = (1.0 / sched.alpha(j)) *
                                std::pow(sn - sched.s(j - 1), -p) *
                                std::pow(sched.s(j), -q);
            const double y = term - comp;
            const double t = total + y;
            comp = (t - total) - y;
            total = t;
        }
        const double shape = std::pow(sn, 1.0 - p - q) * 0.5 *
                             (bound_correction(q, sched.alpha(0) * sn) +
                              bound_correction(p, sched.alpha(n) * sn));
        rows.push_back({n, total, total / shape});
    }
    return rows;
}

CertificationReport certify_filters(const std::vector<FilterFamily>& families,
                                    const std::vector<AlphaSchedule>& schedules,
                                    const CheckConfig& cfg) {
    CertificationReport report;
    report.overall_pass = true;
    for (const auto& family : families) {
        for (const auto& sched : schedules) {
            CertificationCell cell;
            cell.family = family.name();
            cell.schedule_kind = sched.kind;
            cell.admissible = true;
            for (int n = 0; n < sched.length() && cell.admissible; ++n)
                cell.admissible = alpha_admissible(family, sched.alpha(n));
            if (!cell.admissible) {
                cell.note = "schedule contains alpha values inadmissible for this family";
                report.cells.push_back(cell);
                continue;
            }
            try {
                const ResidualProductReport products =
                    check_residual_products(family, sched, cfg);
                cell.max_v1 = products.max_v1;
                cell.b2_estimate = products.b2_estimate;
                std::set<double> alpha_set(sched.alphas.begin(), sched.alphas.end());
                for (double alpha : alpha_set) {
                    const ContourReport contour = check_contour_integral(family, alpha, cfg);
                    cell.b1_integral = std::max(cell.b1_integral, contour.b1_integral);
                    cell.b0_estimate = std::max(cell.b0_estimate, contour.b0_estimate);
                    cell.quadrature_refinement_delta = std::max(
                        cell.quadrature_refinement_delta, contour.refinement_delta);
                }
                cell.pass = cell.max_v1 <= 1.0 + 1e-10 &&
                            cell.quadrature_refinement_delta < 0.01;
            } catch (const std::exception& e) {
                cell.admissible = false;
                cell.note = e.what();
            }
            if (cell.admissible) report.overall_pass = report.overall_pass && cell.pass;
            report.cells.push_back(cell);
        }
    }
    return report;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace

void export_report_csv(const RateReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_report_csv: cannot open " + path.string());
    out << "delta,seed,n_delta,error_r,r\n";
    for (const RateRow& row : report.rows)
        out << format_double(row.delta) << ',' << row.seed << ',' << row.n_delta << ','
            << format_double(row.error_r) << ',' << format_double(report.r) << '\n';
    if (!out) throw std::runtime_error("export_report_csv: write failed");
}

namespace {

nlohmann::json rate_report_to_json(const RateReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const RateRow& row : report.rows)
        rows.push_back({{"delta", row.delta},
                        {"seed", row.seed},
                        {"n_delta", row.n_delta},
                        {"error_r", row.error_r}});
    return {{"problem_id", report.problem_id},
            {"filter_id", report.filter_id},
            {"s", report.s},
            {"mu", report.mu},
            {"a", report.a},
            {"r", report.r},
            {"rows", rows},
            {"fitted_slope", report.fitted_slope},
            {"theory_slope", report.theory_slope},
            {"slope_ci", report.slope_ci},
            {"all_discrepancy", report.all_discrepancy}};
}

}  // namespace

void export_report_json(const RateReport& report, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_report_json: cannot open " + path.string());
    out << rate_report_to_json(report).dump(2) << '\n';
    if (!out) throw std::runtime_error("export_report_json: write failed");
}

RateReport parse_rate_report(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_rate_report: cannot open " + path.string());
    nlohmann::json j;
    in >> j;
    RateReport report;
    report.problem_id = j.at("problem_id").get<std::string>();
    report.filter_id = j.at("filter_id").get<std::string>();
    report.s = j.at("s").get<double>();
    report.mu = j.at("mu").get<double>();
    report.a = j.at("a").get<double>();
    report.r = j.at("r").get<double>();
    report.fitted_slope = j.at("fitted_slope").get<double>();
    report.theory_slope = j.at("theory_slope").get<double>();
    report.slope_ci = j.at("slope_ci").get<double>();
    report.all_discrepancy = j.at("all_discrepancy").get<bool>();
    for (const auto& row : j.at("rows")) {
        report.rows.push_back({row.at("delta").get<double>(),
                               row.at("seed").get<std::uint64_t>(),
                               row.at("n_delta").get<int>(),
                               row.at("error_r").get<double>()});
    }
    return report;
}

std::string certification_to_json(const CertificationReport& report) {
    nlohmann::json cells = nlohmann::json::array();
    for (const CertificationCell& cell : report.cells) {
        cells.push_back({{"family", cell.family},
                         {"schedule_kind", cell.schedule_kind},
                         {"admissible", cell.admissible},
                         {"max_V1", cell.max_v1},
                         {"b2_estimate", cell.b2_estimate},
                         {"b0_estimate", cell.b0_estimate},
                         {"b1_integral", cell.b1_integral},
                         {"quadrature_refinement_delta", cell.quadrature_refinement_delta},
                         {"pass", cell.pass},
                         {"note", cell.note}});
    }
    nlohmann::json j = {{"cells", cells}, {"overall_pass", report.overall_pass}};
    return j.dump(2);
}

void export_plot_script(const std::vector<std::string>& csv_names,
                        const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_plot_script: cannot open " + path.string());
    out << "# gnuplot script: error against noise level from the rate CSVs\n"
        << "set datafile separator ','\n"
        << "set logscale xy\n"
        << "set xlabel 'delta'\n"
        << "set ylabel 'error'\n"
        << "set key left top\n"
        << "plot \\\n";
    for (size_t i = 0; i < csv_names.size(); ++i) {
        out << "  '" << csv_names[i] << "' skip 1 using 1:4 with points title '"
            << csv_names[i] << "'";
        out << (i + 1 < csv_names.size() ? ", \\\n" : "\n");
    }
    if (!out) throw std::runtime_error("export_plot_script: write failed");
}

}  // namespace hsnewton
