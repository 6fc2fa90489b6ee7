#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "hsnewton/config.hpp"

namespace hsnewton {

namespace {

namespace fs = std::filesystem;

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
};

void apply_overrides(ExperimentConfig& cfg, const Overrides& ov) {
    if (ov.out_dir) {
        cfg.out_dir = *ov.out_dir;
    } else if (const char* env = std::getenv("HSNEWTON_OUT_DIR");
               env && cfg.out_dir == "out") {
        cfg.out_dir = env;
    }
    if (ov.format) cfg.format = *ov.format;
    if (ov.seed) {
        cfg.solve_seed = *ov.seed;
        const size_t count = cfg.seeds.empty() ? 5 : cfg.seeds.size();
        cfg.seeds.clear();
        for (size_t i = 0; i < count; ++i) cfg.seeds.push_back(*ov.seed + i);
    }
    const std::vector<std::string> errs = validate_config(cfg);
    if (!errs.empty()) throw ConfigError(errs);
}

nlohmann::json solver_result_to_json(const SolverResult& result) {
    nlohmann::json history = nlohmann::json::array();
    for (const IterationRecord& rec : result.history)
        history.push_back({{"n", rec.n},
                           {"alpha_n", rec.alpha_n},
                           {"s_n", rec.s_n},
                           {"residual", rec.residual},
                           {"err_mu", rec.err_mu},
                           {"err_0", rec.err_0},
                           {"err_minus_a", rec.err_minus_a},
                           {"step_norm", rec.step_norm}});
    std::vector<double> x(result.x_final.data(),
                          result.x_final.data() + result.x_final.size());
    return {{"x_final", x},
            {"n_delta", result.n_delta},
            {"stop_reason", to_string(result.stop_reason)},
            {"history", history}};
}

void write_history_csv(const SolverResult& result, const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << "n,alpha_n,s_n,residual,err_mu,err_0,err_minus_a\n";
    out.precision(17);
    for (const IterationRecord& rec : result.history)
        out << rec.n << ',' << rec.alpha_n << ',' << rec.s_n << ',' << rec.residual << ','
            << rec.err_mu << ',' << rec.err_0 << ',' << rec.err_minus_a << '\n';
}

int cmd_problems() {
    std::cout << "diagonal-linear\nquadratic-rank1\n";
    return 0;
}

int cmd_solve(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig cfg = parse_config(config_path);
    apply_overrides(cfg, ov);
    const ExperimentSetup setup = build_experiment(cfg);
    const NoisyData data = make_noisy(*setup.problem, cfg.solve_delta, cfg.solve_seed);
    const SolverResult result = run(*setup.problem, setup.solver, data);

    fs::create_directories(cfg.out_dir);
    const fs::path json_path = fs::path(cfg.out_dir) / "solve_result.json";
    std::ofstream out(json_path);
    out << solver_result_to_json(result).dump(2) << '\n';
    write_history_csv(result, fs::path(cfg.out_dir) / "solve_history.csv");

    std::cout << "solve: " << setup.problem->name() << " filter=" << cfg.filter.name()
              << " delta=" << cfg.solve_delta << " stop=" << to_string(result.stop_reason)
              << " n_delta=" << result.n_delta
              << " residual=" << result.history.back().residual << '\n'
              << "wrote " << json_path.string() << '\n';
    return 0;
}

int cmd_rates(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig cfg = parse_config(config_path);
    apply_overrides(cfg, ov);
    const ExperimentSetup setup = build_experiment(cfg);

    RateExperimentSpec spec = default_rate_spec(cfg.a);
    if (!cfg.deltas.empty()) spec.deltas = cfg.deltas;
    if (!cfg.seeds.empty()) spec.seeds = cfg.seeds;
    if (!cfg.r_list.empty()) spec.r_list = cfg.r_list;

    const std::vector<RateReport> reports =
        rate_experiment(setup.problem, setup.solver, setup.source, spec);

    fs::create_directories(cfg.out_dir);
    std::vector<std::string> csv_names;
    bool ok = true;
    for (const RateReport& rep : reports) {
        std::ostringstream stem;
        stem << "rates_" << rep.filter_id << "_r" << rep.r;
        const fs::path csv = fs::path(cfg.out_dir) / (stem.str() + ".csv");
        export_report_csv(rep, csv);
        csv_names.push_back(csv.filename().string());
        if (cfg.format == "json")
            export_report_json(rep, fs::path(cfg.out_dir) / (stem.str() + ".json"));
        ok = ok && rep.all_discrepancy;
        std::cout << "rates: " << rep.problem_id << " filter=" << rep.filter_id
                  << " r=" << rep.r << " slope=" << rep.fitted_slope << " (theory "
                  << rep.theory_slope << ", ci " << rep.slope_ci << ")"
                  << (rep.fitted_slope > rep.theory_slope + 0.1 ? "  [superconvergent]" : "")
                  << (rep.all_discrepancy ? "" : "  [INVALID: run without discrepancy stop]")
                  << '\n';
    }
    if (cfg.plot_script)
        export_plot_script(csv_names, fs::path(cfg.out_dir) / "plot_rates.gp");
    if (!ok) {
        std::cerr << "rates: at least one run ended without a discrepancy stop\n";
        return 2;
    }
    return 0;
}

int cmd_check_filters(const std::string& config_path, const Overrides& ov) {
    ExperimentConfig cfg = parse_config(config_path);
    apply_overrides(cfg, ov);

    const std::vector<FilterFamily> families = {iterated_tikhonov(1), exponential_filter(),
                                                landweber_filter(), lardy_filter()};
    const int len = std::min(cfg.schedule.length(), 51);
    const std::vector<AlphaSchedule> schedules = {
        make_constant_schedule(1.0, len), make_geometric_schedule(1.0, 0.5, len),
        make_reciprocal_schedule(1, 1, len)};
    const CertificationReport report =
        certify_filters(families, schedules, default_check_config());

    fs::create_directories(cfg.out_dir);
    const fs::path path = fs::path(cfg.out_dir) / "filter_certification.json";
    std::ofstream out(path);
    out << certification_to_json(report) << '\n';
    for (const CertificationCell& cell : report.cells)
        std::cout << "check-filters: " << cell.family << " x " << cell.schedule_kind << ": "
                  << (cell.admissible ? (cell.pass ? "pass" : "FAIL") : "inadmissible")
                  << " (max_V1=" << cell.max_v1 << ", b2=" << cell.b2_estimate << ")\n";
    std::cout << "overall: " << (report.overall_pass ? "pass" : "FAIL") << ", wrote "
              << path.string() << '\n';
    return report.overall_pass ? 0 : 2;
}

}  // namespace

int run_command(const std::vector<std::string>& args) {
    CLI::App app{"Regularized Newton iterations in Hilbert scales: solves, "
                 "rate experiments, and filter certification"};
    app.require_subcommand(1);

    Overrides ov;
    std::string config_path;
    const auto add_common = [&](CLI::App* sub, bool needs_config) {
        if (needs_config)
            sub->add_option("config", config_path, "JSON config file")->required();
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { ov.seed = v; }, "base seed override");
        sub->add_option_function<std::string>(
            "--out", [&](const std::string& v) { ov.out_dir = v; }, "output directory");
        sub->add_option_function<std::string>(
            "--format", [&](const std::string& v) { ov.format = v; }, "json or csv");
    };

    CLI::App* solve = app.add_subcommand("solve", "single run with history");
    add_common(solve, true);
    CLI::App* rates = app.add_subcommand("rates", "convergence-rate experiment");
    add_common(rates, true);
    CLI::App* check = app.add_subcommand("check-filters", "filter certification matrix");
    add_common(check, true);
    app.add_subcommand("problems", "list the problem catalog");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::cerr << app.help();
        if (e.get_exit_code() != 0) std::cerr << "error: " << e.what() << '\n';
        return e.get_exit_code() == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand("problems")) return cmd_problems();
        if (app.got_subcommand(solve)) return cmd_solve(config_path, ov);
        if (app.got_subcommand(rates)) return cmd_rates(config_path, ov);
        if (app.got_subcommand(check)) return cmd_check_filters(config_path, ov);
    } catch (const ConfigError& e) {
        std::cerr << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

}  // namespace hsnewton
