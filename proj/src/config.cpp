#include "hsnewton/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hsnewton {

namespace {

std::string join(const std::vector<std::string>& parts) {
    std::ostringstream os;
    os << "config invalid:";
    for (const auto& p : parts) os << "\n  - " << p;
    return os.str();
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

namespace {

FilterFamily parse_filter(const nlohmann::json& j, std::vector<std::string>& errs) {
    FilterFamily filter = iterated_tikhonov(1);
    const std::string kind = j.value("kind", "tikhonov");
    if (kind == "tikhonov") {
        const int order = j.value("order", 1);
        if (order < 1) {
            errs.push_back("filter.order must be >= 1 (iterated Tikhonov order N)");
            return filter;
        }
        filter = iterated_tikhonov(order);
    } else if (kind == "exponential") {
        filter = exponential_filter();
    } else if (kind == "landweber") {
        filter = landweber_filter();
    } else if (kind == "lardy") {
        filter = lardy_filter();
    } else {
        errs.push_back("filter.kind must be one of tikhonov/exponential/landweber/lardy");
    }
    filter.contour_R = j.value("contour_R", filter.contour_R);
    filter.contour_phi0 = j.value("contour_phi0", filter.contour_phi0);
    return filter;
}

AlphaSchedule parse_schedule(const nlohmann::json& j, std::vector<std::string>& errs) {
    const std::string kind = j.value("kind", "constant");
    const int length = j.value("length", 60);
    try {
        if (kind == "constant")
            return make_constant_schedule(j.value("alpha", 1.0), length);
        if (kind == "geometric")
            return make_geometric_schedule(j.value("alpha0", 1.0), j.value("q", 0.5), length);
        if (kind == "reciprocal-integers")
            return make_reciprocal_schedule(j.value("k0", 1), j.value("step", 1), length);
        if (kind == "reciprocal-geometric")
            return make_reciprocal_geometric_schedule(j.value("k0", 1),
                                                      j.value("growth", 1.25), length);
        errs.push_back(
            "schedule.kind must be one of constant/geometric/reciprocal-integers/"
            "reciprocal-geometric");
    } catch (const std::exception& e) {
        errs.push_back(std::string("schedule: ") + e.what());
    }
    return make_constant_schedule(1.0, 1);
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& json_text,
                                   std::vector<std::string>* collect) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError({std::string("not valid JSON: ") + e.what()});
    }

    std::vector<std::string> errs;
    ExperimentConfig cfg;
    const nlohmann::json problem = j.value("problem", nlohmann::json::object());
    cfg.problem_name = problem.value("name", cfg.problem_name);
    cfg.dim = problem.value("K", cfg.dim);
    cfg.a = problem.value("a", cfg.a);
    cfg.gamma = problem.value("gamma", cfg.gamma);
    cfg.rho = problem.value("rho", cfg.rho);

    const nlohmann::json solver = j.value("solver", nlohmann::json::object());
    cfg.s = solver.value("s", cfg.s);
    cfg.tau = solver.value("tau", cfg.tau);
    cfg.filter = parse_filter(solver.value("filter", nlohmann::json::object()), errs);
    cfg.schedule = parse_schedule(solver.value("schedule", nlohmann::json::object()), errs);
    cfg.max_iter = solver.value("max_iter", cfg.max_iter);
    const std::string mode = solver.value("filter_mode", "spectral");
    if (mode == "spectral") {
        cfg.mode = FilterMode::Spectral;
    } else if (mode == "iterative") {
        cfg.mode = FilterMode::Iterative;
    } else {
        errs.push_back("solver.filter_mode must be 'spectral' or 'iterative'");
    }

    const nlohmann::json source = j.value("source", nlohmann::json::object());
    cfg.mu = source.value("mu", cfg.mu);
    cfg.omega_norm = source.value("omega_norm", cfg.omega_norm);
    if (source.contains("omega"))
        cfg.omega = source.at("omega").get<std::vector<double>>();
    cfg.rescale = source.value("rescale", cfg.rescale);

    const nlohmann::json experiment = j.value("experiment", nlohmann::json::object());
    if (experiment.contains("deltas"))
        cfg.deltas = experiment.at("deltas").get<std::vector<double>>();
    if (experiment.contains("seeds"))
        cfg.seeds = experiment.at("seeds").get<std::vector<std::uint64_t>>();
    if (experiment.contains("r_list"))
        cfg.r_list = experiment.at("r_list").get<std::vector<double>>();
    cfg.solve_delta = experiment.value("solve_delta", cfg.solve_delta);
    cfg.solve_seed = experiment.value("solve_seed", cfg.solve_seed);

    const nlohmann::json output = j.value("output", nlohmann::json::object());
    cfg.out_dir = output.value("dir", cfg.out_dir);
    cfg.format = output.value("format", cfg.format);
    cfg.plot_script = output.value("plot_script", cfg.plot_script);

    if (!errs.empty()) {
        if (!collect) throw ConfigError(errs);
        collect->insert(collect->end(), errs.begin(), errs.end());
    }
    return cfg;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
    std::vector<std::string> errs;
    if (cfg.problem_name != "diagonal-linear" && cfg.problem_name != "quadratic-rank1")
        errs.push_back("problem.name must be 'diagonal-linear' or 'quadratic-rank1'");
    if (cfg.dim < 1) errs.push_back("problem.K must be >= 1");
    if (cfg.a < 0.0) errs.push_back("problem.a must be >= 0 (degree of ill-posedness)");
    if (!(cfg.tau > 1.0)) errs.push_back("tau must exceed 1 (discrepancy principle)");
    if (cfg.s < -cfg.a) errs.push_back("s must be >= -a (scale exponent range)");

    // both catalog problems have b = a and beta = 1
    const double b = cfg.a, beta = 1.0;
    const double lo = (cfg.a - b) / beta, hi = b + 2.0 * cfg.s;
    if (!(cfg.mu > lo && cfg.mu <= hi + 1e-12)) {
        std::ostringstream os;
        os << "mu must lie in ((a-b)/beta, b+2s] = (" << lo << ", " << hi
           << "] (source smoothness window)";
        errs.push_back(os.str());
    }
    if (!(cfg.omega_norm > 0.0)) errs.push_back("source.omega_norm must be > 0");
    if (!cfg.omega.empty() && static_cast<int>(cfg.omega.size()) != cfg.dim)
        errs.push_back("source.omega length must equal problem.K");

    if (cfg.problem_name == "quadratic-rank1") {
        const double rho = cfg.rho > 0.0 ? cfg.rho : 5.0;
        if (!(cfg.gamma > 0.0)) errs.push_back("problem.gamma must be > 0");
        // theta = 1 for the default spectrum l_k = k
        if (cfg.gamma > 0.0 && !(cfg.gamma * std::pow(1.0, cfg.a) * rho < 1.0))
            errs.push_back(
                "gamma * theta^a * rho must stay below 1 (frame property on the ball)");
    }

    for (int n = 0; n < cfg.schedule.length(); ++n) {
        if (!alpha_admissible(cfg.filter, cfg.schedule.alpha(n))) {
            errs.push_back("schedule alpha values must be reciprocals of positive "
                           "integers for " + cfg.filter.name());
            break;
        }
    }
    if (cfg.max_iter < 0) errs.push_back("solver.max_iter must be >= 0 (0 = schedule length)");

    if (!cfg.deltas.empty()) {
        for (double d : cfg.deltas)
            if (!(d > 0.0)) {
                errs.push_back("experiment.deltas must be positive");
                break;
            }
    }
    for (double r : cfg.r_list)
        if (r < -cfg.a - 1e-12 || r > cfg.mu + 1e-12) {
            errs.push_back("experiment.r_list values must lie in [-a, mu]");
            break;
        }
    if (!(cfg.solve_delta >= 0.0)) errs.push_back("experiment.solve_delta must be >= 0");
    if (cfg.format != "json" && cfg.format != "csv")
        errs.push_back("output.format must be 'json' or 'csv'");
    return errs;
}

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError({"cannot open config file: " + path});
    std::stringstream buffer;
    buffer << in.rdbuf();
    std::vector<std::string> errs;
    ExperimentConfig cfg = parse_config_json(buffer.str(), &errs);
    const std::vector<std::string> more = validate_config(cfg);
    errs.insert(errs.end(), more.begin(), more.end());
    if (!errs.empty()) throw ConfigError(errs);
    return cfg;
}

ExperimentSetup build_experiment(const ExperimentConfig& cfg) {
    ExperimentSetup setup;
    if (cfg.problem_name == "diagonal-linear") {
        const double rho = cfg.rho > 0.0 ? cfg.rho : 1e6;
        setup.problem = make_diagonal_linear(cfg.dim, cfg.a, Vector(), rho);
    } else {
        const double rho = cfg.rho > 0.0 ? cfg.rho : 5.0;
        setup.problem =
            make_quadratic_perturbed(cfg.dim, cfg.a, cfg.gamma, Vector(), Vector(), rho);
    }
    if (cfg.rescale) {
        RescaleResult scaled =
            normalize_problem_scale(setup.problem, cfg.s, cfg.schedule.alpha(0));
        setup.problem = scaled.problem;
        setup.scale_factor = scaled.factor;
    }

    Vector omega;
    if (cfg.omega.empty()) {
        omega = spread_omega(cfg.dim, cfg.omega_norm);
    } else {
        omega = Eigen::Map<const Vector>(cfg.omega.data(),
                                         static_cast<Eigen::Index>(cfg.omega.size()));
    }
    setup.source = construct_source(*setup.problem, cfg.s, cfg.mu, omega);

    setup.solver.s = cfg.s;
    setup.solver.tau = cfg.tau;
    setup.solver.filter = cfg.filter;
    setup.solver.schedule = cfg.schedule;
    setup.solver.max_iter = cfg.max_iter;
    setup.solver.mode = cfg.mode;
    setup.solver.x0 = setup.source.x0;
    setup.solver.mu = cfg.mu;
    return setup;
}

}  // namespace hsnewton
