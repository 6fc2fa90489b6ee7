// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and runtime budgets are pinned in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hsnewton/config.hpp"

using namespace hsnewton;

namespace {

int failures = 0;

struct Criterion {
    std::string label;
    double budget_seconds;
    std::function<std::pair<bool, std::string>()> body;
};

void run_criterion(int index, const Criterion& c) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string detail;
    try {
        auto [passed, text] = c.body();
        ok = passed;
        detail = text;
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > c.budget_seconds) {
        ok = false;
        detail += " [over budget " + std::to_string(c.budget_seconds) + " s]";
    }
    std::printf("[%s] %d. %s: %s (%.2f s)\n", ok ? "PASS" : "FAIL", index,
                c.label.c_str(), detail.c_str(), elapsed);
    std::fflush(stdout);
    if (!ok) ++failures;
}

const std::vector<FilterFamily> families = {iterated_tikhonov(1), exponential_filter(),
                                            landweber_filter(), lardy_filter()};

char buffer[256];

std::string fmt(const char* format, double a, double b = 0.0) {
    std::snprintf(buffer, sizeof(buffer), format, a, b);
    return buffer;
}

// ---- criterion bodies -------------------------------------------------------

std::pair<bool, std::string> filter_identity() {
    double worst = 0.0;
    for (const auto& family : families) {
        for (double alpha : {1.0, 0.5, 0.25, 0.1, 0.05}) {
            for (int i = 0; i <= 1000; ++i) {
                const double lam = i / 1000.0;
                const double g = g_scalar(family, alpha, lam);
                const double r = r_scalar(family, alpha, lam);
                worst = std::max(worst, std::abs(r + lam * g - 1.0));
            }
        }
    }
    return {worst <= 1e-12, fmt("max |r + lambda g - 1| = %.3g (tol 1e-12)", worst)};
}

std::pair<bool, std::string> oracle_equivalence() {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> gauss;
    const std::vector<double> alphas = {1.0, 0.5, 0.25, 0.2, 0.1};
    double worst = 0.0;
    for (int instance = 0; instance < 50; ++instance) {
        const int dim = 2 + static_cast<int>(rng() % 49);
        Matrix raw(dim, dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) raw(i, j) = gauss(rng);
        const Matrix a = raw / (raw.norm() + 1e-12);  // spectrum of A^T A in [0,1]
        Vector rhs(dim);
        for (int i = 0; i < dim; ++i) rhs[i] = gauss(rng);
        const auto apply_a = [&](const Vector& v) { return (a * v).eval(); };
        const auto apply_at = [&](const Vector& v) { return (a.transpose() * v).eval(); };

        const double alpha = alphas[instance % alphas.size()];
        const FilterFamily& family = families[instance % families.size()];
        const Vector spec = filter_step_spectral(family, alpha, a, rhs);
        const Vector iter = filter_step_iterative(family, alpha, apply_a, apply_at, rhs);
        const double tol = family.kind == FilterKind::Exponential ? 1e-6 : 1e-8;
        const double rel = (spec - iter).norm() / std::max(spec.norm(), 1e-12);
        worst = std::max(worst, rel / tol);
        if (rel > tol)
            return {false, fmt("instance relative gap %.3g over tolerance", rel)};
    }
    return {true, fmt("max relative gap at %.3g of tolerance", worst)};
}

std::pair<bool, std::string> residual_product_certification() {
    const std::vector<AlphaSchedule> schedules = {
        make_constant_schedule(1.0, 51), make_geometric_schedule(1.0, 0.5, 51),
        make_reciprocal_schedule(1, 1, 51)};
    const CheckConfig cfg = default_check_config();
    double worst_v1 = 0.0;
    for (const auto& family : families) {
        for (const auto& sched : schedules) {
            const auto rep = check_residual_products(family, sched, cfg);
            worst_v1 = std::max(worst_v1, rep.max_v1);
            if (rep.max_v1 > 1.0 + 1e-10)
                return {false, fmt("max V1 = %.12g for ", rep.max_v1) + family.name() +
                                   " x " + sched.kind};
        }
    }
    double b2 = 0.0;
    for (const auto& sched : schedules)
        b2 = std::max(b2,
                      check_residual_products(iterated_tikhonov(2), sched, cfg).b2_estimate);
    const bool ok = b2 <= 3.0;
    return {ok, fmt("max V1 = %.12g, order-2 b2 = %.6g (cap 3)", worst_v1, b2)};
}

std::pair<bool, std::string> contour_certification() {
    const CheckConfig cfg = default_check_config();
    const auto tik = check_contour_integral(iterated_tikhonov(1), 0.5, cfg);
    if (tik.b1_integral != 0.0)
        return {false, fmt("plain Tikhonov integral %.3g nonzero", tik.b1_integral)};

    double worst_spread = 0.0, worst_delta = 0.0;
    for (const auto& family : {exponential_filter(), landweber_filter(), lardy_filter()}) {
        // an identically-zero phi (Lardy at alpha = 1 reduces g to the plain
        // resolvent) is the degenerate best case and cannot violate
        // boundedness; the spread is taken over the nonzero integrals
        double lo = 1e300, hi = 0.0;
        for (double alpha : {1.0, 0.1, 0.01, 0.001}) {
            const auto rep = check_contour_integral(family, alpha, cfg);
            if (rep.b1_integral > 1e-9) lo = std::min(lo, rep.b1_integral);
            hi = std::max(hi, rep.b1_integral);
            worst_delta = std::max(worst_delta, rep.refinement_delta);
        }
        const double spread = hi <= 1e-9 ? 1.0 : hi / lo;
        worst_spread = std::max(worst_spread, spread);
        if (spread >= 10.0)
            return {false, fmt("integral spread %.3g for ", spread) + family.name()};
    }
    const bool ok = worst_delta < 0.01;
    return {ok, fmt("integral spread %.3g (cap 10), refinement delta %.3g (cap 1%%)",
                    worst_spread, worst_delta)};
}

std::pair<bool, std::string> scalar_step() {
    const ProblemPtr p = make_diagonal_linear(1, 0.0);
    SolverConfig cfg;
    cfg.filter = iterated_tikhonov(1);
    cfg.schedule = make_constant_schedule(1.0, 2);
    cfg.x0 = Vector::Zero(1);
    Vector yd(1);
    yd << 1.0;
    const Vector x1 = newton_step(*p, cfg, 0, cfg.x0, yd);
    const double err = std::abs(x1[0] - 0.5);
    return {err <= 1e-15, fmt("|x1 - 0.5| = %.3g (tol 1e-15)", err)};
}

AlphaSchedule schedule_for(const FilterFamily& family) {
    // geometric-type growth keeps n_delta logarithmic in 1/delta;
    // Landweber/Lardy need exact integer reciprocals
    if (family.kind == FilterKind::Landweber || family.kind == FilterKind::Lardy)
        return make_reciprocal_geometric_schedule(1, 1.25, 110);
    return make_geometric_schedule(1.0, 0.8, 110);
}

std::pair<bool, std::string> rate_reproduction() {
    const int K = 256;
    const ProblemPtr p = make_diagonal_linear(K, 1.0);
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K));
    const RateExperimentSpec spec = default_rate_spec(1.0);

    std::string detail;
    bool ok = true;
    for (const auto& family : families) {
        SolverConfig cfg;
        cfg.filter = family;
        cfg.schedule = schedule_for(family);
        const auto reports = rate_experiment(p, cfg, src, spec);
        for (const auto& rep : reports) {
            if (!rep.all_discrepancy) return {false, family.name() + ": run without stop"};
            const double gap = std::abs(rep.fitted_slope - rep.theory_slope);
            ok = ok && gap <= 0.1;
            detail += family.name() + (rep.r == 0.0 ? " r0=" : " r-a=") +
                      fmt("%.3f", rep.fitted_slope);
            detail += " ";
        }
    }
    return {ok, detail + "(theory 0.5 / 1.0, tol 0.1)"};
}

std::pair<bool, std::string> nonlinear_problem() {
    const int K = 256;
    const double gamma = 0.1;  // gamma * theta^a * ||omega|| = 0.1
    const ProblemPtr raw = make_quadratic_perturbed(K, 1.0, gamma, Vector(), Vector(), 5.0);
    const auto scaled = normalize_problem_scale(raw, 0.0, 1.0);
    const auto src = construct_source(*scaled.problem, 0.0, 1.0, spread_omega(K));

    SolverConfig cfg;
    cfg.filter = iterated_tikhonov(1);
    cfg.schedule = make_geometric_schedule(1.0, 0.8, 110);
    const RateExperimentSpec spec = default_rate_spec(1.0);

    const auto reports = rate_experiment(scaled.problem, cfg, src, spec);
    const RateReport* r0 = nullptr;
    for (const auto& rep : reports)
        if (rep.r == 0.0) r0 = &rep;
    if (!r0->all_discrepancy)
        return {false, "a run ended without a discrepancy stop"};

    for (const RateRow& row : r0->rows) {
        const int predicted =
            predicted_stop_index(cfg.schedule, 1.0, 0.0, 1.0, src.source.omega_norm, 2.0,
                                 cfg.schedule.c0, row.delta);
        if (row.n_delta > predicted)
            return {false, fmt("n_delta %g exceeds prediction %g",
                               static_cast<double>(row.n_delta),
                               static_cast<double>(predicted))};
    }
    const double gap = std::abs(r0->fitted_slope - 0.5);
    return {gap <= 0.15,
            fmt("slope r=0: %.3f (theory 0.5, tol 0.15), all stops within prediction",
                r0->fitted_slope)};
}

std::pair<bool, std::string> schedule_sum_stability() {
    const std::vector<int> n_list = {1000, 1778, 3162, 5623, 10000};
    const std::vector<AlphaSchedule> schedules = {
        make_constant_schedule(1.0, 10001), make_geometric_schedule(1.0, 0.999, 10001)};
    double worst = 0.0;
    for (const auto& sched : schedules) {
        for (double p : {0.0, 0.5, 1.0, 1.5}) {
            for (double q : {0.0, 0.5, 1.0, 1.5}) {
                double lo = 1e300, hi = 0.0;
                for (const auto& row : schedule_sum_probe(sched, p, q, n_list)) {
                    lo = std::min(lo, row.normalized);
                    hi = std::max(hi, row.normalized);
                }
                worst = std::max(worst, hi / lo);
                if (hi / lo >= 2.0)
                    return {false, fmt("normalized ratio %.3f at p=%.1f", hi / lo, p) +
                                       fmt(" q=%.1f on ", q) + sched.kind};
            }
        }
    }
    return {true, fmt("max normalized variation %.3f (cap 2)", worst)};
}

std::pair<bool, std::string> scale_properties() {
    std::mt19937_64 rng(77);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> expo(-3.0, 3.0);
    const ScaleOperator op = make_scale_linear(40);
    double worst_slack = 0.0, worst_embed = 0.0;
    int tested = 0;
    while (tested < 1000) {
        Vector x(40);
        for (int i = 0; i < 40; ++i) x[i] = gauss(rng);
        double p = expo(rng), q = expo(rng), r = expo(rng);
        if (p > q) std::swap(p, q);
        if (q > r) std::swap(q, r);
        if (p > q) std::swap(p, q);
        if (q - p < 1e-6 || r - q < 1e-6) continue;
        ++tested;
        const double slack = interpolation_slack(op, x, p, q, r) / norm_r(op, q, x);
        worst_slack = std::min(worst_slack, slack);
        const double embed = norm_r(op, q, x) -
                             std::pow(op.theta, r - q) * norm_r(op, r, x);
        worst_embed = std::max(worst_embed, embed / norm_r(op, q, x));
        if (slack < -1e-10 || embed > 1e-12)
            return {false, fmt("slack %.3g, embedding excess %.3g", slack, embed)};
    }
    return {true, fmt("min relative slack %.3g (floor -1e-10), embedding holds",
                      worst_slack)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"filter identity on the lambda grid", 1.0, filter_identity},
        {"spectral vs inner-loop equivalence (50 instances)", 30.0, oracle_equivalence},
        {"residual-product certification (V1 <= 1, order-2 b2 <= 3)", 60.0,
         residual_product_certification},
        {"contour certification (spread < 10, refinement < 1%)", 60.0,
         contour_certification},
        {"hand-computed scalar step", 1.0, scalar_step},
        {"rate reproduction, diagonal linear (4 families)", 300.0, rate_reproduction},
        {"nonlinear problem: stops, prediction bound, slope", 600.0, nonlinear_problem},
        {"schedule-sum stability over n in [1e3, 1e4]", 30.0, schedule_sum_stability},
        {"scale embedding and interpolation (1000 instances)", 30.0, scale_properties},
    };
    for (size_t i = 0; i < criteria.size(); ++i)
        run_criterion(static_cast<int>(i) + 1, criteria[i]);
    if (failures > 0) {
        std::printf("acceptance: %d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
    return 0;
}
