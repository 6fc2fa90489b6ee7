#include "hsnewton/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace hsnewton {

void SolverConfig::validate(const ForwardProblem& problem) const {
    if (!(tau > 1.0))
        throw std::invalid_argument("SolverConfig: tau must exceed 1 (discrepancy principle)");
    if (s < -problem.a())
        throw std::invalid_argument("SolverConfig: s must be >= -a");
    if (schedule.length() < 1)
        throw std::invalid_argument("SolverConfig: schedule is empty");
    if (max_iter < 0)
        throw std::invalid_argument("SolverConfig: max_iter must be >= 0");
    if (x0.size() != problem.dim())
        throw std::invalid_argument("SolverConfig: x0 dimension mismatch");
    for (int n = 0; n < schedule.length(); ++n)
        if (!alpha_admissible(filter, schedule.alpha(n)))
            throw std::invalid_argument("SolverConfig: schedule alpha_" + std::to_string(n) +
                                        " not admissible for " + filter.name());
}

std::string to_string(StopReason reason) {
    switch (reason) {
        case StopReason::Discrepancy: return "discrepancy";
        case StopReason::MaxIter: return "max_iter";
        case StopReason::LeftBall: return "left_ball";
        case StopReason::Stagnation: return "stagnation";
    }
    return "unknown";
}

namespace {

Matrix assemble_scaled_derivative(const ForwardProblem& problem, const Vector& x,
                                  double s) {
    const int K = problem.dim();
    Matrix a(K, K);
    Vector unit = Vector::Zero(K);
    for (int j = 0; j < K; ++j) {
        unit[j] = std::pow(problem.scale().eigenvalues[j], -s);
        a.col(j) = problem.deriv_apply(x, unit);
        unit[j] = 0.0;
    }
    return a;
}

// h = g_alpha(A^T A) A^T residual in the scaled coordinates
Vector filter_update(const ForwardProblem& problem, const SolverConfig& cfg, int n,
                     const Vector& x, const Vector& residual,
                     const NormalOperatorEig* cached) {
    const double alpha = cfg.schedule.alpha(n);
    if (cfg.mode == FilterMode::Spectral) {
        if (cached) return apply_filter_spectral(cfg.filter, alpha, *cached, residual);
        const Matrix a = assemble_scaled_derivative(problem, x, cfg.s);
        return filter_step_spectral(cfg.filter, alpha, a, residual);
    }
    const ScaleOperator& scale = problem.scale();
    const ApplyFn fwd = [&](const Vector& v) {
        return problem.deriv_apply(x, apply_power(scale, -cfg.s, v));
    };
    const ApplyFn adj = [&](const Vector& w) {
        return apply_power(scale, -cfg.s, problem.adjoint_apply(x, w));
    };
    return filter_step_iterative(cfg.filter, alpha, fwd, adj, residual,
                                 cfg.step_options);
}

}  // namespace

Vector newton_step(const ForwardProblem& problem, const SolverConfig& config, int n,
                   const Vector& x_n, const Vector& y_delta) {
    config.validate(problem);
    if (n < 0 || n >= config.schedule.length())
        throw std::invalid_argument("newton_step: schedule index out of bounds");
    if (x_n.size() != problem.dim() || y_delta.size() != problem.dim())
        throw std::invalid_argument("newton_step: dimension mismatch");
    const Vector residual = problem.eval(x_n) - y_delta;
    const Vector h = filter_update(problem, config, n, x_n, residual, nullptr);
    return x_n - apply_power(problem.scale(), -config.s, h);
}

SolverResult run(const ForwardProblem& problem, const SolverConfig& config,
                 const NoisyData& data) {
    config.validate(problem);
    if (data.y_delta.size() != problem.dim())
        throw std::invalid_argument("run: data dimension mismatch");

    const int limit = config.max_iter > 0
                          ? std::min(config.max_iter, config.schedule.length())
                          : config.schedule.length();
    const double tau_delta = config.tau * data.delta;
    const ScaleOperator& scale = problem.scale();

    // For a constant derivative the scaled operator never changes; decompose once.
    NormalOperatorEig cache;
    const NormalOperatorEig* cached = nullptr;
    if (config.mode == FilterMode::Spectral && problem.constant_derivative()) {
        cache = decompose_normal(
            assemble_scaled_derivative(problem, config.x0, config.s));
        cached = &cache;
    }

    SolverResult result;
    Vector x = config.x0;
    while (true) {
        const int n = static_cast<int>(result.history.size());
        const Vector residual_vec = problem.eval(x) - data.y_delta;
        const double residual = residual_vec.norm();
        const Vector err = x - problem.x_truth();

        IterationRecord rec;
        rec.n = n;
        rec.alpha_n = n < config.schedule.length() ? config.schedule.alpha(n) : 0.0;
        rec.s_n = config.schedule.s(std::min(n, config.schedule.length() - 1));
        rec.residual = residual;
        rec.err_mu = norm_r(scale, config.mu, err);
        rec.err_0 = err.norm();
        rec.err_minus_a = norm_r(scale, -problem.a(), err);
        result.history.push_back(rec);

        if (residual <= tau_delta) {
            result.n_delta = n;
            result.stop_reason = StopReason::Discrepancy;
            break;
        }
        if (err.norm() > problem.ball_radius()) {
            result.stop_reason = StopReason::LeftBall;
            break;
        }
        if (n >= 10) {
            const double past = result.history[static_cast<size_t>(n - 10)].residual;
            if (std::abs(residual - past) < 1e-14 * std::max(past, 1e-300)) {
                result.stop_reason = StopReason::Stagnation;
                break;
            }
        }
        if (n >= limit) {
            result.stop_reason = StopReason::MaxIter;
            break;
        }

        const Vector h = filter_update(problem, config, n, x, residual_vec, cached);
        const Vector step = apply_power(scale, -config.s, h);
        x -= step;
        result.history.back().step_norm = step.norm();
    }
    result.x_final = x;
    return result;
}

int predicted_stop_index(const AlphaSchedule& schedule, double a, double s, double mu,
                         double omega_norm, double tau, double c0, double delta) {
    if (!(a + s > 0.0)) throw std::invalid_argument("predicted_stop_index: a + s must be > 0");
    if (!(tau > 1.0)) throw std::invalid_argument("predicted_stop_index: tau must exceed 1");
    if (!(omega_norm > 0.0))
        throw std::invalid_argument("predicted_stop_index: omega_norm must be > 0");
    if (!(delta > 0.0))
        throw std::invalid_argument("predicted_stop_index: delta must be > 0 (no finite index)");
    const double threshold = (tau - 1.0) * delta / (2.0 * c0 * omega_norm);
    const double expo = (a + mu) / (2.0 * (a + s));
    for (int n = 0; n < schedule.length(); ++n)
        if (std::pow(schedule.s(n), -expo) <= threshold) return n;
    throw std::runtime_error(
        "predicted_stop_index: schedule prefix exhausted before the threshold; "
        "extend the schedule");
}

}  // namespace hsnewton
