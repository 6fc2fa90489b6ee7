// The outer regularized Newton iteration in scale coordinates,
//   x_{n+1} = x_n - L^{-s} g_{alpha_n}(A_n^T A_n) A_n^T (F(x_n) - y_delta),
//   A_n = F'(x_n) L^{-s},
// terminated by the discrepancy principle ||F(x_n) - y_delta|| <= tau*delta,
// with iterate history and safety monitors (ball exit, residual stagnation).

#pragma once

#include <string>
#include <vector>

#include "hsnewton/filters.hpp"
#include "hsnewton/problems.hpp"
#include "hsnewton/schedule.hpp"

namespace hsnewton {

enum class FilterMode { Spectral, Iterative };

struct SolverConfig {
    double s = 0.0;    // scale exponent, >= -a
    double tau = 2.0;  // discrepancy constant, > 1
    FilterFamily filter;
    AlphaSchedule schedule;
    int max_iter = 0;  // 0: schedule length
    FilterMode mode = FilterMode::Spectral;
    Vector x0;
    double mu = 0.0;  // source smoothness index, for error-norm history
    IterativeStepOptions step_options;

    // Throws std::invalid_argument on tau <= 1, s < -a, or empty schedule.
    void validate(const ForwardProblem& problem) const;
};

enum class StopReason { Discrepancy, MaxIter, LeftBall, Stagnation };

std::string to_string(StopReason reason);

struct IterationRecord {
    int n = 0;
    double alpha_n = 0.0;
    double s_n = 0.0;
    double residual = 0.0;  // ||F(x_n) - y_delta||, before the step at n
    double err_mu = 0.0;    // ||x_n - x_truth||_mu
    double err_0 = 0.0;
    double err_minus_a = 0.0;
    double step_norm = 0.0;  // ||x_{n+1} - x_n||, 0 on the final record
};

struct SolverResult {
    Vector x_final;
    int n_delta = -1;  // stopping index when stop_reason == Discrepancy
    StopReason stop_reason = StopReason::MaxIter;
    std::vector<IterationRecord> history;
};

// One step of the iteration at schedule index n. Convenience entry that
// assembles A_n and decomposes it; run() caches the decomposition when the
// derivative is constant.
Vector newton_step(const ForwardProblem& problem, const SolverConfig& config,
                   int n, const Vector& x_n, const Vector& y_delta);

// Full iteration with discrepancy stopping and history. Error norms are
// recorded against the problem's x_truth. delta = 0 is allowed; the
// discrepancy then fires only at exact residual zero.
SolverResult run(const ForwardProblem& problem, const SolverConfig& config,
                 const NoisyData& data);

// Smallest n with s_n^{-(a+mu)/(2(a+s))} <= (tau-1)*delta/(2*c0*omega_norm).
// Throws std::invalid_argument for delta <= 0 and std::runtime_error when the
// stored schedule prefix is exhausted before the threshold.
int predicted_stop_index(const AlphaSchedule& schedule, double a, double s,
                         double mu, double omega_norm, double tau, double c0,
                         double delta);

}  // namespace hsnewton
