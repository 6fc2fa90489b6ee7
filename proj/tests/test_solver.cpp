#include <doctest.h>

#include <cmath>
#include <vector>

#include "hsnewton/solver.hpp"

using namespace hsnewton;

namespace {

// Coefficientwise oracle for diagonal problems: the iteration decouples per
// mode, x_{n+1,k} = x_{n,k} - l_k^{-2s} sigma_k g(lambda_k) (sigma_k x_k - y_k)
// with lambda_k = (sigma_k l_k^{-s})^2.
struct DiagonalOracle {
    Vector sigma, lpow;  // singular values, l_k^{-2s}
    Vector lambda;
    FilterFamily family;

    DiagonalOracle(int K, double a, double s, FilterFamily fam) : family(fam) {
        sigma = Vector(K);
        lpow = Vector(K);
        lambda = Vector(K);
        for (int k = 0; k < K; ++k) {
            const double l = k + 1.0;
            sigma[k] = std::pow(l, -a);
            lpow[k] = std::pow(l, -2.0 * s);
            lambda[k] = sigma[k] * sigma[k] * lpow[k];
        }
    }

    Vector step(const Vector& x, const Vector& y_delta, double alpha) const {
        Vector next = x;
        for (int k = 0; k < x.size(); ++k)
            next[k] -= lpow[k] * sigma[k] * g_scalar(family, alpha, lambda[k]) *
                       (sigma[k] * x[k] - y_delta[k]);
        return next;
    }

    // independent run: first n with ||sigma x - y_delta|| <= tau delta
    std::pair<int, Vector> run(Vector x, const Vector& y_delta,
                               const AlphaSchedule& sched, double tau,
                               double delta) const {
        for (int n = 0; n < sched.length(); ++n) {
            if ((sigma.cwiseProduct(x) - y_delta).norm() <= tau * delta)
                return {n, x};
            x = step(x, y_delta, sched.alpha(n));
        }
        return {-1, x};
    }
};

SolverConfig basic_config(const FilterFamily& family, const AlphaSchedule& sched,
                          const Vector& x0, double s = 0.0, double mu = 1.0) {
    SolverConfig cfg;
    cfg.s = s;
    cfg.tau = 2.0;
    cfg.filter = family;
    cfg.schedule = sched;
    cfg.x0 = x0;
    cfg.mu = mu;
    return cfg;
}

}  // namespace

TEST_CASE("scalar step: hand value 0.5 exactly") {
    const ProblemPtr p = make_diagonal_linear(1, 0.0);  // sigma = 1
    Vector x0 = Vector::Zero(1);
    Vector yd(1);
    yd << 1.0;
    const SolverConfig cfg =
        basic_config(iterated_tikhonov(1), make_constant_schedule(1.0, 4), x0, 0.0, 0.0);
    const Vector x1 = newton_step(*p, cfg, 0, x0, yd);
    CHECK(std::abs(x1[0] - 0.5) <= 1e-15);
}

TEST_CASE("step at the truth with exact data is a fixed point") {
    const ProblemPtr p = make_diagonal_linear(6, 1.0);
    const SolverConfig cfg = basic_config(
        iterated_tikhonov(1), make_constant_schedule(1.0, 4), p->x_truth(), 0.0, 0.0);
    const Vector x1 = newton_step(*p, cfg, 0, p->x_truth(), p->y_exact());
    CHECK((x1 - p->x_truth()).norm() == 0.0);
}

TEST_CASE("five-mode Landweber step matches the coefficientwise oracle") {
    const double s = 0.25;
    const ProblemPtr p = make_diagonal_linear(5, 1.0);
    const DiagonalOracle oracle(5, 1.0, s, landweber_filter());
    Vector x(5), yd(5);
    x << 0.3, -0.2, 0.9, 0.0, -1.1;
    yd << 1.0, 0.2, -0.4, 0.05, 0.6;
    const SolverConfig cfg = basic_config(landweber_filter(),
                                          make_constant_schedule(0.5, 4), x, s, 0.0);
    const Vector stepped = newton_step(*p, cfg, 0, x, yd);
    const Vector expected = oracle.step(x, yd, 0.5);
    CHECK((stepped - expected).norm() <= 1e-12 * expected.norm());
}

TEST_CASE("run: starting at the truth fires the discrepancy at n = 0") {
    const ProblemPtr p = make_diagonal_linear(8, 1.0);
    NoisyData data = make_noisy(*p, 1e-3, 5);
    const SolverConfig cfg = basic_config(
        iterated_tikhonov(1), make_constant_schedule(1.0, 8), p->x_truth(), 0.0, 0.0);
    const SolverResult res = run(*p, cfg, data);
    CHECK(res.stop_reason == StopReason::Discrepancy);
    CHECK(res.n_delta == 0);
}

TEST_CASE("run: matches the per-mode closed-form run, n_delta nondecreasing in 1/delta") {
    const int K = 24;
    const ProblemPtr p = make_diagonal_linear(K, 1.0);
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K));
    const AlphaSchedule sched = make_constant_schedule(1.0, 4000);
    const DiagonalOracle oracle(K, 1.0, 0.0, landweber_filter());

    int previous = -1;
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const NoisyData data = make_noisy(*p, delta, 11);
        const SolverConfig cfg =
            basic_config(landweber_filter(), sched, src.x0, 0.0, 1.0);
        const SolverResult res = run(*p, cfg, data);
        REQUIRE(res.stop_reason == StopReason::Discrepancy);

        const auto [n_expected, x_expected] =
            oracle.run(src.x0, data.y_delta, sched, 2.0, delta);
        CHECK(res.n_delta == n_expected);
        CHECK((res.x_final - x_expected).norm() <= 1e-10 * (1.0 + x_expected.norm()));
        CHECK(res.n_delta >= previous);
        previous = res.n_delta;
    }
}

TEST_CASE("discrepancy contract read off the history") {
    const int K = 16;
    const ProblemPtr p = make_diagonal_linear(K, 1.0);
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K));
    const NoisyData data = make_noisy(*p, 1e-3, 3);
    const SolverConfig cfg = basic_config(iterated_tikhonov(1),
                                          make_geometric_schedule(1.0, 0.8, 60),
                                          src.x0, 0.0, 1.0);
    const SolverResult res = run(*p, cfg, data);
    REQUIRE(res.stop_reason == StopReason::Discrepancy);
    const double bar = cfg.tau * data.delta;
    for (const IterationRecord& rec : res.history) {
        if (rec.n < res.n_delta) CHECK(rec.residual > bar);
        if (rec.n == res.n_delta) CHECK(rec.residual <= bar);
    }
    CHECK(res.history.back().n == res.n_delta);
}

TEST_CASE("config validation: tau and dimensions") {
    const ProblemPtr p = make_diagonal_linear(4, 1.0);
    SolverConfig cfg = basic_config(iterated_tikhonov(1), make_constant_schedule(1.0, 4),
                                    Vector::Zero(4));
    cfg.tau = 1.0;
    CHECK_THROWS_AS(cfg.validate(*p), std::invalid_argument);
    cfg.tau = 2.0;
    cfg.s = -2.0;
    CHECK_THROWS_AS(cfg.validate(*p), std::invalid_argument);
    cfg.s = 0.0;
    cfg.x0 = Vector::Zero(3);
    CHECK_THROWS_AS(cfg.validate(*p), std::invalid_argument);
    cfg.x0 = Vector::Zero(4);
    cfg.filter = landweber_filter();
    cfg.schedule = make_constant_schedule(0.3, 4);  // inadmissible alpha
    CHECK_THROWS_AS(cfg.validate(*p), std::invalid_argument);
}

TEST_CASE("spectral and iterative modes produce the same iterates") {
    const int K = 10;
    const ProblemPtr p =
        normalize_problem_scale(make_quadratic_perturbed(K, 1.0, 0.1), 0.0, 0.5).problem;
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K, 0.5));
    const NoisyData data = make_noisy(*p, 1e-4, 21);
    for (const auto& family :
         {iterated_tikhonov(2), exponential_filter(), landweber_filter(), lardy_filter()}) {
        SolverConfig cfg =
            basic_config(family, make_constant_schedule(0.5, 10), src.x0, 0.0, 1.0);
        Vector xs = src.x0, xi = src.x0;
        for (int n = 0; n < 6; ++n) {
            cfg.mode = FilterMode::Spectral;
            xs = newton_step(*p, cfg, n, xs, data.y_delta);
            cfg.mode = FilterMode::Iterative;
            xi = newton_step(*p, cfg, n, xi, data.y_delta);
            CHECK((xs - xi).norm() <= 1e-6 * std::max(1.0, xs.norm()));
        }
    }
}

TEST_CASE("stopping index stays below the a-priori prediction") {
    const int K = 48;
    const ProblemPtr p = make_diagonal_linear(K, 1.0);
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K));
    const AlphaSchedule sched = make_geometric_schedule(1.0, 0.8, 90);
    for (double delta : {1e-2, 1e-3, 1e-4}) {
        const NoisyData data = make_noisy(*p, delta, 2);
        const SolverConfig cfg =
            basic_config(iterated_tikhonov(1), sched, src.x0, 0.0, 1.0);
        const SolverResult res = run(*p, cfg, data);
        REQUIRE(res.stop_reason == StopReason::Discrepancy);
        const int predicted = predicted_stop_index(sched, 1.0, 0.0, 1.0,
                                                   src.source.omega_norm, 2.0,
                                                   sched.c0, delta);
        CHECK(res.n_delta <= predicted);
    }
}

TEST_CASE("predicted_stop_index: closed-form cases") {
    const AlphaSchedule sched = make_constant_schedule(1.0, 500);
    // threshold (tau-1) delta / (2 c0 ||omega||) = 0.0025, s_n = n+1 >= 400
    CHECK(predicted_stop_index(sched, 1.0, 0.0, 1.0, 1.0, 2.0, 2.0, 0.01) == 399);
    // large delta: the first index already satisfies the bound
    CHECK(predicted_stop_index(sched, 1.0, 0.0, 1.0, 1.0, 2.0, 2.0, 10.0) == 0);
    CHECK_THROWS_AS(predicted_stop_index(sched, 1.0, 0.0, 1.0, 1.0, 2.0, 2.0, 0.0),
                    std::invalid_argument);
    const AlphaSchedule tiny = make_constant_schedule(1.0, 5);
    CHECK_THROWS_AS(predicted_stop_index(tiny, 1.0, 0.0, 1.0, 1.0, 2.0, 2.0, 1e-6),
                    std::runtime_error);
}

TEST_CASE("error norms in the source index stay bounded across delta") {
    const int K = 256;
    const ProblemPtr p = make_diagonal_linear(K, 1.0);
    const auto src = construct_source(*p, 0.0, 1.0, spread_omega(K));
    const AlphaSchedule sched = make_geometric_schedule(1.0, 0.8, 110);
    double lo = 1e300, hi = 0.0, kappa = 0.0;
    for (double delta : {1e-2, 1e-3, 1e-4, 1e-5}) {
        const NoisyData data = make_noisy(*p, delta, 4);
        const SolverConfig cfg =
            basic_config(iterated_tikhonov(1), sched, src.x0, 0.0, 1.0);
        const SolverResult res = run(*p, cfg, data);
        REQUIRE(res.stop_reason == StopReason::Discrepancy);
        double run_constant = 0.0;
        for (const IterationRecord& rec : res.history) {
            run_constant = std::max(run_constant, rec.err_mu / src.source.omega_norm);
            // residual-bound shape: residual <= kappa * s_n^{-(a+mu)/(2(a+s))} + delta
            kappa = std::max(kappa, (rec.residual - delta) * rec.s_n /
                                        src.source.omega_norm);
        }
        lo = std::min(lo, run_constant);
        hi = std::max(hi, run_constant);
    }
    CHECK(hi / lo <= 2.0);
    CHECK(kappa <= 10.0);
}

TEST_CASE("terminal reasons: ball exit, max_iter, exact-zero discrepancy") {
    // x0 outside the ball stops immediately
    const ProblemPtr small_ball = make_diagonal_linear(4, 1.0, Vector(), 0.05);
    Vector far = Vector::Constant(4, 1.0);
    SolverConfig cfg = basic_config(iterated_tikhonov(1), make_constant_schedule(1.0, 4),
                                    far, 0.0, 0.0);
    const SolverResult ball = run(*small_ball, cfg, make_noisy(*small_ball, 1e-3, 1));
    CHECK(ball.stop_reason == StopReason::LeftBall);

    // delta = 0 with a short budget reports max_iter (not an exception)
    const ProblemPtr p = make_diagonal_linear(4, 1.0);
    cfg = basic_config(iterated_tikhonov(1), make_constant_schedule(1.0, 500), far, 0.0, 0.0);
    cfg.max_iter = 5;
    const SolverResult capped = run(*p, cfg, make_noisy(*p, 0.0, 1));
    CHECK(capped.stop_reason == StopReason::MaxIter);
    CHECK(capped.history.size() == 6);

    // scalar contraction halves the error exactly; delta = 0 ends at residual 0
    const ProblemPtr unit = make_diagonal_linear(1, 0.0);
    Vector x0(1);
    x0 << 1.0;
    cfg = basic_config(iterated_tikhonov(1), make_constant_schedule(1.0, 1200), x0, 0.0, 0.0);
    const SolverResult exact = run(*unit, cfg, make_noisy(*unit, 0.0, 1));
    CHECK(exact.stop_reason == StopReason::Discrepancy);
    CHECK(exact.history.back().residual == 0.0);
}
