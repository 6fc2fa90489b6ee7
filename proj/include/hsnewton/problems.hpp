// Forward-problem contract F, F', F'* on the scale coordinates, with ground
// truth and the structural parameters (a, b, beta, K0, m, M, rho): the degree
// of ill-posedness a with frame constants m <= M for ||F'(x)h|| against
// ||h||_{-a}, and the Hoelder constant K0 of F'* around the truth.
//
// Two concrete instances:
//   diagonal-linear : F(x) = T x, T = diag(l_k^{-a}); m = M = 1, K0 = 0.
//   quadratic-rank1 : F(x) = T x + (gamma/2)(<Tx,v> - c)^2 v, a rank-one
//                     quadratic perturbation with F'(x) = R_x T and
//                     ||I - R_x|| <= gamma theta^a ||x - x_truth||.

#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "hsnewton/hilbert_scale.hpp"

namespace hsnewton {

class ForwardProblem {
  public:
    virtual ~ForwardProblem() = default;

    virtual Vector eval(const Vector& x) const = 0;
    virtual Vector deriv_apply(const Vector& x, const Vector& h) const = 0;
    virtual Vector adjoint_apply(const Vector& x, const Vector& w) const = 0;

    // True when F'(x) does not depend on x (lets the solver cache the
    // filter eigendecomposition).
    virtual bool constant_derivative() const { return false; }

    virtual std::string name() const = 0;

    int dim() const { return scale_.dim(); }
    const ScaleOperator& scale() const { return scale_; }
    double a() const { return a_; }
    double b() const { return b_; }
    double beta() const { return beta_; }
    double holder_k0() const { return k0_; }
    double frame_lower() const { return m_; }   // m
    double frame_upper() const { return big_m_; }  // M
    double ball_radius() const { return rho_; }
    const Vector& x_truth() const { return x_truth_; }
    const Vector& y_exact() const { return y_exact_; }

  protected:
    ScaleOperator scale_;
    double a_ = 0.0, b_ = 0.0, beta_ = 1.0, k0_ = 0.0;
    double m_ = 1.0, big_m_ = 1.0, rho_ = 1.0;
    Vector x_truth_;
    Vector y_exact_;
};

using ProblemPtr = std::shared_ptr<const ForwardProblem>;

// F(x) = diag(l_k^{-a}) x on the default spectrum l_k = k. x_truth defaults
// to the zero vector (set a custom one before constructing sources when
// needed). Throws std::invalid_argument for K < 1 or a < 0.
ProblemPtr make_diagonal_linear(int K, double a, Vector x_truth = Vector(),
                                double rho = 1e6);

// Rank-one quadratic perturbation of the diagonal instance in direction v
// (unit data vector; empty means the flat unit vector). Requires
// gamma * theta^a * rho < 1 so the frame constants m = 1 - gamma theta^a rho,
// M = 1 + gamma theta^a rho stay positive on the ball.
ProblemPtr make_quadratic_perturbed(int K, double a, double gamma,
                                    Vector v = Vector(),
                                    Vector x_truth = Vector(),
                                    double rho = 5.0);

struct RescaleResult {
    ProblemPtr problem;
    double factor = 1.0;
};

// Multiplies F and y by a constant c so that ||F'(x)L^{-s}|| <= min{1,
// sqrt(alpha0)} over the whole ball. The ball-uniform norm bound is
// min(M theta^{a+s}, (M/m) * ||F'(x_truth)L^{-s}||) with the base norm from
// power iteration (200 iterations, tolerance 1e-10).
RescaleResult normalize_problem_scale(ProblemPtr problem, double s,
                                      double alpha0);

struct NoisyData {
    Vector y_delta;
    double delta = 0.0;
    std::uint64_t seed = 0;
};

// y_delta = y + delta * xi/||xi|| with xi from a seeded generator, so
// ||y_delta - y|| = delta exactly; delta = 0 returns y itself.
NoisyData make_noisy(const ForwardProblem& problem, double delta,
                     std::uint64_t seed);

struct SourceElement {
    double mu = 0.0;
    Vector omega;
    Vector e0;  // x0 - x_truth
    double omega_norm = 0.0;
};

struct SourceConstruction {
    SourceElement source;
    Vector x0;
};

// Builds the initial error e0 = L^{-s} (A^T A)^{(mu-s)/(2(a+s))} omega with
// A = F'(x_truth) L^{-s}, through the symmetric eigendecomposition of A^T A,
// and returns x0 = x_truth + e0. Requires (a-b)/beta < mu <= b+2s and
// a+s > 0.
SourceConstruction construct_source(const ForwardProblem& problem, double s,
                                    double mu, const Vector& omega);

// omega_k proportional to k^{-1/2}, normalized to the requested norm; mass in
// every mode. The default source profile for rate experiments.
Vector spread_omega(int K, double norm = 1.0);

// Empirical max over ball samples of
// ||[F'(x) - F'(x_truth)] L^b|| / ||x - x_truth||^beta  (power-iteration
// operator norms; x = x_truth excluded). At most K0 * (1 + 1e-6) when the
// declared constant is honest.
double holder_probe(const ForwardProblem& problem, int sample_count,
                    std::uint64_t seed);

}  // namespace hsnewton
