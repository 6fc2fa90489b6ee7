// Small shared numerical utilities: compensated summation, matrix-free CG,
// power iteration for operator norms, least-squares line fit, and a composite
// Gauss-Legendre panel rule.

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Core>

namespace hsnewton {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Cumulative sums c_n = sum_{j<=n} values[j] with Kahan compensation.
std::vector<double> compensated_cumsum(const std::vector<double>& values);

using ApplyFn = std::function<Vector(const Vector&)>;

// Conjugate gradient for an SPD operator given as a matrix-free apply.
// Solves op(x) = rhs to relative residual `tol`; throws std::runtime_error
// when max_iter is exhausted without convergence.
Vector conjugate_gradient(const ApplyFn& op, const Vector& rhs, double tol,
                          int max_iter);

// Largest singular value of the operator given by `apply` / `apply_adjoint`
// (power iteration on the normal operator). Deterministic start vector.
// Throws std::runtime_error if the iteration has not settled to `tol`
// (relative change of the Rayleigh quotient) within `iterations` steps,
// except for the zero operator, which reports 0.
double operator_norm_power(const ApplyFn& apply, const ApplyFn& apply_adjoint,
                           int dim, int iterations = 200, double tol = 1e-10);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;  // standard error of the slope
};

// Ordinary least squares y ~ slope*x + intercept. Needs >= 2 points;
// slope_stderr is 0 when there are exactly 2.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Integral of f over [lo, hi] by composite 8-point Gauss-Legendre panels.
// `nodes` is the total node budget for the interval (panels = nodes/8,
// at least one).
double gauss_legendre_panels(const std::function<double(double)>& f,
                             double lo, double hi, int nodes);

// Evaluation abscissae of the same rule, for sampling-based estimates.
std::vector<double> gauss_legendre_points(double lo, double hi, int nodes);

}  // namespace hsnewton
