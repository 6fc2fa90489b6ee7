// Spectral filter families g_alpha for linear regularization, with the
// residual function r_alpha(lambda) = 1 - lambda * g_alpha(lambda), the
// complex extension phi_alpha(z) = g_alpha(z) - 1/(alpha + z), and two
// routes for applying g_alpha(A^T A) A^T to a residual: an eigendecomposition
// route and the family's own inner-loop method.
//
// Families:
//   IteratedTikhonov(N) : g = ((a+l)^N - a^N) / (l (a+l)^N)
//   Exponential         : g = (1 - exp(-l/a)) / l
//   Landweber           : g = (1 - (1-l)^k) / l,   k = 1/alpha integer
//   Lardy               : g = (1 - (1+l)^{-k}) / l, k = 1/alpha integer
//
// Landweber and Lardy only admit alpha values that are reciprocals of
// positive integers.

#pragma once

#include <complex>
#include <string>

#include "hsnewton/numerics.hpp"

namespace hsnewton {

enum class FilterKind { IteratedTikhonov, Exponential, Landweber, Lardy };

struct FilterFamily {
    FilterKind kind = FilterKind::IteratedTikhonov;
    int order = 1;  // N for iterated Tikhonov, ignored otherwise

    // Closed contour parameters for the complex-analytic checks: an inner
    // circle of radius alpha/2, an outer arc of radius contour_R, and two
    // rays at opening angle +-contour_phi0. Landweber/Lardy need
    // contour_R < 2 cos(contour_phi0).
    double contour_R = 1.5;
    double contour_phi0 = 0.5235987755982988;  // pi/6

    std::string name() const;
};

FilterFamily iterated_tikhonov(int order = 1);
FilterFamily exponential_filter();
FilterFamily landweber_filter();
FilterFamily lardy_filter();

// True when alpha is admissible for the family (> 0 everywhere; a reciprocal
// of a positive integer for Landweber/Lardy).
bool alpha_admissible(const FilterFamily& family, double alpha);

// 1/alpha as the exact inner-step count for Landweber/Lardy.
// Throws std::invalid_argument when 1/alpha is not an integer.
long long reciprocal_steps(double alpha);

// g_alpha(lambda) on [0,1], continuous at lambda = 0 (limit value used).
// Throws std::invalid_argument for inadmissible alpha or lambda outside [0,1].
double g_scalar(const FilterFamily& family, double alpha, double lambda);

// r_alpha(lambda) = 1 - lambda * g_alpha(lambda), evaluated in closed form;
// value in [0,1] on [0,1].
double r_scalar(const FilterFamily& family, double alpha, double lambda);

// Analytic continuation of g_alpha(z) - 1/(alpha + z) on the domain
// excluding z = -alpha and z = -1. Integer exponents are single-valued
// (principal logarithm). Throws std::domain_error at an excluded point.
std::complex<double> phi_complex(const FilterFamily& family, double alpha,
                                 std::complex<double> z);

// Symmetric eigendecomposition of A^T A with the spectrum validated to lie in
// [0, 1] (tolerance 1e-8; violations signal a scaling failure and throw
// std::runtime_error). Reusable across filter applications with the same A.
struct NormalOperatorEig {
    Matrix a;             // the operator A itself
    Matrix vectors;       // eigenvectors of A^T A, columns
    Vector values;        // eigenvalues, clamped into [0, 1]
};

NormalOperatorEig decompose_normal(const Matrix& a);

// g_alpha(A^T A) A^T residual through the cached eigendecomposition.
Vector apply_filter_spectral(const FilterFamily& family, double alpha,
                             const NormalOperatorEig& eig,
                             const Vector& residual);

// Convenience overload decomposing A on the fly.
Vector filter_step_spectral(const FilterFamily& family, double alpha,
                            const Matrix& a, const Vector& residual);

struct IterativeStepOptions {
    double cg_tolerance = 1e-13;  // relative, inner SPD solves
    int cg_max_iter = 0;          // 0: 10*dim + 100
    int integrator_steps = 0;     // 0: auto, ~40 steps per unit of t = 1/alpha
};

// Same vector as the spectral route, computed without an eigendecomposition
// by the family's inner iteration: N regularized normal-equation solves
// (IteratedTikhonov), an RK4 integration of h' = A^T(residual - A h) to
// t = 1/alpha (Exponential), k plain sweeps (Landweber), or k shifted solves
// (Lardy). A is given matrix-free.
Vector filter_step_iterative(const FilterFamily& family, double alpha,
                             const ApplyFn& apply_a, const ApplyFn& apply_at,
                             const Vector& residual,
                             const IterativeStepOptions& opts = {});

}  // namespace hsnewton
