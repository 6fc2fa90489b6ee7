// Numerical certification of the structural conditions a filter family and an
// alpha-schedule must satisfy for the convergence theory: grid verification of
// the residual-product bounds, contour-integral boundedness of the complex
// extension phi_alpha, and the derived resolvent-product bound.

#pragma once

#include <string>
#include <vector>

#include "hsnewton/filters.hpp"
#include "hsnewton/schedule.hpp"

namespace hsnewton {

struct CheckConfig {
    std::vector<double> nu_grid;      // exponents in [0, 1]
    std::vector<double> lambda_grid;  // spectral points in [0, 1]
    int n_max = 50;                   // indices 0 <= j <= n <= n_max
    int quadrature_nodes = 512;       // per contour arc

    void validate() const;  // throws std::invalid_argument on bad grids
};

// nu in {0, 0.25, 0.5, 0.75, 1}, 161-point lambda grid, n_max = 50.
CheckConfig default_check_config();

// Grid maxima of the two normalized residual-product quantities
//   V1 = lambda^nu * prod_{k=j}^{n} r_{alpha_k}(lambda) * (s_n - s_{j-1})^nu
//   V2 = lambda^nu * g_{alpha_j}(lambda) * prod_{k=j+1}^{n} r_{alpha_k}(lambda)
//        * alpha_j * (s_n - s_{j-1})^nu
// V1 must stay <= 1; the V2 maximum is the empirical constant b2.
struct ResidualProductReport {
    std::string family;
    std::string schedule_kind;
    double max_v1 = 0.0;
    double b2_estimate = 0.0;
    // location of the V1 maximum, for diagnostics
    double worst_lambda = 0.0;
    double worst_nu = 0.0;
    int worst_j = 0;
    int worst_n = 0;
};

ResidualProductReport check_residual_products(const FilterFamily& family,
                                              const AlphaSchedule& sched,
                                              const CheckConfig& cfg);

// Contour certification for one alpha: the integral of |phi_alpha| over the
// four-arc contour (inner circle alpha/2, outer arc R, two rays at +-phi0) by
// composite Gauss-Legendre quadrature, the grid estimate of
// b0 = max (|z|+lambda)/|z-lambda| over contour samples and the lambda grid,
// and the relative change of the integral under node doubling.
struct ContourReport {
    std::string family;
    double alpha = 0.0;
    double b1_integral = 0.0;
    double b0_estimate = 0.0;
    double refinement_delta = 0.0;  // |I_2N - I_N| / max(I_2N, floor)
};

// Throws std::invalid_argument when the contour parameters violate the family
// invariants (R <= max{1, alpha}, phi0 outside (0, pi/2), or
// R >= 2 cos(phi0) for Landweber/Lardy).
ContourReport check_contour_integral(const FilterFamily& family, double alpha,
                                     const CheckConfig& cfg);

// Max over the grids and schedule values of
//   [lambda^nu (alpha+lambda)^{-1} prod_{k=j+1}^{n} r_{alpha_k}(lambda)]
//   / [2 alpha^{nu-1} (1 + alpha (s_n - s_j))^{-nu}],
// which stays <= 1 whenever the residual-product bound holds.
double resolvent_product_probe(const FilterFamily& family,
                               const AlphaSchedule& sched,
                               const std::vector<double>& nu_grid,
                               const std::vector<double>& lambda_grid);

}  // namespace hsnewton
