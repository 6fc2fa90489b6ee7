#include "hsnewton/certification.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <set>
#include <stdexcept>

namespace hsnewton {

void CheckConfig::validate() const {
    if (nu_grid.empty() || lambda_grid.empty())
        throw std::invalid_argument("CheckConfig: grids must be non-empty");
    for (double nu : nu_grid)
        if (!(nu >= 0.0 && nu <= 1.0))
            throw std::invalid_argument("CheckConfig: nu values must lie in [0, 1]");
    for (double lam : lambda_grid)
        if (!(lam >= 0.0 && lam <= 1.0))
            throw std::invalid_argument("CheckConfig: lambda values must lie in [0, 1]");
    if (n_max < 0) throw std::invalid_argument("CheckConfig: n_max must be >= 0");
    if (quadrature_nodes < 8)
        throw std::invalid_argument("CheckConfig: quadrature_nodes must be >= 8");
}

CheckConfig default_check_config() {
    CheckConfig cfg;
    cfg.nu_grid = {0.0, 0.25, 0.5, 0.75, 1.0};
    cfg.lambda_grid.push_back(0.0);
    for (int i = 0; i < 60; ++i)  // log-spaced 1e-9 .. 1e-1
        cfg.lambda_grid.push_back(std::pow(10.0, -9.0 + 8.0 * i / 59.0));
    for (int i = 1; i <= 100; ++i) cfg.lambda_grid.push_back(i / 100.0);
    cfg.n_max = 50;
    cfg.quadrature_nodes = 512;
    return cfg;
}

namespace {

void require_admissible(const FilterFamily& family, const AlphaSchedule& sched) {
    for (int n = 0; n < sched.length(); ++n)
        if (!alpha_admissible(family, sched.alpha(n)))
            throw std::invalid_argument("schedule alpha_" + std::to_string(n) + " = " +
                                        std::to_string(sched.alpha(n)) +
                                        " not admissible for " + family.name());
}

}  // namespace

ResidualProductReport check_residual_products(const FilterFamily& family,
                                              const AlphaSchedule& sched,
                                              const CheckConfig& cfg) {
    cfg.validate();
    require_admissible(family, sched);
    const int n_max = std::min(cfg.n_max, sched.length() - 1);

    ResidualProductReport rep;
    rep.family = family.name();
    rep.schedule_kind = sched.kind;

    std::vector<double> r_vals(static_cast<size_t>(n_max) + 1);
    std::vector<double> g_vals(static_cast<size_t>(n_max) + 1);
    for (double lam : cfg.lambda_grid) {
        for (int k = 0; k <= n_max; ++k) {
            r_vals[static_cast<size_t>(k)] = r_scalar(family, sched.alpha(k), lam);
            g_vals[static_cast<size_t>(k)] = g_scalar(family, sched.alpha(k), lam);
        }
        for (int j = 0; j <= n_max; ++j) {
            double prod_with = 1.0;   // prod_{k=j}^{n} r
            double prod_after = 1.0;  // prod_{k=j+1}^{n} r
            for (int n = j; n <= n_max; ++n) {
                prod_with *= r_vals[static_cast<size_t>(n)];
                if (n > j) prod_after *= r_vals[static_cast<size_t>(n)];
                const double base = lam * (sched.s(n) - sched.s(j - 1));
                for (double nu : cfg.nu_grid) {
                    const double weight = std::pow(base, nu);
                    const double v1 = prod_with * weight;
                    const double v2 =
                        g_vals[static_cast<size_t>(j)] * sched.alpha(j) * prod_after * weight;
                    if (v1 > rep.max_v1) {
                        rep.max_v1 = v1;
                        rep.worst_lambda = lam;
                        rep.worst_nu = nu;
                        rep.worst_j = j;
                        rep.worst_n = n;
                    }
                    rep.b2_estimate = std::max(rep.b2_estimate, v2);
                }
            }
        }
    }
    return rep;
}

namespace {

void validate_contour(const FilterFamily& family, double alpha) {
    const double r = family.contour_R;
    const double phi0 = family.contour_phi0;
    if (!(phi0 > 0.0 && phi0 < std::numbers::pi / 2.0))
        throw std::invalid_argument("contour: phi0 must lie in (0, pi/2)");
    if (!(r > std::max(1.0, alpha)))
        throw std::invalid_argument("contour: R must exceed max{1, alpha}");
    if ((family.kind == FilterKind::Landweber || family.kind == FilterKind::Lardy) &&
        !(r < 2.0 * std::cos(phi0)))
        throw std::invalid_argument("contour: Landweber/Lardy need R < 2 cos(phi0)");
}

double contour_integral(const FilterFamily& family, double alpha, int nodes) {
    const double r = family.contour_R;
    const double phi0 = family.contour_phi0;
    const double two_pi = 2.0 * std::numbers::pi;

    const auto phi_abs = [&](std::complex<double> z) {
        return std::abs(phi_complex(family, alpha, z));
    };
    // inner circle of radius alpha/2, |dz| = (alpha/2) dphi
    double total = gauss_legendre_panels(
        [&](double phi) {
            return 0.5 * alpha * phi_abs(std::polar(0.5 * alpha, phi));
        },
        phi0, two_pi - phi0, nodes);
    // outer arc of radius R, |dz| = R dphi
    total += gauss_legendre_panels(
        [&](double phi) { return r * phi_abs(std::polar(r, phi)); }, -phi0, phi0,
        nodes);
    // rays t e^{+-i phi0}, t in [alpha/2, R]; log-parametrized (t = e^u,
    // |dz| = e^u du) to resolve the inner boundary layer
    for (double sign : {1.0, -1.0}) {
        total += gauss_legendre_panels(
            [&](double u) {
                const double t = std::exp(u);
                return t * phi_abs(std::polar(t, sign * phi0));
            },
            std::log(0.5 * alpha), std::log(r), nodes);
    }
    return total;
}

}  // namespace

ContourReport check_contour_integral(const FilterFamily& family, double alpha,
                                     const CheckConfig& cfg) {
    cfg.validate();
    if (!alpha_admissible(family, alpha))
        throw std::invalid_argument("check_contour_integral: alpha not admissible");
    validate_contour(family, alpha);

    ContourReport rep;
    rep.family = family.name();
    rep.alpha = alpha;
    const double coarse = contour_integral(family, alpha, cfg.quadrature_nodes);
    const double fine = contour_integral(family, alpha, 2 * cfg.quadrature_nodes);
    rep.b1_integral = fine;
    // floor keeps the ratio meaningful when phi vanishes identically and the
    // quadrature returns pure rounding noise
    rep.refinement_delta = std::abs(fine - coarse) / std::max(std::abs(fine), 1e-12);

    // b0 = max (|z|+lambda)/|z-lambda| over contour samples and the grid
    const double r = family.contour_R;
    const double phi0 = family.contour_phi0;
    std::vector<std::complex<double>> samples;
    for (double phi : gauss_legendre_points(phi0, 2.0 * std::numbers::pi - phi0,
                                            cfg.quadrature_nodes))
        samples.push_back(std::polar(0.5 * alpha, phi));
    for (double phi : gauss_legendre_points(-phi0, phi0, cfg.quadrature_nodes))
        samples.push_back(std::polar(r, phi));
    for (double u : gauss_legendre_points(std::log(0.5 * alpha), std::log(r),
                                          cfg.quadrature_nodes)) {
        samples.push_back(std::polar(std::exp(u), phi0));
        samples.push_back(std::polar(std::exp(u), -phi0));
    }
    for (const auto& z : samples) {
        const double az = std::abs(z);
        for (double lam : cfg.lambda_grid)
            rep.b0_estimate = std::max(rep.b0_estimate, (az + lam) / std::abs(z - lam));
    }
    return rep;
}

double resolvent_product_probe(const FilterFamily& family, const AlphaSchedule& sched,
                               const std::vector<double>& nu_grid,
                               const std::vector<double>& lambda_grid) {
    require_admissible(family, sched);
    std::set<double> alpha_set(sched.alphas.begin(), sched.alphas.end());

    const int last = sched.length() - 1;
    double worst = 0.0;
    std::vector<double> r_vals(static_cast<size_t>(last) + 1);
    for (double lam : lambda_grid) {
        for (int k = 0; k <= last; ++k)
            r_vals[static_cast<size_t>(k)] = r_scalar(family, sched.alpha(k), lam);
        for (int j = 0; j <= last; ++j) {
            double prod = 1.0;  // prod_{k=j+1}^{n} r
            for (int n = j; n <= last; ++n) {
                if (n > j) prod *= r_vals[static_cast<size_t>(n)];
                const double gap = sched.s(n) - sched.s(j);
                for (double alpha : alpha_set) {
                    for (double nu : nu_grid) {
                        const double lhs = std::pow(lam, nu) / (alpha + lam) * prod;
                        const double rhs = 2.0 * std::pow(alpha, nu - 1.0) *
                                           std::pow(1.0 + alpha * gap, -nu);
                        worst = std::max(worst, lhs / rhs);
                    }
                }
            }
        }
    }
    return worst;
}

}  // namespace hsnewton
