#include "hsnewton/filters.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hsnewton {

namespace {

// exp(w) - 1 with full relative accuracy for small |w|.
std::complex<double> cexpm1(std::complex<double> w) {
    if (std::abs(w) >= 0.5) return std::exp(w) - 1.0;
    std::complex<double> term = w, acc = w;
    for (int m = 2; m < 40; ++m) {
        term *= w / static_cast<double>(m);
        acc += term;
        if (std::abs(term) <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

// log(1 + w) with full relative accuracy for small |w|.
std::complex<double> clog1p(std::complex<double> w) {
    if (std::abs(w) >= 0.25) return std::log(1.0 + w);
    std::complex<double> term = w, acc = w;
    for (int m = 2; m < 80; ++m) {
        term *= -w;
        acc += term / static_cast<double>(m);
        if (std::abs(term) / m <= 1e-18 * std::abs(acc)) break;
    }
    return acc;
}

std::complex<double> cpow_int(std::complex<double> w, long long n) {
    std::complex<double> acc = 1.0, base = w;
    for (long long e = n; e > 0; e >>= 1) {
        if (e & 1) acc *= base;
        base *= base;
    }
    return acc;
}

double binomial(int n, int k) {
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("filter: lambda must lie in [0, 1]");
}

void check_alpha(const FilterFamily& family, double alpha) {
    if (!alpha_admissible(family, alpha))
        throw std::invalid_argument("filter: alpha " + std::to_string(alpha) +
                                    " not admissible for " + family.name());
}

}  // namespace

std::string FilterFamily::name() const {
    switch (kind) {
        case FilterKind::IteratedTikhonov:
            return order == 1 ? "tikhonov" : "tikhonov" + std::to_string(order);
        case FilterKind::Exponential: return "exponential";
        case FilterKind::Landweber: return "landweber";
        case FilterKind::Lardy: return "lardy";
    }
    return "unknown";
}

FilterFamily iterated_tikhonov(int order) {
    if (order < 1) throw std::invalid_argument("iterated_tikhonov: order must be >= 1");
    FilterFamily f;
    f.kind = FilterKind::IteratedTikhonov;
    f.order = order;
    return f;
}

FilterFamily exponential_filter() {
    FilterFamily f;
    f.kind = FilterKind::Exponential;
    return f;
}

FilterFamily landweber_filter() {
    FilterFamily f;
    f.kind = FilterKind::Landweber;
    return f;
}

FilterFamily lardy_filter() {
    FilterFamily f;
    f.kind = FilterKind::Lardy;
    return f;
}

long long reciprocal_steps(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("reciprocal_steps: alpha must be > 0");
    const double kd = 1.0 / alpha;
    const long long k = std::llround(kd);
    if (k < 1 || std::abs(kd - static_cast<double>(k)) > 1e-9 * std::max(1.0, kd))
        throw std::invalid_argument("reciprocal_steps: 1/alpha is not a positive integer");
    return k;
}

bool alpha_admissible(const FilterFamily& family, double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) return false;
    if (family.kind == FilterKind::Landweber || family.kind == FilterKind::Lardy) {
        const double kd = 1.0 / alpha;
        const long long k = std::llround(kd);
        return k >= 1 && std::abs(kd - static_cast<double>(k)) <= 1e-9 * std::max(1.0, kd);
    }
    return true;
}

double g_scalar(const FilterFamily& family, double alpha, double lambda) {
    check_alpha(family, alpha);
    check_lambda(lambda);
    switch (family.kind) {
        case FilterKind::IteratedTikhonov: {
            // sum_{j=0}^{N-1} alpha^j / (alpha+lambda)^{j+1}, free of 0/0 at 0
            const double ratio = alpha / (alpha + lambda);
            double term = 1.0 / (alpha + lambda);
            double acc = term;
            for (int j = 1; j < family.order; ++j) {
                term *= ratio;
                acc += term;
            }
            return acc;
        }
        case FilterKind::Exponential: {
            const double u = lambda / alpha;
            if (u < 1e-8) return (1.0 - u / 2.0 + u * u / 6.0) / alpha;
            return -std::expm1(-u) / lambda;
        }
        case FilterKind::Landweber: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            if (lambda == 0.0) return k;
            return -std::expm1(k * std::log1p(-lambda)) / lambda;
        }
        case FilterKind::Lardy: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            if (lambda == 0.0) return k;
            return -std::expm1(-k * std::log1p(lambda)) / lambda;
        }
    }
    throw std::logic_error("g_scalar: unreachable");
}

double r_scalar(const FilterFamily& family, double alpha, double lambda) {
    check_alpha(family, alpha);
    check_lambda(lambda);
    switch (family.kind) {
        case FilterKind::IteratedTikhonov:
            return std::pow(alpha / (alpha + lambda), family.order);
        case FilterKind::Exponential:
            return std::exp(-lambda / alpha);
        case FilterKind::Landweber: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            if (lambda == 1.0) return 0.0;
            return std::exp(k * std::log1p(-lambda));
        }
        case FilterKind::Lardy: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            return std::exp(-k * std::log1p(lambda));
        }
    }
    throw std::logic_error("r_scalar: unreachable");
}

std::complex<double> phi_complex(const FilterFamily& family, double alpha,
                                 std::complex<double> z) {
    check_alpha(family, alpha);
    if (z == std::complex<double>(-alpha, 0.0) || z == std::complex<double>(-1.0, 0.0))
        throw std::domain_error("phi_complex: z at an excluded point");

    const std::complex<double> resolvent = 1.0 / (alpha + z);
    switch (family.kind) {
        case FilterKind::IteratedTikhonov: {
            // sum_{j=0}^{N-2} C(N-1,j) alpha^{j+1} z^{N-2-j} / (alpha+z)^N;
            // identically zero for N = 1, finite at z = 0.
            const int n = family.order;
            if (n == 1) return {0.0, 0.0};
            std::complex<double> num = 0.0;
            for (int j = 0; j <= n - 2; ++j)
                num += binomial(n - 1, j) * std::pow(alpha, j + 1) * cpow_int(z, n - 2 - j);
            return num / cpow_int(alpha + z, n);
        }
        case FilterKind::Exponential: {
            if (z == std::complex<double>(0.0, 0.0))
                return 1.0 / alpha - resolvent;
            const std::complex<double> g = -cexpm1(-z / alpha) / z;
            return g - resolvent;
        }
        case FilterKind::Landweber: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            if (z == std::complex<double>(0.0, 0.0)) return k - resolvent;
            if (z == std::complex<double>(1.0, 0.0)) return 1.0 / z - resolvent;
            const std::complex<double> g = -cexpm1(k * clog1p(-z)) / z;
            return g - resolvent;
        }
        case FilterKind::Lardy: {
            const auto k = static_cast<double>(reciprocal_steps(alpha));
            if (z == std::complex<double>(0.0, 0.0)) return k - resolvent;
            const std::complex<double> g = -cexpm1(-k * clog1p(z)) / z;
            return g - resolvent;
        }
    }
    throw std::logic_error("phi_complex: unreachable");
}

NormalOperatorEig decompose_normal(const Matrix& a) {
    Matrix b = a.transpose() * a;
    b = 0.5 * (b + b.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Matrix> es(b);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("decompose_normal: eigendecomposition failed");
    NormalOperatorEig eig;
    eig.a = a;
    eig.vectors = es.eigenvectors();
    eig.values = es.eigenvalues();
    const double top = eig.values.maxCoeff();
    if (top > 1.0 + 1e-8)
        throw std::runtime_error(
            "decompose_normal: spectrum of A^T A exceeds 1 (scaling violated), top = " +
            std::to_string(top));
    eig.values = eig.values.cwiseMax(0.0).cwiseMin(1.0);
    return eig;
}

Vector apply_filter_spectral(const FilterFamily& family, double alpha,
                             const NormalOperatorEig& eig, const Vector& residual) {
    check_alpha(family, alpha);
    Vector coords = eig.vectors.transpose() * (eig.a.transpose() * residual);
    for (Eigen::Index i = 0; i < coords.size(); ++i)
        coords[i] *= g_scalar(family, alpha, eig.values[i]);
    return eig.vectors * coords;
}

Vector filter_step_spectral(const FilterFamily& family, double alpha,
                            const Matrix& a, const Vector& residual) {
    return apply_filter_spectral(family, alpha, decompose_normal(a), residual);
}

Vector filter_step_iterative(const FilterFamily& family, double alpha,
                             const ApplyFn& apply_a, const ApplyFn& apply_at,
                             const Vector& residual, const IterativeStepOptions& opts) {
    check_alpha(family, alpha);
    const Vector atr = apply_at(residual);
    const auto dim = static_cast<int>(atr.size());
    const int cg_iter = opts.cg_max_iter > 0 ? opts.cg_max_iter : 10 * dim + 100;

    Vector h = Vector::Zero(dim);
    switch (family.kind) {
        case FilterKind::IteratedTikhonov: {
            const ApplyFn shifted = [&](const Vector& v) -> Vector {
                return alpha * v + apply_at(apply_a(v));
            };
            for (int l = 0; l < family.order; ++l) {
                const Vector rhs = apply_at(residual - apply_a(h));
                h += conjugate_gradient(shifted, rhs, opts.cg_tolerance, cg_iter);
            }
            return h;
        }
        case FilterKind::Exponential: {
            // h' = A^T(residual - A h), h(0) = 0, integrated to t = 1/alpha.
            const double t_end = 1.0 / alpha;
            int steps = opts.integrator_steps;
            if (steps <= 0) steps = std::max(64, static_cast<int>(std::ceil(40.0 * t_end)));
            if (steps > 2'000'000)
                throw std::runtime_error("filter_step_iterative: integrator step limit exceeded");
            const double dt = t_end / steps;
            const auto rate = [&](const Vector& v) -> Vector {
                return atr - apply_at(apply_a(v));
            };
            for (int i = 0; i < steps; ++i) {
                const Vector k1 = rate(h);
                const Vector k2 = rate(h + 0.5 * dt * k1);
                const Vector k3 = rate(h + 0.5 * dt * k2);
                const Vector k4 = rate(h + dt * k3);
                h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            }
            return h;
        }
        case FilterKind::Landweber: {
            const long long k = reciprocal_steps(alpha);
            for (long long l = 0; l < k; ++l) h += apply_at(residual - apply_a(h));
            return h;
        }
        case FilterKind::Lardy: {
            const long long k = reciprocal_steps(alpha);
            const ApplyFn shifted = [&](const Vector& v) -> Vector {
                return v + apply_at(apply_a(v));
            };
            for (long long l = 0; l < k; ++l) {
                const Vector rhs = apply_at(residual - apply_a(h));
                h += conjugate_gradient(shifted, rhs, opts.cg_tolerance, cg_iter);
            }
            return h;
        }
    }
    throw std::logic_error("filter_step_iterative: unreachable");
}

}  // namespace hsnewton
