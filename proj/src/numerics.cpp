#include "hsnewton/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace hsnewton {

std::vector<double> compensated_cumsum(const std::vector<double>& values) {
    std::vector<double> out;
    out.reserve(values.size());
    double sum = 0.0, comp = 0.0;
    for (double v : values) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        out.push_back(sum);
    }
    return out;
}

Vector conjugate_gradient(const ApplyFn& op, const Vector& rhs, double tol,
                          int max_iter) {
    const double rhs_norm = rhs.norm();
    Vector x = Vector::Zero(rhs.size());
    if (rhs_norm == 0.0) return x;

    Vector r = rhs;  // residual for x = 0
    Vector p = r;
    double rr = r.squaredNorm();
    const double target = tol * rhs_norm;
    for (int it = 0; it < max_iter; ++it) {
        if (std::sqrt(rr) <= target) return x;
        Vector ap = op(p);
        const double pap = p.dot(ap);
        if (!(pap > 0.0))
            throw std::runtime_error("conjugate_gradient: operator not positive definite");
        const double alpha = rr / pap;
        x += alpha * p;
        r -= alpha * ap;
        const double rr_new = r.squaredNorm();
        p = r + (rr_new / rr) * p;
        rr = rr_new;
    }
    if (std::sqrt(rr) <= target) return x;
    throw std::runtime_error("conjugate_gradient: no convergence within iteration limit");
}

double operator_norm_power(const ApplyFn& apply, const ApplyFn& apply_adjoint,
                           int dim, int iterations, double tol) {
    // Deterministic start with mass in every coordinate.
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = 1.0 + 1.0 / (i + 2.0);
    v /= v.norm();

    double value = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Vector w = apply_adjoint(apply(v));
        const double norm_w = w.norm();
        if (norm_w == 0.0) return 0.0;  // zero operator (or v in its kernel)
        const double next = v.dot(w);   // Rayleigh quotient for A^T A
        v = w / norm_w;
        if (it > 0 && std::abs(next - value) <= tol * std::max(next, 1e-300)) {
            return std::sqrt(std::max(next, 0.0));
        }
        value = next;
    }
    throw std::runtime_error("operator_norm_power: no convergence within iteration limit");
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("fit_line: need >= 2 matching points");
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double ss_res = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double resid = y[i] - fit.slope * x[i] - fit.intercept;
            ss_res += resid * resid;
        }
        fit.slope_stderr = std::sqrt(ss_res / (static_cast<double>(n) - 2.0) / sxx);
    }
    return fit;
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlNodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
    -0.1834346424956498, 0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
    0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

int panel_count(int nodes) { return std::max(1, nodes / 8); }

}  // namespace

double gauss_legendre_panels(const std::function<double(double)>& f, double lo,
                             double hi, int nodes) {
    const int panels = panel_count(nodes);
    const double h = (hi - lo) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        double acc = 0.0;
        for (int i = 0; i < 8; ++i) acc += kGlWeights[i] * f(mid + 0.5 * h * kGlNodes[i]);
        total += 0.5 * h * acc;
    }
    return total;
}

std::vector<double> gauss_legendre_points(double lo, double hi, int nodes) {
    const int panels = panel_count(nodes);
    const double h = (hi - lo) / panels;
    std::vector<double> pts;
    pts.reserve(static_cast<size_t>(panels) * 8);
    for (int p = 0; p < panels; ++p) {
        const double mid = lo + (p + 0.5) * h;
        for (int i = 0; i < 8; ++i) pts.push_back(mid + 0.5 * h * kGlNodes[i]);
    }
    return pts;
}

}  // namespace hsnewton
