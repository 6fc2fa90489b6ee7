#include "hsnewton/hilbert_scale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hsnewton {

ScaleOperator make_scale(const std::vector<double>& eigenvalues) {
    if (eigenvalues.empty())
        throw std::invalid_argument("make_scale: eigenvalue list is empty");
    std::vector<double> sorted = eigenvalues;
    std::sort(sorted.begin(), sorted.end());
    if (!(sorted.front() > 0.0) || !std::isfinite(sorted.back()))
        throw std::invalid_argument("make_scale: eigenvalues must be positive and finite");
    ScaleOperator op;
    op.eigenvalues = Eigen::Map<const Vector>(sorted.data(),
                                              static_cast<Eigen::Index>(sorted.size()));
    op.theta = 1.0 / sorted.front();
    return op;
}

ScaleOperator make_scale_linear(int K) {
    if (K < 1) throw std::invalid_argument("make_scale_linear: K must be >= 1");
    std::vector<double> l(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) l[static_cast<size_t>(k)] = k + 1.0;
    return make_scale(l);
}

ScaleVector apply_power(const ScaleOperator& op, double r, const ScaleVector& x) {
    if (x.size() != op.eigenvalues.size())
        throw std::invalid_argument("apply_power: dimension mismatch");
    if (r == 0.0) return x;
    ScaleVector out(x.size());
    for (Eigen::Index k = 0; k < x.size(); ++k)
        out[k] = std::exp(r * std::log(op.eigenvalues[k])) * x[k];
    return out;
}

double norm_r(const ScaleOperator& op, double r, const ScaleVector& x) {
    if (x.size() != op.eigenvalues.size())
        throw std::invalid_argument("norm_r: dimension mismatch");
    if (r == 0.0) return x.norm();
    // Scale by the largest weighted entry to keep the sum of squares in range.
    double scale = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k)
        scale = std::max(scale, std::exp(r * std::log(op.eigenvalues[k])) * std::abs(x[k]));
    if (scale == 0.0) return 0.0;
    double acc = 0.0;
    for (Eigen::Index k = 0; k < x.size(); ++k) {
        const double term = std::exp(r * std::log(op.eigenvalues[k])) * x[k] / scale;
        acc += term * term;
    }
    return scale * std::sqrt(acc);
}

double interpolation_slack(const ScaleOperator& op, const ScaleVector& x,
                           double p, double q, double r) {
    if (!(p < q && q < r))
        throw std::invalid_argument("interpolation_slack: need p < q < r");
    if (x.size() != op.eigenvalues.size())
        throw std::invalid_argument("interpolation_slack: dimension mismatch");
    if (x.norm() == 0.0)
        throw std::invalid_argument("interpolation_slack: zero vector");
    const double np = norm_r(op, p, x);
    const double nq = norm_r(op, q, x);
    const double nr = norm_r(op, r, x);
    const double wp = (r - q) / (r - p);
    const double wr = (q - p) / (r - p);
    return std::pow(np, wp) * std::pow(nr, wr) - nq;
}

}  // namespace hsnewton
