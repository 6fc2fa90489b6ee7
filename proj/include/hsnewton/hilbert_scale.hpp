// Finite-dimensional spectral model of the Hilbert scale (X_r) generated by a
// densely defined self-adjoint strictly positive operator L. The scale is
// represented by the diagonal spectrum of L in its eigenbasis; fractional
// powers act entrywise, so every L^r is exact.

#pragma once

#include <vector>

#include "hsnewton/numerics.hpp"

namespace hsnewton {

// Coordinate vector in the eigenbasis of L.
using ScaleVector = Vector;

// Diagonal spectral representation of the scale generator L.
//
// Invariants: eigenvalues sorted ascending, all > 0; theta = 1/l_1 is the
// tight constant with ||x||^2 <= theta * <Lx, x> for every coordinate vector.
struct ScaleOperator {
    Vector eigenvalues;
    double theta = 0.0;

    int dim() const { return static_cast<int>(eigenvalues.size()); }
};

// Builds the operator from an eigenvalue list (sorted on construction).
// Throws std::invalid_argument on an empty list or a non-positive entry.
ScaleOperator make_scale(const std::vector<double>& eigenvalues);

// Convenience: the default desk-scale model l_k = k, k = 1..K.
ScaleOperator make_scale_linear(int K);

// L^r x, computed entrywise as l_k^r * x_k. r = 0 returns x unchanged.
ScaleVector apply_power(const ScaleOperator& op, double r, const ScaleVector& x);

// Scale norm ||x||_r = ||L^r x|| = sqrt(sum_k l_k^{2r} x_k^2).
double norm_r(const ScaleOperator& op, double r, const ScaleVector& x);

// Interpolation slack ||x||_p^{(r-q)/(r-p)} ||x||_r^{(q-p)/(r-p)} - ||x||_q
// for p < q < r; nonnegative up to rounding for every nonzero x.
// Throws std::invalid_argument when the ordering is violated or x = 0.
double interpolation_slack(const ScaleOperator& op, const ScaleVector& x,
                           double p, double q, double r);

}  // namespace hsnewton
