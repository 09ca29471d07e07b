#pragma once

#include <cstddef>
#include <span>

namespace tailwave {

// Cubic Lagrange interpolation of samples y[j] at x0 + j*dx.  The 4-point
// stencil is clamped at the array ends; degrades to the full-order Lagrange
// polynomial when fewer than 4 samples exist.  Exact at the nodes.
double cubic_interp(std::span<const double> y, double x0, double dx, double x);

}  // namespace tailwave
