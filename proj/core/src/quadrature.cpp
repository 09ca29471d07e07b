#include "tailwave/quadrature.hpp"

#include <cstddef>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

// Integral over one panel [x_i, x_{i+1}] from the 3-node parabola through
// i, i+1, i+2 (forward) or i-1, i, i+1 (backward).
inline double half_panel_forward(double y0, double y1, double y2, double dx) {
  return dx / 12.0 * (5.0 * y0 + 8.0 * y1 - y2);
}
inline double half_panel_backward(double y0, double y1, double y2, double dx) {
  return dx / 12.0 * (-y0 + 8.0 * y1 + 5.0 * y2);
}

}  // namespace

double simpson(std::span<const double> y, double dx) {
  const std::size_t n = y.size();
  if (n < 2) throw ConfigError("simpson: need at least 2 samples");
  if (n == 2) return 0.5 * dx * (y[0] + y[1]);

  // Even panel prefix, paired Simpson.
  const std::size_t pairs = (n - 1) / 2;
  double acc = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const std::size_t i = 2 * k;
    acc += dx / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
  }
  if ((n - 1) % 2 != 0) {
    acc += half_panel_backward(y[n - 3], y[n - 2], y[n - 1], dx);
  }
  return acc;
}

std::vector<double> cumulative_from_right(std::span<const double> y, double dx) {
  const std::size_t n = y.size();
  if (n < 2) throw ConfigError("cumulative_from_right: need at least 2 samples");
  std::vector<double> out(n, 0.0);
  if (n == 2) {
    out[0] = 0.5 * dx * (y[0] + y[1]);
    return out;
  }
  // March right-to-left: paired Simpson two panels at a time on the chain
  // anchored at the right end, one 3-point half panel to reach the node in
  // between.  Every entry is a sum of O(dx^4) pieces.
  for (std::size_t steps = 1; steps <= n - 1; ++steps) {
    const std::size_t i = n - 1 - steps;
    if (steps % 2 == 0) {
      out[i] = out[i + 2] + dx / 3.0 * (y[i] + 4.0 * y[i + 1] + y[i + 2]);
    } else if (i + 2 <= n - 1) {
      out[i] = out[i + 1] + half_panel_forward(y[i], y[i + 1], y[i + 2], dx);
    } else {
      out[i] = out[i + 1] + half_panel_backward(y[i - 1], y[i], y[i + 1], dx);
    }
  }
  return out;
}

std::vector<double> derivative(std::span<const double> y, double dx) {
  const std::size_t n = y.size();
  if (n < 2) throw ConfigError("derivative: need at least 2 samples");
  std::vector<double> d(n, 0.0);
  if (n < 5) {
    d[0] = (y[1] - y[0]) / dx;
    d[n - 1] = (y[n - 1] - y[n - 2]) / dx;
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (y[i + 1] - y[i - 1]) / (2.0 * dx);
    if (n >= 3) {
      d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * dx);
      d[n - 1] = (3.0 * y[n - 1] - 4.0 * y[n - 2] + y[n - 3]) / (2.0 * dx);
    }
    return d;
  }
  const double c = 1.0 / (12.0 * dx);
  d[0] = c * (-25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]);
  d[1] = c * (-3.0 * y[0] - 10.0 * y[1] + 18.0 * y[2] - 6.0 * y[3] + y[4]);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    d[i] = c * (y[i - 2] - 8.0 * y[i - 1] + 8.0 * y[i + 1] - y[i + 2]);
  }
  d[n - 2] = c * (3.0 * y[n - 1] + 10.0 * y[n - 2] - 18.0 * y[n - 3] + 6.0 * y[n - 4] - y[n - 5]);
  d[n - 1] = c * (25.0 * y[n - 1] - 48.0 * y[n - 2] + 36.0 * y[n - 3] - 16.0 * y[n - 4] + 3.0 * y[n - 5]);
  return d;
}

}  // namespace tailwave
