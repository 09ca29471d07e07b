#include "tailwave/interp.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace tailwave {

double cubic_interp(std::span<const double> y, double x0, double dx, double x) {
  const std::size_t n = y.size();
  if (n == 0) return 0.0;
  if (n == 1) return y[0];

  const double s = (x - x0) / dx;
  if (n == 2) {
    return y[0] + (y[1] - y[0]) * s;
  }
  if (n == 3) {
    // Quadratic Lagrange through all three nodes.
    const double l0 = 0.5 * (s - 1.0) * (s - 2.0);
    const double l1 = -s * (s - 2.0);
    const double l2 = 0.5 * s * (s - 1.0);
    return l0 * y[0] + l1 * y[1] + l2 * y[2];
  }

  // Stencil base so s lands between the middle pair when possible.
  long base = static_cast<long>(std::floor(s)) - 1;
  base = std::clamp(base, 0L, static_cast<long>(n) - 4);
  const double u = s - static_cast<double>(base);

  const double l0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
  const double l1 = u * (u - 2.0) * (u - 3.0) / 2.0;
  const double l2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
  const double l3 = u * (u - 1.0) * (u - 2.0) / 6.0;
  const std::size_t b = static_cast<std::size_t>(base);
  return l0 * y[b] + l1 * y[b + 1] + l2 * y[b + 2] + l3 * y[b + 3];
}

}  // namespace tailwave
