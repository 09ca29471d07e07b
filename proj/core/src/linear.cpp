#include "tailwave/linear.hpp"

#include <cmath>
#include <cstddef>

#include "tailwave/errors.hpp"
#include "tailwave/interp.hpp"
#include "tailwave/quadrature.hpp"

namespace tailwave {

double HProfile::value(double x) const {
  if (std::abs(x) >= support_radius || h.empty()) return 0.0;
  return cubic_interp(h, x0(), dx, x);
}

double HProfile::deriv(double x) const {
  if (std::abs(x) >= support_radius || h_prime.empty()) return 0.0;
  return cubic_interp(h_prime, x0(), dx, x);
}

HProfile build_h(const RadialProfile& f, const RadialProfile& g) {
  if (f.samples.size() != g.samples.size() || f.dr != g.dr)
    throw ConfigError("build_h: f and g must share one sample grid");
  if (f.samples.size() < 2) throw ConfigError("build_h: need at least 2 samples");

  const double dx = f.dr;
  const std::size_t m = f.samples.size() - 1;  // cells per side

  HProfile out;
  out.dx = dx;
  out.support_radius = static_cast<double>(m) * dx;
  out.h.assign(2 * m + 1, 0.0);
  out.h_prime.assign(2 * m + 1, 0.0);

  // Nodes x_i = (i - m) dx align with the profile grid: even extension is an
  // index reflection, no interpolation enters the construction.
  const auto fidx = [&](std::size_t i) { return i >= m ? i - m : m - i; };

  // G(x) = integral_x^{inf} y g(y) dy on the h grid.  y g(y) is odd, so G is
  // even; building it over the full [-R, R] chain keeps that exact up to
  // quadrature error and makes G(-R) = integral of an odd function ~ 0.
  std::vector<double> yg(2 * m + 1);
  for (std::size_t i = 0; i <= 2 * m; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(m)) * dx;
    yg[i] = x * g.samples[fidx(i)];
  }
  const auto G = cumulative_from_right(yg, dx);
  const auto fp = derivative(f.samples, f.dr);

  for (std::size_t i = 0; i <= 2 * m; ++i) {
    const double x = (static_cast<double>(i) - static_cast<double>(m)) * dx;
    const double fe = f.samples[fidx(i)];
    const double ge = g.samples[fidx(i)];
    const double fpe = (i >= m ? 1.0 : -1.0) * fp[fidx(i)];  // odd derivative
    out.h[i] = -0.5 * x * fe + 0.5 * G[i];
    out.h_prime[i] = -0.5 * fe - 0.5 * x * fpe - 0.5 * x * ge;
  }
  // f, g and G all vanish at the support edge; pin the endpoints so the
  // compact-support contract holds bitwise.
  out.h.front() = out.h.back() = 0.0;
  out.h_prime.front() = out.h_prime.back() = 0.0;
  return out;
}

double u0_eval(const HProfile& h, double t, double r, double origin_cut) {
  if (r < 0.0) throw ConfigError("u0_eval: r must be nonnegative");
  const double R = h.support_radius;
  // Strong Huygens: zero before the pulse arrives and after it passes.
  if (t - r >= R || t + r <= -R) return 0.0;
  if (r < origin_cut) {
    // [h(t-r) - h(t+r)]/r -> -2 h'(t) as r -> 0.
    return -2.0 * h.deriv(t);
  }
  return (h.value(t - r) - h.value(t + r)) / r;
}

}  // namespace tailwave
