#pragma once

#include <cstddef>
#include <vector>

#include "tailwave/model.hpp"

namespace tailwave {

// One-dimensional generator of the free radial wave: u0(t,r) =
// [h(t-r) - h(t+r)] / r.  Sampled at x_i = -support_radius + i*dx on
// 2*m+1 nodes; identically zero for |x| >= support_radius.
struct HProfile {
  double dx = 0;
  double support_radius = 0;
  std::vector<double> h, h_prime;

  std::size_t size() const { return h.size(); }
  double x0() const { return -support_radius; }
  double value(double x) const;
  double deriv(double x) const;
};

// h(x) = -(x/2) f(x) + (1/2) * integral_x^inf y g(y) dy, with f, g extended
// evenly.  Even g makes the integral term even, odd-times-even makes the f
// term odd + even pieces cancel so that u0(0,r) = f(r), du0/dt(0,r) = g(r).
// h' is built from the closed form h'(x) = -f/2 - x f'/2 - (x/2) g.
// Both vanish identically outside [-R, R].  Grids of f and g must match.
HProfile build_h(const RadialProfile& f, const RadialProfile& g);

// Free field value; the r -> 0 limit -2 h'(t) is used below origin_cut.
double u0_eval(const HProfile& h, double t, double r,
               double origin_cut = 1e-8);

}  // namespace tailwave
