#pragma once

#include <array>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tailwave/constants.hpp"
#include "tailwave/linear.hpp"

namespace tailwave {

struct Interval {
  double lo = 0, hi = 0;
  bool empty() const { return !(hi > lo); }
};

// Radial space-time source for the retarded integral.  rho_support, when
// set, appends conservative spatial support intervals at time s; sources
// with sharp edges supply it so the quadrature never brackets a kink.
struct SpaceTimeSource {
  std::function<double(double s, double rho)> value;
  std::function<void(double s, std::vector<Interval>&)> rho_support;
  Interval s_support{0.0, std::numeric_limits<double>::infinity()};
};

struct DuhamelOptions {
  double ds = 1e-2;    // time-step ceiling of the outer Simpson rule
  double drho = 1e-2;  // radius-step ceiling of the inner Simpson rule
};

// Retarded solution of  u_tt - u_rr - (2/r) u_r = source  with zero data:
//   u(t,r) = 1/(2r) * int_0^t ds int_{|r-(t-s)|}^{r+(t-s)} rho src(s,rho) drho.
// Composite Simpson in both variables with sub-cell clipping against the
// support intervals; all weights positive, so a nonnegative source gives a
// nonnegative value exactly in floating point.
double duhamel_apply(const SpaceTimeSource& src, double t, double r,
                     const DuhamelOptions& opt = {});

// Light-cone shell  strength * delta_sigma(s - rho) / rho^p  with a
// normalised Gaussian delta of width sigma, truncated at 8 sigma and cut
// off below rho = sigma.  As sigma -> 0 its retarded solution converges to
// the tail profile W with A_p = 2^{p-3} * strength / (p-2).
struct ShellSource {
  double strength = 1.0;
  double sigma = 0.01;
  double p = 3.0;
};
SpaceTimeSource make_source(const ShellSource& shell);

// Self-similar deficit source of the rescaled remainder:
//   eps^{-a} * pow_s(h(l(s-rho)) - h(l(s+rho)), p) / rho^p,  l = eps^{-a},
// supported in |s - rho| <= eps^a R union s + rho <= eps^a R.
// The returned source keeps a pointer to h: h must outlive it.
SpaceTimeSource scaled_power_source(const HProfile& h, double p,
                                    double epsilon, double a);

// Closed-form tail profile:
//   W(t,r) = A_p/r * [(t-r)^{2-p} - (t+r)^{2-p}]  inside the light cone,
// 0 outside, with the r -> 0 limit 2 (p-2) A_p * t^{1-p} below origin_cut.
double W_eval(const AsymptoticModel& m, double t, double r,
              double origin_cut = 1e-8);

// Single-shell building block of W as printed in closed form:
//   h_value^p / (p-2) * [(t-r)^{2-p} - (t+r)^{2-p}]  for t > r, else 0.
double phi_p_eval(double h_value, double p, double t, double r);

// True when (t, r) is within guard of the light cone t = r, where the
// (t-r)^{2-p} factor is large and closed-form comparisons are ill-posed.
bool near_cone(double t, double r, double guard);

// Weighted gap between the scaled-source retarded integral and W at one
// point:  weight_p(t,r) * |duhamel(scaled source) - W(t,r)|.  Probes must
// satisfy t - r > 1; epsilon sets the source scaling (and may differ from
// m.epsilon in sweeps).  Step ceilings default to eps^a * R / 16.
double shell_deficit_at(const AsymptoticModel& m, const HProfile& h,
                        double epsilon, double t, double r,
                        const DuhamelOptions& opt);
double shell_deficit(const AsymptoticModel& m, const HProfile& h,
                     double epsilon,
                     std::span<const std::array<double, 2>> probes);

}  // namespace tailwave
