#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "tailwave/constants.hpp"
#include "tailwave/evolve.hpp"

namespace tailwave {

// Causal weight (1 + t + r) * (1 + |t - r|)^{q-1}.
double weight(double t, double r, double q);

// Window in the cone coordinate tau = t - r.  Regions are half-open on
// purpose: membership is lo < tau <= hi.
struct Region {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double t, double r) const {
    double tau = t - r;
    return tau > lo && tau <= hi;
  }

  static Region full() { return {}; }
  static Region interior() { return {1.0, std::numeric_limits<double>::infinity()}; }
  static Region beyond(double tau0) { return {tau0, std::numeric_limits<double>::infinity()}; }
  static Region slab(double lo, double hi) { return {lo, hi}; }
};

// Lattice sup of weight(q)*|u| over region members; AnalysisError when the
// region captures no lattice point.
double weighted_norm(const Field2D& field, double q, const Region& region);

// Cone-adapted probe grid: tau = t-r and sigma = t+r node lists with
// sigma >= tau >= ... and r = (sigma-tau)/2 >= 0 enforced pointwise.  Pinning
// region boundaries as grid lines keeps boundary sups refinement-stable.
struct ScanGrid {
  std::vector<double> tau, sigma;
};
ScanGrid make_cone_scan(double tau_lo, double tau_hi, double sigma_hi,
                        std::size_t n_tau, std::size_t n_sigma);
double weighted_norm_scan(const std::function<double(double, double)>& u,
                          double q, const ScanGrid& grid);

// Full-cone vs interior dichotomy of a closed-form profile: the full norm is
// declared unbounded when sups over the slabs tau in [2^{-m}, 1] keep
// growing by >= growth_gate as m increases.
struct NormReport {
  double q = 0;
  double restricted_norm = 0;           // sup over tau > 1
  std::vector<double> slab_norms;       // m = 1..n_slabs
  bool full_unbounded = false;
};
NormReport norm_report(const std::function<double(double, double)>& u,
                       double q, double sigma_hi, std::size_t n_slabs = 4,
                       double growth_gate = 1.5);

// W_eps(t,r) = eps^{-b} w(t/eps^a, r/eps^a) sampled at probe points (t, r)
// of the *rescaled* frame; the lattice must cover the unscaled preimages.
std::vector<double> rescaled_remainder(const Field2D& w, double epsilon,
                                       double a, double p,
                                       std::span<const std::array<double, 2>> probes);

// Least-squares power-law fit u ~ amplitude * t^{-exponent} over
// t in [t_lo, t_hi].  Needs >= 8 samples of a single nonzero sign;
// max_rel_residual = max |u / model - 1| over the window.
struct TailFit {
  double exponent = 0, amplitude = 0;
  double t_lo = 0, t_hi = 0;
  double max_rel_residual = 0;
  std::size_t n_samples = 0;
};
TailFit tail_fit(std::span<const double> t, std::span<const double> u,
                 double t_lo, double t_hi);

// tail_fit on a worldline, refusing degenerate models (C_p = 0) up front.
TailFit fit_worldline_tail(const Worldline& line, const AsymptoticModel& m,
                           double t_lo, double t_hi);

// Least-squares slope of log(value) against log(eps);  >= 3 points spanning
// a factor >= 4 in eps, values positive.  Returns the fitted exponent s in
// value ~ C * eps^s.
double scaling_fit(std::span<const double> eps, std::span<const double> values);

}  // namespace tailwave
