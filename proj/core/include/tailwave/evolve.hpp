#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "tailwave/config.hpp"
#include "tailwave/linear.hpp"
#include "tailwave/model.hpp"

namespace tailwave {

enum class FieldKind { full, linear, remainder };

// Space-time lattice of a radial field, row-major: values[i*nr + j] is the
// field at t = i*dt, r = j*dr.  dt here is the *stored* row spacing (step
// size times any keep_every decimation).
struct Field2D {
  FieldKind kind = FieldKind::full;
  double epsilon = 0;
  double dr = 0, dt = 0;
  std::size_t nt = 0, nr = 0;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * nr + j]; }
  double t_last() const { return (nt - 1) * dt; }
  double r_last() const { return (nr - 1) * dr; }
  // Bilinear sample; throws AnalysisError outside the lattice.
  double sample(double t, double r) const;
};

// Field history at a fixed radius, one entry per time step (never decimated).
struct Worldline {
  double r = 0;
  std::vector<double> t, u;
  // Cubic interpolation in t; throws AnalysisError outside the recorded span.
  double at_time(double time) const;
};

// Called once per step with the full spatial slice u(t, j*dr), j = 0..nr-1.
using SliceCallback = std::function<void(double t, std::span<const double> u)>;

struct EvolveOptions {
  bool store_lattice = true;
  int keep_every = 1;                      // store every k-th row
  std::vector<double> probe_radii;         // worldline radii
  std::optional<double> track_norm_q;      // accumulate weighted sup norm
  SliceCallback on_slice;                  // streaming hook, may be empty
};

struct EvolveResult {
  std::optional<Field2D> field;
  std::vector<Worldline> worldlines;
  double weighted_max = 0;  // sup over all steps of weight(q)*|u|, if tracked
  std::size_t steps = 0;
};

// Leapfrog evolution of  u_tt = u_rr + (2/r) u_r + S(t, r, u)  in v = r*u
// form on r in [0, cfg.r_max()], v(t,0) = v(t,r_max) = 0, dt = cfl*dr.
// The outer Dirichlet wall is causally disconnected from r <= R + t_max by
// the r_max() margin, so the boundary condition is exact, and a blowup
// sentinel (|u| > 1e6 * eps * data amplitude, or any non-finite value)
// throws NumericalError.
//
// full:      u(0) = eps*f, u_t(0) = eps*g, S = F(u) (or 0 when
//            cfg.nonlinear is false; the field is then tagged linear).
//            Data profiles are built from cfg.family.
// remainder: w := u - eps*u0 evolves from zero data with S = F(w + eps*u0);
//            the free field is evaluated analytically per step, so the
//            O(eps^p) remainder never suffers an O(eps) cancellation.
EvolveResult evolve_full(const RunConfig& cfg, double epsilon,
                         const EvolveOptions& opts = {});
EvolveResult evolve_remainder(const RunConfig& cfg, const HProfile& h,
                              double epsilon, const EvolveOptions& opts = {});

// One production leapfrog update on the v = r*u lattice:
//   vnext[j] = 2 vcur[j] - vprev[j] + dt^2 (v_rr + r * S(t, r_j, vcur_j/r_j))
// for interior j; endpoints stay pinned at zero.  Exposed so scheme-level
// properties (exact time symmetry, custom seeding) are testable against the
// same update the drivers run.
void leapfrog_step(std::span<const double> vprev, std::span<const double> vcur,
                   std::span<double> vnext, double dr, double dt, double t,
                   const std::function<double(double, double, double)>& S);

// Richardson order at one probe point from runs at dr, dr/2, dr/4; data
// profiles are resampled from cfg at each level.  Returns
// log2(|u_1 - u_2| / |u_2 - u_4|).  Throws AnalysisError when the
// differences sit at roundoff scale (probe in a vacuum region, say).
// kind full measures the u evolution, remainder the w evolution.
double convergence_order(const RunConfig& cfg, double epsilon, double probe_t,
                         double probe_r, FieldKind kind = FieldKind::full);

}  // namespace tailwave
