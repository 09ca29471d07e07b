#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "tailwave/config.hpp"
#include "tailwave/errors.hpp"
#include "tailwave/evolve.hpp"
#include "tailwave/linear.hpp"
#include "tailwave/model.hpp"

using namespace tailwave;

namespace {

RunConfig base_cfg(double dr = 0.04, double t_max = 10.0) {
  RunConfig cfg;  // p = 3, k = 1, extra_coeff = 0, bump4 velocity data
  cfg.epsilons = {1.0};
  cfg.dr = dr;
  cfg.cfl = 0.9;
  cfg.t_max = t_max;
  return cfg;
}

HProfile h_for(const RunConfig& cfg) {
  const DataProfiles d = make_data(cfg);
  return build_h(d.f, d.g);
}

// Max over the whole run of |u - eps*u0| against the analytic free field.
double linear_lattice_error(double dr, double eps) {
  RunConfig cfg = base_cfg(dr);
  cfg.nonlinear = false;
  const HProfile h = h_for(cfg);
  double worst = 0.0;
  EvolveOptions o;
  o.store_lattice = false;
  o.on_slice = [&](double t, std::span<const double> u) {
    for (std::size_t j = 0; j < u.size(); ++j)
      worst = std::max(worst, std::abs(u[j] - eps * u0_eval(h, t, j * dr)));
  };
  evolve_full(cfg, eps, o);
  return worst;
}

}  // namespace

TEST_CASE("linear evolution tracks the analytic free field at 2nd order") {
  const double e_coarse = linear_lattice_error(0.04, 1.0);
  CHECK(e_coarse < 2e-3);
  const double e_fine = linear_lattice_error(0.02, 1.0);
  const double order = std::log2(e_coarse / e_fine);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("numerical support grows at most one cell per step") {
  RunConfig cfg = base_cfg(0.04, 5.0);
  const double dt = cfg.dt();
  EvolveOptions o;
  o.store_lattice = false;
  bool clean = true;
  o.on_slice = [&](double t, std::span<const double> u) {
    const auto step = static_cast<std::size_t>(std::llround(t / dt));
    const double edge = cfg.support_radius + (static_cast<double>(step) + 0.5) * cfg.dr;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j * cfg.dr > edge && u[j] != 0.0) clean = false;
  };
  evolve_full(cfg, 0.5, o);
  CHECK(clean);
}

TEST_CASE("remainder + eps*u0 reproduces the full evolution") {
  const double eps = 0.1;
  RunConfig cfg = base_cfg(0.04, 10.0);
  const HProfile h = h_for(cfg);

  EvolveOptions o;  // store lattices: the grids are small here
  const EvolveResult full = evolve_full(cfg, eps, o);
  const EvolveResult rem = evolve_remainder(cfg, h, eps, o);
  REQUIRE(full.field.has_value());
  REQUIRE(rem.field.has_value());
  REQUIRE(full.field->nt == rem.field->nt);
  CHECK(rem.field->kind == FieldKind::remainder);

  RunConfig lin_cfg = cfg;
  lin_cfg.nonlinear = false;
  const EvolveResult lin = evolve_full(lin_cfg, eps, o);
  CHECK(lin.field->kind == FieldKind::linear);

  double err_lin = 0.0, err_cons = 0.0;
  const auto& f = *full.field;
  for (std::size_t i = 0; i < f.nt; ++i)
    for (std::size_t j = 0; j < f.nr; ++j) {
      const double t = i * f.dt, r = j * f.dr;
      const double free = eps * u0_eval(h, t, r);
      err_lin = std::max(err_lin, std::abs(lin.field->at(i, j) - free));
      err_cons = std::max(err_cons, std::abs(free + rem.field->at(i, j) - f.at(i, j)));
    }
  CHECK(err_lin > 0.0);
  CHECK(err_cons < 5.0 * err_lin);  // split run agrees to scheme error
}

TEST_CASE("remainder stays positive behind the light shell") {
  RunConfig cfg = base_cfg(0.04, 15.0);
  const HProfile h = h_for(cfg);
  double lowest = 1e300;
  EvolveOptions o;
  o.store_lattice = false;
  o.on_slice = [&](double t, std::span<const double> w) {
    if (t < 6.0) return;
    for (std::size_t j = 0; j < w.size(); ++j) {
      const double r = j * cfg.dr;
      const double tau = t - r;
      if (r >= 0.2 && tau > 2.0 && tau < 12.0) lowest = std::min(lowest, w[j]);
    }
  };
  evolve_remainder(cfg, h, 0.1, o);
  CHECK(lowest > 0.0);
  CHECK(lowest < 1e-6);  // it is a genuinely small tail, not junk
}

TEST_CASE("refinement ladder reports 2nd order at a lit probe") {
  RunConfig cfg = base_cfg(0.04, 10.0);
  cfg.support_radius = 2.0;  // keeps the probe inside the light shell
  cfg.nonlinear = false;
  const double order = convergence_order(cfg, 1.0, 2.0, 0.5, FieldKind::full);
  CHECK(order > 1.8);
  CHECK(order < 2.2);
}

TEST_CASE("refinement ladder covers the nonlinear field and the remainder") {
  RunConfig cfg = base_cfg(0.04, 20.0);
  // Full field probed inside the shell, nonlinearity on.
  const double o_full = convergence_order(cfg, 0.1, 2.0, 1.5, FieldKind::full);
  CHECK(o_full > 1.8);
  CHECK(o_full < 2.2);
  // The O(eps^p) remainder probed behind the shell.
  const double o_rem = convergence_order(cfg, 0.1, 4.0, 3.0, FieldKind::remainder);
  CHECK(o_rem > 1.7);
  CHECK(o_rem < 2.3);
}

TEST_CASE("refinement ladder refuses a vacuum probe") {
  RunConfig cfg = base_cfg(0.04, 10.0);
  cfg.nonlinear = false;
  // r = 4.5 at t = 2 is outside the light shell: all levels give zero.
  CHECK_THROWS_AS(convergence_order(cfg, 1.0, 2.0, 4.5, FieldKind::full), AnalysisError);
  CHECK_THROWS_AS(convergence_order(cfg, 1.0, -1.0, 1.0, FieldKind::full), ConfigError);
}

TEST_CASE("large data trips the blowup guard") {
  RunConfig cfg = base_cfg(0.04, 10.0);
  EvolveOptions o;
  o.store_lattice = false;
  CHECK_THROWS_AS(evolve_full(cfg, 20.0, o), NumericalError);
}

TEST_CASE("lattice decimation stores every k-th computed row unchanged") {
  RunConfig cfg = base_cfg(0.08, 3.0);
  EvolveOptions o1, o2;
  o2.keep_every = 2;
  const EvolveResult r1 = evolve_full(cfg, 0.5, o1);
  const EvolveResult r2 = evolve_full(cfg, 0.5, o2);
  REQUIRE(r1.field.has_value());
  REQUIRE(r2.field.has_value());
  CHECK(r2.field->dt == 2.0 * r1.field->dt);
  REQUIRE(r2.field->nt >= 2);
  for (std::size_t i = 0; i < r2.field->nt; ++i)
    for (std::size_t j = 0; j < r2.field->nr; ++j)
      CHECK(r2.field->at(i, j) == r1.field->at(2 * i, j));
}

TEST_CASE("worldlines and slice callbacks are never decimated") {
  RunConfig cfg = base_cfg(0.08, 2.0);
  std::size_t slices = 0;
  EvolveOptions o;
  o.keep_every = 4;
  o.store_lattice = false;
  o.probe_radii = {0.5, 1.5};
  o.track_norm_q = 2.0;
  double first_t = -1.0;
  o.on_slice = [&](double t, std::span<const double>) {
    if (slices == 0) first_t = t;
    ++slices;
  };
  const EvolveResult res = evolve_full(cfg, 0.5, o);
  CHECK_FALSE(res.field.has_value());
  CHECK(slices == res.steps + 1);  // one slice per step plus the initial row
  CHECK(first_t == 0.0);
  REQUIRE(res.worldlines.size() == 2);
  CHECK(res.worldlines[0].r == 0.5);
  CHECK(res.worldlines[0].t.size() == res.steps + 1);
  CHECK(res.weighted_max > 0.0);
}

TEST_CASE("zero amplitude data evolves to the zero field") {
  RunConfig cfg = base_cfg(0.08, 2.0);
  const EvolveResult res = evolve_full(cfg, 0.0, {});
  REQUIRE(res.field.has_value());
  for (double v : res.field->values) CHECK(v == 0.0);
}

TEST_CASE("single leapfrog update is exactly time reversible") {
  const std::size_t n = 41;
  const double dr = 0.05, dt = 0.04;
  std::vector<double> vprev(n), vcur(n), vnext(n), back(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double r = j * dr;
    vprev[j] = std::sin(3.0 * r) * r;
    vcur[j] = std::sin(3.0 * (r - dt)) * r;
  }
  vprev.front() = vcur.front() = vprev.back() = vcur.back() = 0.0;
  const auto S = [](double, double r, double u) { return 0.3 * u * u * u + 0.1 * r; };
  leapfrog_step(vprev, vcur, vnext, dr, dt, 1.0, S);
  leapfrog_step(vnext, vcur, back, dr, dt, 1.0, S);
  for (std::size_t j = 0; j < n; ++j)
    CHECK(std::abs(back[j] - vprev[j]) < 1e-13);
  CHECK(vnext.front() == 0.0);
  CHECK(vnext.back() == 0.0);
}

TEST_CASE("leapfrog update rejects malformed slices") {
  std::vector<double> a(5), b(5), c(4), tiny(2);
  const auto S = [](double, double, double) { return 0.0; };
  CHECK_THROWS_AS(leapfrog_step(a, b, c, 0.1, 0.09, 0.0, S), ConfigError);
  CHECK_THROWS_AS(leapfrog_step(tiny, tiny, tiny, 0.1, 0.09, 0.0, S), ConfigError);
  std::vector<double> d(5);
  CHECK_THROWS_AS(leapfrog_step(a, b, d, -0.1, 0.09, 0.0, S), ConfigError);
  CHECK_THROWS_AS(leapfrog_step(a, b, d, 0.1, 0.0, 0.0, S), ConfigError);
}

TEST_CASE("lattice sampling is bilinear and bounds-checked") {
  Field2D f;
  f.dr = 0.5;
  f.dt = 0.25;
  f.nt = 3;
  f.nr = 4;
  f.values.resize(f.nt * f.nr);
  for (std::size_t i = 0; i < f.nt; ++i)
    for (std::size_t j = 0; j < f.nr; ++j)
      f.values[i * f.nr + j] = 2.0 + 3.0 * (i * f.dt) - 1.5 * (j * f.dr);
  CHECK(f.sample(0.3, 0.7) == doctest::Approx(2.0 + 0.9 - 1.05).epsilon(1e-14));
  CHECK(f.sample(0.25, 1.0) == f.at(1, 2));
  CHECK(f.sample(f.t_last(), f.r_last()) == f.at(2, 3));
  CHECK_THROWS_AS(f.sample(-0.01, 0.5), AnalysisError);
  CHECK_THROWS_AS(f.sample(0.1, 1.6), AnalysisError);
}

TEST_CASE("worldline interpolation is cubic and bounds-checked") {
  Worldline line;
  line.r = 1.0;
  auto poly = [](double t) { return 1.0 + t - 2.0 * t * t + 0.5 * t * t * t; };
  for (int i = 0; i <= 20; ++i) {
    line.t.push_back(0.1 * i);
    line.u.push_back(poly(0.1 * i));
  }
  CHECK(line.at_time(0.537) == doctest::Approx(poly(0.537)).epsilon(1e-12));
  CHECK(line.at_time(1.95) == doctest::Approx(poly(1.95)).epsilon(1e-12));
  CHECK(line.at_time(0.0) == poly(0.0));
  CHECK_THROWS_AS(line.at_time(-0.1), AnalysisError);
  CHECK_THROWS_AS(line.at_time(2.3), AnalysisError);
}
