#include "tailwave/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "tailwave/errors.hpp"
#include "tailwave/interp.hpp"

namespace tailwave {

double Field2D::sample(double t, double r) const {
  if (nt == 0 || nr == 0) throw AnalysisError("Field2D::sample: empty field");
  const double si = t / dt, sj = r / dr;
  if (si < -1e-9 || si > static_cast<double>(nt - 1) + 1e-9 ||
      sj < -1e-9 || sj > static_cast<double>(nr - 1) + 1e-9)
    throw AnalysisError("Field2D::sample: point outside the lattice");
  const auto i0 = static_cast<std::size_t>(std::clamp<double>(std::floor(si), 0.0, static_cast<double>(nt - 2)));
  const auto j0 = static_cast<std::size_t>(std::clamp<double>(std::floor(sj), 0.0, static_cast<double>(nr - 2)));
  const double a = si - static_cast<double>(i0), b = sj - static_cast<double>(j0);
  return (1 - a) * ((1 - b) * at(i0, j0) + b * at(i0, j0 + 1)) +
         a * ((1 - b) * at(i0 + 1, j0) + b * at(i0 + 1, j0 + 1));
}

double Worldline::at_time(double time) const {
  if (t.size() < 2) throw AnalysisError("Worldline::at_time: too few samples");
  const double dt = t[1] - t[0];
  if (time < t.front() - 1e-9 * dt || time > t.back() + 1e-9 * dt)
    throw AnalysisError("Worldline::at_time: time outside the recorded span");
  return cubic_interp(u, t.front(), dt, time);
}

namespace {

// Cubic Lagrange restriction weights for one off-grid radius.
struct ProbeStencil {
  std::size_t base = 0;
  double w[4] = {0, 0, 0, 0};
};

ProbeStencil make_stencil(double r, double dr, std::size_t n_nodes) {
  const double s = r / dr;
  long base = static_cast<long>(std::floor(s)) - 1;
  base = std::clamp(base, 0L, static_cast<long>(n_nodes) - 4);
  const double x = s - static_cast<double>(base);
  ProbeStencil st;
  st.base = static_cast<std::size_t>(base);
  st.w[0] = -(x - 1) * (x - 2) * (x - 3) / 6.0;
  st.w[1] = x * (x - 2) * (x - 3) / 2.0;
  st.w[2] = -x * (x - 1) * (x - 3) / 2.0;
  st.w[3] = x * (x - 1) * (x - 2) / 6.0;
  return st;
}

// The one leapfrog update everything in this module runs.
template <class Source>
inline void advance_row(std::span<const double> vprev, std::span<const double> vcur,
                        std::span<double> vnext, double dr, double dt, double t,
                        const Source& S) {
  const std::size_t n = vcur.size() - 1;
  const double inv_dr2 = 1.0 / (dr * dr);
  vnext[0] = 0.0;
  vnext[n] = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    const double r = static_cast<double>(j) * dr;
    const double lap = (vcur[j + 1] - 2.0 * vcur[j] + vcur[j - 1]) * inv_dr2;
    const double s = S(t, r, vcur[j] / r);
    vnext[j] = 2.0 * vcur[j] - vprev[j] + dt * dt * (lap + r * s);
  }
}

// Source policies: plain nonlinearity for the full field, shifted
// nonlinearity F(w + eps*u0) for the remainder.  Kept as value types so the
// hot loop inlines them.
struct FullSource {
  Nonlinearity F;
  bool active;
  double operator()(double, double, double u) const { return active ? F(u) : 0.0; }
};

struct RemainderSource {
  Nonlinearity F;
  const HProfile* h;
  double eps;
  double operator()(double t, double r, double w) const {
    // Free field is zero outside |t-r| < R unless still inside the data ball.
    double u0 = 0.0;
    const double R = h->support_radius;
    if (std::abs(t - r) < R || t + r < R) u0 = u0_eval(*h, t, r);
    return F(w + eps * u0);
  }
};

template <class Source>
EvolveResult run_leapfrog(const RunConfig& cfg, double eps, FieldKind kind,
                          const DataProfiles* data, const Source& source,
                          double blowup_scale, const EvolveOptions& opts) {
  const double dr = cfg.dr;
  const double dt = cfg.dt();
  const std::size_t n = cfg.n_cells();
  const std::size_t nsteps = cfg.n_steps();
  const int keep = std::max(1, opts.keep_every);

  // Node j <-> r = j*dr, j = 0..n; v = r*u with v[0] = v[n] = 0 pinned.
  std::vector<double> r(n + 1), inv_r(n + 1, 0.0);
  for (std::size_t j = 0; j <= n; ++j) r[j] = static_cast<double>(j) * dr;
  for (std::size_t j = 1; j <= n; ++j) inv_r[j] = 1.0 / r[j];

  std::vector<double> vprev(n + 1, 0.0), vcur(n + 1, 0.0), vnext(n + 1, 0.0);
  std::vector<double> u_row(n + 1, 0.0);

  // Data samples cover [0, R] only; beyond that both f and g vanish.
  auto data_at = [&](const RadialProfile& prof, std::size_t j) -> double {
    return j < prof.samples.size() ? prof.samples[j] : 0.0;
  };
  if (kind != FieldKind::remainder) {
    for (std::size_t j = 1; j < n; ++j) vprev[j] = eps * r[j] * data_at(data->f, j);
  }

  EvolveResult result;
  result.steps = nsteps;

  const std::size_t rows = nsteps / static_cast<std::size_t>(keep) + 1;
  if (opts.store_lattice) {
    Field2D f;
    f.kind = kind;
    f.epsilon = eps;
    f.dr = dr;
    f.dt = dt * keep;
    f.nt = rows;
    f.nr = n + 1;
    f.values.assign(rows * (n + 1), 0.0);
    result.field = std::move(f);
  }

  std::vector<ProbeStencil> stencils;
  for (double pr : opts.probe_radii) {
    if (!(pr >= 0.0) || pr > r[n] - 2.0 * dr)
      throw ConfigError("probe radius outside the grid");
    stencils.push_back(make_stencil(pr, dr, n + 1));
    Worldline line;
    line.r = pr;
    line.t.reserve(nsteps + 1);
    line.u.reserve(nsteps + 1);
    result.worldlines.push_back(std::move(line));
  }

  const double q = opts.track_norm_q.value_or(0.0);
  std::size_t stored_rows = 0;

  auto record = [&](std::size_t step, double t) {
    if (opts.store_lattice && step % static_cast<std::size_t>(keep) == 0) {
      std::copy(u_row.begin(), u_row.end(),
                result.field->values.begin() + static_cast<std::ptrdiff_t>(stored_rows * (n + 1)));
      ++stored_rows;
    }
    for (std::size_t p = 0; p < stencils.size(); ++p) {
      const auto& st = stencils[p];
      result.worldlines[p].t.push_back(t);
      result.worldlines[p].u.push_back(st.w[0] * u_row[st.base] + st.w[1] * u_row[st.base + 1] +
                                       st.w[2] * u_row[st.base + 2] + st.w[3] * u_row[st.base + 3]);
    }
    if (opts.track_norm_q) {
      double m = 0.0;
      for (std::size_t j = 0; j <= n; ++j) {
        const double w = (1.0 + t + r[j]) * std::pow(1.0 + std::abs(t - r[j]), q - 1.0);
        m = std::max(m, w * std::abs(u_row[j]));
      }
      result.weighted_max = std::max(result.weighted_max, m);
    }
    if (opts.on_slice) opts.on_slice(t, std::span<const double>(u_row));
  };

  auto build_u_row = [&](const std::vector<double>& v, std::size_t step, double t) {
    double amax = 0.0;
    for (std::size_t j = 1; j <= n; ++j) {
      u_row[j] = v[j] * inv_r[j];
      amax = std::max(amax, std::abs(u_row[j]));
    }
    // Parabolic extrapolation through the first three interior nodes.
    u_row[0] = 3.0 * u_row[1] - 3.0 * u_row[2] + u_row[3];
    amax = std::max(amax, std::abs(u_row[0]));
    if (!std::isfinite(amax))
      throw NumericalError("evolve: non-finite field value at step " +
                           std::to_string(step) + " (t = " + std::to_string(t) + ")");
    if (blowup_scale > 0.0 && amax > blowup_scale)
      throw NumericalError("evolve: blowup sentinel (|u| > 1e6 * eps * data amplitude) at step " +
                           std::to_string(step) + " (t = " + std::to_string(t) + ")");
  };

  // Slice 0.
  build_u_row(vprev, 0, 0.0);
  record(0, 0.0);

  // First step by Taylor expansion: v1 = v0 + dt*v0_t + dt^2/2 (v0_rr + r S).
  const double inv_dr2 = 1.0 / (dr * dr);
  for (std::size_t j = 1; j < n; ++j) {
    const double lap = (vprev[j + 1] - 2.0 * vprev[j] + vprev[j - 1]) * inv_dr2;
    const double vdot0 = kind != FieldKind::remainder ? eps * r[j] * data_at(data->g, j) : 0.0;
    const double s = source(0.0, r[j], u_row[j]);
    vcur[j] = vprev[j] + dt * vdot0 + 0.5 * dt * dt * (lap + r[j] * s);
  }

  for (std::size_t step = 1; step <= nsteps; ++step) {
    const double t = static_cast<double>(step) * dt;
    build_u_row(vcur, step, t);
    record(step, t);
    if (step == nsteps) break;

    advance_row(vprev, vcur, vnext, dr, dt, t, source);
    vprev.swap(vcur);
    vcur.swap(vnext);
  }

  if (opts.store_lattice) result.field->nt = stored_rows;
  return result;
}

}  // namespace

void leapfrog_step(std::span<const double> vprev, std::span<const double> vcur,
                   std::span<double> vnext, double dr, double dt, double t,
                   const std::function<double(double, double, double)>& S) {
  if (vprev.size() != vcur.size() || vcur.size() != vnext.size() || vcur.size() < 3)
    throw ConfigError("leapfrog_step: slices must share a size >= 3");
  if (!(dr > 0.0) || !(dt > 0.0)) throw ConfigError("leapfrog_step: need dr, dt > 0");
  advance_row(vprev, vcur, vnext, dr, dt, t, S);
}

EvolveResult evolve_full(const RunConfig& cfg, double epsilon,
                         const EvolveOptions& opts) {
  cfg.validate();
  if (!(epsilon >= 0.0)) throw ConfigError("evolve_full: epsilon must be >= 0");
  const DataProfiles data = make_data(cfg);
  const double amp = std::max(data.f.grid_max(), data.g.grid_max());
  FullSource src{Nonlinearity(cfg.nl), cfg.nonlinear};
  return run_leapfrog(cfg, epsilon,
                      cfg.nonlinear ? FieldKind::full : FieldKind::linear, &data,
                      src, 1e6 * epsilon * amp, opts);
}

EvolveResult evolve_remainder(const RunConfig& cfg, const HProfile& h,
                              double epsilon, const EvolveOptions& opts) {
  cfg.validate();
  if (!(epsilon >= 0.0)) throw ConfigError("evolve_remainder: epsilon must be >= 0");
  // The remainder obeys the full field's scale bound: |w| <= |u| + eps|u0|,
  // and sup|u0| <= 2 sup|h'| by the mean value theorem on [h(t-r)-h(t+r)]/r.
  double h_scale = 0.0;
  for (double v : h.h_prime) h_scale = std::max(h_scale, std::abs(v));
  RemainderSource src{Nonlinearity(cfg.nl), &h, epsilon};
  return run_leapfrog(cfg, epsilon, FieldKind::remainder, nullptr, src,
                      1e6 * epsilon * 2.0 * h_scale, opts);
}

double convergence_order(const RunConfig& cfg, double epsilon, double probe_t,
                         double probe_r, FieldKind kind) {
  cfg.validate();
  if (!(probe_t > 0.0) || probe_t > cfg.t_max)
    throw ConfigError("convergence probe time outside (0, t_max]");

  double vals[3];
  RunConfig c = cfg;
  c.t_max = std::min(cfg.t_max, probe_t + 8.0 * cfg.dt());
  for (int level = 0; level < 3; ++level) {
    c.dr = cfg.dr / static_cast<double>(1 << level);
    if (!(probe_r >= 0.0) || probe_r > c.r_max() - 2.0 * c.dr)
      throw ConfigError("convergence probe radius outside the grid");
    EvolveOptions o;
    o.store_lattice = false;
    o.probe_radii = {probe_r};
    EvolveResult res;
    if (kind == FieldKind::remainder) {
      const DataProfiles d = make_data(c);
      const HProfile h = build_h(d.f, d.g);
      res = evolve_remainder(c, h, epsilon, o);
    } else {
      res = evolve_full(c, epsilon, o);
    }
    vals[level] = res.worldlines[0].at_time(probe_t);
  }

  const double num = std::abs(vals[0] - vals[1]);
  const double den = std::abs(vals[1] - vals[2]);
  const double scale = std::max({std::abs(vals[0]), std::abs(vals[1]), std::abs(vals[2])});
  const double floor = 1e-12 * scale + 1e-300;
  if (den <= floor || num <= floor)
    throw AnalysisError("convergence_order: refinement differences at roundoff scale");
  return std::log2(num / den);
}

}  // namespace tailwave
