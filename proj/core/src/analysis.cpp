#include "tailwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

struct LineFit {
  double slope = 0, intercept = 0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det <= 0.0) throw AnalysisError("least squares: degenerate abscissae");
  return {(n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det};
}

}  // namespace

double weight(double t, double r, double q) {
  return (1.0 + t + r) * std::pow(1.0 + std::abs(t - r), q - 1.0);
}

double weighted_norm(const Field2D& field, double q, const Region& region) {
  double best = -1.0;
  for (std::size_t i = 0; i < field.nt; ++i) {
    const double t = static_cast<double>(i) * field.dt;
    for (std::size_t j = 0; j < field.nr; ++j) {
      const double r = static_cast<double>(j) * field.dr;
      if (!region.contains(t, r)) continue;
      best = std::max(best, weight(t, r, q) * std::abs(field.at(i, j)));
    }
  }
  if (best < 0.0) throw AnalysisError("weighted_norm: region contains no lattice point");
  return best;
}

ScanGrid make_cone_scan(double tau_lo, double tau_hi, double sigma_hi,
                        std::size_t n_tau, std::size_t n_sigma) {
  if (!(tau_hi >= tau_lo) || !(sigma_hi >= tau_lo))
    throw ConfigError("make_cone_scan: need tau_lo <= tau_hi <= sigma_hi");
  if (n_tau < 2 || n_sigma < 2) throw ConfigError("make_cone_scan: need >= 2 nodes per axis");
  ScanGrid g;
  g.tau.resize(n_tau);
  g.sigma.resize(n_sigma);
  for (std::size_t i = 0; i < n_tau; ++i)
    g.tau[i] = tau_lo + (tau_hi - tau_lo) * static_cast<double>(i) / static_cast<double>(n_tau - 1);
  for (std::size_t j = 0; j < n_sigma; ++j)
    g.sigma[j] = tau_lo + (sigma_hi - tau_lo) * static_cast<double>(j) / static_cast<double>(n_sigma - 1);
  return g;
}

double weighted_norm_scan(const std::function<double(double, double)>& u,
                          double q, const ScanGrid& grid) {
  if (!u) throw ConfigError("weighted_norm_scan: empty function");
  if (grid.tau.empty() || grid.sigma.empty())
    throw ConfigError("weighted_norm_scan: empty grid");
  double best = 0.0;
  for (double tau : grid.tau) {
    // The r = 0 axis point sigma = tau is always probed, so sups that sit on
    // the axis do not drift as the sigma grid refines.
    best = std::max(best, weight(tau, 0.0, q) * std::abs(u(tau, 0.0)));
    for (double sigma : grid.sigma) {
      if (sigma <= tau) continue;
      const double t = 0.5 * (sigma + tau);
      const double r = 0.5 * (sigma - tau);
      best = std::max(best, weight(t, r, q) * std::abs(u(t, r)));
    }
  }
  return best;
}

NormReport norm_report(const std::function<double(double, double)>& u,
                       double q, double sigma_hi, std::size_t n_slabs,
                       double growth_gate) {
  if (!(sigma_hi > 2.0)) throw ConfigError("norm_report: need sigma_hi > 2");
  NormReport rep;
  rep.q = q;
  const double tau_hi = std::min(20.0, sigma_hi);
  rep.restricted_norm =
      weighted_norm_scan(u, q, make_cone_scan(1.0, tau_hi, sigma_hi, 201, 201));
  bool growing = true;
  double prev = 0.0;
  for (std::size_t m = 1; m <= n_slabs; ++m) {
    const double lo = std::pow(2.0, -static_cast<double>(m));
    const std::size_t n_tau = 32 * (std::size_t{1} << m) + 1;  // keep d tau ~ lo/32
    const double val =
        weighted_norm_scan(u, q, make_cone_scan(lo, 1.0, sigma_hi, n_tau, 201));
    rep.slab_norms.push_back(val);
    if (m > 1 && !(val >= growth_gate * prev)) growing = false;
    prev = val;
  }
  rep.full_unbounded = growing && n_slabs >= 2;
  return rep;
}

std::vector<double> rescaled_remainder(const Field2D& w, double epsilon,
                                       double a, double p,
                                       std::span<const std::array<double, 2>> probes) {
  if (!(epsilon > 0.0)) throw ConfigError("rescaled_remainder: epsilon must be positive");
  if (w.kind != FieldKind::remainder)
    throw ConfigError("rescaled_remainder: field must hold the remainder w");
  const double l = std::pow(epsilon, -a);
  const double b = p + a * (p - 1.0);
  const double scale = std::pow(epsilon, -b);
  std::vector<double> out;
  out.reserve(probes.size());
  for (const auto& pr : probes) {
    out.push_back(scale * w.sample(l * pr[0], l * pr[1]));
  }
  return out;
}

TailFit tail_fit(std::span<const double> t, std::span<const double> u,
                 double t_lo, double t_hi) {
  if (t.size() != u.size()) throw ConfigError("tail_fit: length mismatch");
  if (!(t_hi > t_lo) || !(t_lo > 0.0))
    throw ConfigError("tail_fit: need 0 < t_lo < t_hi");
  std::vector<double> lx, ly;
  int sign = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t_lo || t[i] > t_hi) continue;
    if (u[i] == 0.0) throw AnalysisError("tail_fit: zero sample inside the fit window");
    const int s = u[i] > 0.0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw AnalysisError("tail_fit: sign change inside the fit window");
    lx.push_back(std::log(t[i]));
    ly.push_back(std::log(std::abs(u[i])));
  }
  if (lx.size() < 8) throw AnalysisError("tail_fit: fewer than 8 samples in the fit window");

  const LineFit fit = least_squares(lx, ly);
  TailFit out;
  out.exponent = -fit.slope;
  out.amplitude = static_cast<double>(sign) * std::exp(fit.intercept);
  out.t_lo = t_lo;
  out.t_hi = t_hi;
  out.n_samples = lx.size();
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double model = fit.intercept + fit.slope * lx[i];
    out.max_rel_residual = std::max(out.max_rel_residual,
                                    std::abs(std::expm1(ly[i] - model)));
  }
  return out;
}

TailFit fit_worldline_tail(const Worldline& line, const AsymptoticModel& m,
                           double t_lo, double t_hi) {
  if (m.degenerate_tail())
    throw AnalysisError(
        "fit_worldline_tail: C_p vanishes for this data, the leading tail is "
        "absent and a power-law fit against it is meaningless");
  return tail_fit(line.t, line.u, t_lo, t_hi);
}

double scaling_fit(std::span<const double> eps, std::span<const double> values) {
  if (eps.size() != values.size()) throw ConfigError("scaling_fit: length mismatch");
  if (eps.size() < 3) throw AnalysisError("scaling_fit: need at least 3 epsilon values");
  double emin = eps[0], emax = eps[0];
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] > 0.0)) throw AnalysisError("scaling_fit: epsilon values must be positive");
    if (!(values[i] > 0.0))
      throw AnalysisError("scaling_fit: values must be positive (degenerate quantity)");
    emin = std::min(emin, eps[i]);
    emax = std::max(emax, eps[i]);
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(values[i]));
  }
  if (!(emax / emin >= 4.0))
    throw AnalysisError("scaling_fit: epsilon values must span a factor >= 4");
  return least_squares(lx, ly).slope;
}

}  // namespace tailwave
