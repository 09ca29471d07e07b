#include "tailwave/model.hpp"

#include <algorithm>
#include <cmath>

#include "tailwave/errors.hpp"
#include "tailwave/interp.hpp"
#include "tailwave/quadrature.hpp"

namespace tailwave {

namespace {

constexpr double kCriticalP = 2.414213562373095;  // 1 + sqrt(2)

// Small integer exponent eligible for the multiply-only path, else 0.
int small_int_exponent(double q) {
  const double r = std::round(q);
  if (std::abs(q - r) > 0.0) return 0;
  const int n = static_cast<int>(r);
  return (n >= 1 && n <= 12) ? n : 0;
}

}  // namespace

double pow_s(double u, double q) {
  if (u == 0.0) return 0.0;
  const double mag = std::pow(std::abs(u), q);
  return u < 0.0 ? -mag : mag;
}

void NonlinearityParams::validate() const {
  if (!std::isfinite(p) || p <= kCriticalP)
    throw ConfigError("nonlinearity power p must exceed 1 + sqrt(2)");
  if (!std::isfinite(k) || k <= 0.0)
    throw ConfigError("nonlinearity gap k must be positive");
  if (!std::isfinite(extra_coeff))
    throw ConfigError("extra_coeff must be finite");
}

Nonlinearity::Nonlinearity(const NonlinearityParams& params)
    : params_(params), p_(params.p), k_(params.k), coeff_(params.extra_coeff) {
  params.validate();
  ipow_ = small_int_exponent(p_);
  ipow_sub_ = small_int_exponent(p_ + k_);
}

double RadialProfile::value(double r) const {
  const double rr = std::abs(r);  // even extension
  if (rr >= support_radius || samples.empty()) return 0.0;
  return cubic_interp(samples, 0.0, dr, rr);
}

double RadialProfile::grid_max() const {
  double m = 0.0;
  for (double v : samples) m = std::max(m, std::abs(v));
  return m;
}

RadialProfile make_profile(std::string_view family, double amplitude,
                           double support_radius, double dr) {
  if (!(support_radius > 0.0) || !std::isfinite(support_radius))
    throw ConfigError("profile support radius must be positive");
  if (!(dr > 0.0) || dr > support_radius)
    throw ConfigError("profile grid spacing must satisfy 0 < dr <= R");
  if (!std::isfinite(amplitude))
    throw ConfigError("profile amplitude must be finite");

  RadialProfile out;
  out.dr = dr;
  out.support_radius = support_radius;
  // Node count covers [0, R]; the last node sits at or just past R and by
  // construction samples to exact zero there.
  const auto n_cells = static_cast<std::size_t>(std::ceil(support_radius / dr - 1e-9));
  out.samples.assign(n_cells + 1, 0.0);

  if (family == "zero") {
    out.smoothness_class = 1000;  // infinitely smooth for all practical use
    return out;
  }
  if (family == "bump4") {
    out.smoothness_class = 3;  // (1 - s^2)^4 has a C^3 edge
    for (std::size_t j = 0; j <= n_cells; ++j) {
      const double s = static_cast<double>(j) * dr / support_radius;
      if (s < 1.0) {
        const double q = 1.0 - s * s;
        out.samples[j] = amplitude * q * q * q * q;
      }
    }
    return out;
  }
  throw ConfigError("unknown profile family: " + std::string(family));
}

DataNorms data_norms(const RadialProfile& f, const RadialProfile& g, double p) {
  if (f.samples.size() != g.samples.size() || f.dr != g.dr)
    throw ConfigError("data_norms: f and g must share one sample grid");
  if (!(p > 1.0)) throw ConfigError("data_norms: need p > 1");
  if (f.samples.size() < 2) throw ConfigError("data_norms: need at least 2 samples");

  const std::size_t n = f.samples.size();
  const auto& fs = f.samples;
  auto fprime = [&](std::size_t j) {  // centered, one-sided at the ends
    if (j == 0) return (fs[1] - fs[0]) / f.dr;
    if (j == n - 1) return (fs[n - 1] - fs[n - 2]) / f.dr;
    return (fs[j + 1] - fs[j - 1]) / (2.0 * f.dr);
  };
  DataNorms out;
  for (std::size_t j = 0; j < n; ++j) {
    const double r = static_cast<double>(j) * f.dr;
    const double wlo = std::pow(1.0 + r, p - 1.0);
    const double whi = wlo * (1.0 + r);
    out.f0 = std::max(out.f0, wlo * std::abs(fs[j]));
    out.f1 = std::max(out.f1, whi * std::abs(fprime(j)));
    out.g0 = std::max(out.g0, whi * std::abs(g.samples[j]));
  }
  return out;
}

}  // namespace tailwave
