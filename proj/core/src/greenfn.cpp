#include "tailwave/greenfn.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailwave/errors.hpp"

namespace tailwave {

namespace {

constexpr double kSigmaCut = 8.0;  // Gaussian shells truncate at 8 sigma

inline double causal_weight(double t, double r, double q) {
  return (1.0 + t + r) * std::pow(1.0 + std::abs(t - r), q - 1.0);
}

// Clip raw support intervals to the backward cone window, sort, merge.
void normalise_intervals(std::vector<Interval>& iv, double lo, double hi) {
  std::size_t keep = 0;
  for (auto& seg : iv) {
    Interval c{std::max(seg.lo, lo), std::min(seg.hi, hi)};
    if (!c.empty()) iv[keep++] = c;
  }
  iv.resize(keep);
  std::sort(iv.begin(), iv.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < iv.size(); ++i) {
    if (out > 0 && iv[i].lo <= iv[out - 1].hi) {
      iv[out - 1].hi = std::max(iv[out - 1].hi, iv[i].hi);
    } else {
      iv[out++] = iv[i];
    }
  }
  iv.resize(out);
}

}  // namespace

double duhamel_apply(const SpaceTimeSource& src, double t, double r,
                     const DuhamelOptions& opt) {
  if (!src.value) throw ConfigError("duhamel_apply: source has no value function");
  if (!(r > 0.0)) throw ConfigError("duhamel_apply: need r > 0");
  if (!(opt.ds > 0.0) || !(opt.drho > 0.0))
    throw ConfigError("duhamel_apply: step ceilings must be positive");
  if (!(t > 0.0)) return 0.0;

  const double s_lo = std::max(0.0, src.s_support.lo);
  const double s_hi = std::min(t, src.s_support.hi);
  if (!(s_hi > s_lo)) return 0.0;

  auto even_count = [](double span, double ceil_step) {
    auto n = static_cast<std::size_t>(std::ceil(span / ceil_step - 1e-12));
    n = std::max<std::size_t>(n, 2);
    return n % 2 == 0 ? n : n + 1;
  };

  std::vector<Interval> segs;
  auto inner = [&](double s) -> double {
    const double w_lo = std::abs(r - (t - s));
    const double w_hi = r + (t - s);
    if (!(w_hi > w_lo)) return 0.0;
    segs.clear();
    if (src.rho_support) {
      src.rho_support(s, segs);
    } else {
      segs.push_back({w_lo, w_hi});
    }
    normalise_intervals(segs, w_lo, w_hi);

    double acc = 0.0;
    for (const auto& seg : segs) {
      const std::size_t m = even_count(seg.hi - seg.lo, opt.drho);
      const double hr = (seg.hi - seg.lo) / static_cast<double>(m);
      double sum = 0.0;
      for (std::size_t j = 0; j <= m; ++j) {
        const double rho = seg.lo + static_cast<double>(j) * hr;
        const double c = (j == 0 || j == m) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        sum += c * rho * src.value(s, rho);
      }
      acc += sum * hr / 3.0;
    }
    return acc;
  };

  const std::size_t ns = even_count(s_hi - s_lo, opt.ds);
  const double hs = (s_hi - s_lo) / static_cast<double>(ns);
  double total = 0.0;
  for (std::size_t i = 0; i <= ns; ++i) {
    const double c = (i == 0 || i == ns) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    total += c * inner(s_lo + static_cast<double>(i) * hs);
  }
  return total * hs / 3.0 / (2.0 * r);
}

SpaceTimeSource make_source(const ShellSource& shell) {
  if (!(shell.sigma > 0.0)) throw ConfigError("shell source: sigma must be positive");
  if (!std::isfinite(shell.strength)) throw ConfigError("shell source: strength must be finite");
  const double sigma = shell.sigma;
  const double p = shell.p;
  const double strength = shell.strength;
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::acos(-1.0)));

  SpaceTimeSource src;
  src.value = [=](double s, double rho) {
    if (rho < sigma) return 0.0;  // 1/rho^p cutoff keeps the origin regular
    const double x = (s - rho) / sigma;
    if (std::abs(x) > kSigmaCut) return 0.0;
    return strength * norm * std::exp(-0.5 * x * x) / std::pow(rho, p);
  };
  src.rho_support = [=](double s, std::vector<Interval>& out) {
    out.push_back({std::max(sigma, s - kSigmaCut * sigma), s + kSigmaCut * sigma});
  };
  return src;
}

SpaceTimeSource scaled_power_source(const HProfile& h, double p,
                                    double epsilon, double a) {
  if (!(epsilon > 0.0)) throw ConfigError("scaled_power_source: epsilon must be positive");
  if (!(a > 0.0)) throw ConfigError("scaled_power_source: a must be positive");
  const double l = std::pow(epsilon, -a);  // frame stretch
  const double band = h.support_radius / l;
  const HProfile* hp = &h;

  SpaceTimeSource src;
  // eps^{-a} pow_s(h(l(s-rho)) - h(l(s+rho)), p) / rho^p
  //   == l * pow_s(l * u0(l s, l rho), p); u0_eval supplies the
  // rho -> 0 limit, so the integrand stays finite on the axis.
  src.value = [=](double s, double rho) {
    return l * pow_s(l * u0_eval(*hp, l * s, l * rho), p);
  };
  src.rho_support = [=](double s, std::vector<Interval>& out) {
    out.push_back({s - band, s + band});   // |s - rho| < band
    out.push_back({0.0, band - s});        // s + rho < band (empty once s >= band)
  };
  return src;
}

double W_eval(const AsymptoticModel& m, double t, double r, double origin_cut) {
  if (!(t > r) || !(t > 0.0)) return 0.0;
  const double e = m.p - 2.0;
  if (r < origin_cut) return 2.0 * (m.p - 2.0) * m.A_p * std::pow(t, -(m.p - 1.0));
  return m.A_p / r * (std::pow(t - r, -e) - std::pow(t + r, -e));
}

double phi_p_eval(double h_value, double p, double t, double r) {
  if (!(t > r)) return 0.0;
  const double e = p - 2.0;
  return pow_s(h_value, p) / (p - 2.0) * (std::pow(t - r, -e) - std::pow(t + r, -e));
}

bool near_cone(double t, double r, double guard) {
  return std::abs(t - r) < guard;
}

double shell_deficit_at(const AsymptoticModel& m, const HProfile& h,
                        double epsilon, double t, double r,
                        const DuhamelOptions& opt) {
  if (!(t - r > 1.0))
    throw ConfigError("shell_deficit: probes must satisfy t - r > 1");
  const SpaceTimeSource src = scaled_power_source(h, m.p, epsilon, m.a);
  const double v = duhamel_apply(src, t, r, opt);
  return causal_weight(t, r, m.p) * std::abs(v - W_eval(m, t, r));
}

double shell_deficit(const AsymptoticModel& m, const HProfile& h,
                     double epsilon,
                     std::span<const std::array<double, 2>> probes) {
  if (probes.empty()) throw ConfigError("shell_deficit: need at least one probe");
  const double band = std::pow(epsilon, m.a) * h.support_radius;
  DuhamelOptions opt;
  opt.ds = opt.drho = band / 16.0;
  double worst = 0.0;
  for (const auto& pr : probes) {
    worst = std::max(worst, shell_deficit_at(m, h, epsilon, pr[0], pr[1], opt));
  }
  return worst;
}

}  // namespace tailwave
