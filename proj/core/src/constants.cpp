#include "tailwave/constants.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "tailwave/errors.hpp"
#include "tailwave/quadrature.hpp"

namespace tailwave {

bool AsymptoticModel::degenerate_tail() const { return std::abs(C_p) < 1e-10; }

double moment_Ck(const HProfile& h, double q) {
  if (!(q >= 1.0)) throw ConfigError("moment_Ck: need q >= 1");
  if (h.size() < 3) throw ConfigError("moment_Ck: h grid too small");
  std::vector<double> integrand(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) integrand[i] = pow_s(h.h[i], q);
  return simpson(integrand, h.dx);
}

double moment_Cki(const HProfile& h, double q, int i) {
  if (!(q >= 1.0)) throw ConfigError("moment_Cki: need q >= 1");
  if (i < 0) throw ConfigError("moment_Cki: need i >= 0");
  if (h.size() < 3) throw ConfigError("moment_Cki: h grid too small");
  std::vector<double> integrand(h.size());
  for (std::size_t n = 0; n < h.size(); ++n) {
    const double x = h.x0() + static_cast<double>(n) * h.dx;
    integrand[n] = std::pow(x, i) * std::pow(std::abs(h.h[n]), q);
  }
  return simpson(integrand, h.dx);
}

double admissible_a_max(double p) { return p * (p - 1.0) / (p + 1.0); }

AsymptoticModel build_model(const HProfile& h, const NonlinearityParams& nl,
                            double epsilon, double a) {
  nl.validate();
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw ConfigError("build_model: epsilon must be >= 0");
  if (!(a > 0.0) || !(a < admissible_a_max(nl.p)))
    throw ConfigError("build_model: a must lie in (0, p(p-1)/(p+1))");

  AsymptoticModel m;
  m.p = nl.p;
  m.k = nl.k;
  m.epsilon = epsilon;
  m.a = a;
  m.C_p = moment_Ck(h, nl.p);
  m.A_p = std::pow(2.0, nl.p - 3.0) * m.C_p / (nl.p - 2.0);

  const double p = nl.p;
  const double branch_power = (p * (p - 1.0) * (1.0 - a) + a * ((p - 1.0) * (p - 1.0) - 2.0)) / p;
  const double branch_sub = nl.k * (1.0 + a);
  m.lambda = std::min({branch_power, branch_sub, a});
  // Below the crossover a* = p(p-1-k)/(p+1+pk) the k-branch is the binding
  // secondary rate.
  const double a_cross = p * (p - 1.0 - nl.k) / (p + 1.0 + p * nl.k);
  m.lambda0 = a > a_cross ? branch_power : branch_sub;
  return m;
}

}  // namespace tailwave
