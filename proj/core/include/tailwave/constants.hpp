#pragma once

#include "tailwave/linear.hpp"
#include "tailwave/model.hpp"

namespace tailwave {

// Everything the late-time prediction u ~ eps u0 + eps^p W needs, assembled
// once per (data, nonlinearity, eps, a) tuple.
struct AsymptoticModel {
  double p = 0, k = 0;
  double epsilon = 0, a = 0;

  double C_p = 0;      // integral of pow_s(h, p)
  double A_p = 0;      // 2^{p-3} C_p / (p - 2), tail amplitude
  double lambda = 0;   // decay rate of the rescaled remainder deficit
  double lambda0 = 0;  // secondary rate before the a-cap, see build_model

  // Remainder scaling exponent: W_eps(t,r) = eps^{-b} w(t/eps^a, r/eps^a).
  double b() const { return p + a * (p - 1.0); }
  // C_p = 0 (e.g. velocity-free even data with odd h) kills the leading
  // tail; fits against it are meaningless and must be refused.
  bool degenerate_tail() const;
};

// Moments of the generator: C_q = integral pow_s(h, q) dx (q >= 1) and
// C_{q,i} = integral rho^i |h(rho)|^q drho (i >= 0).  Simpson on the h grid.
double moment_Ck(const HProfile& h, double q);
double moment_Cki(const HProfile& h, double q, int i);

// Largest admissible scaling exponent: a < p(p-1)/(p+1).
double admissible_a_max(double p);

// lambda = min of three branches:
//   [p(p-1)(1-a) + a((p-1)^2 - 2)] / p,   k(1+a),   a.
// lambda0 drops the a-branch cap: it is the power branch when
// a > p(p-1-k)/(p+1+pk) and the subleading branch k(1+a) below that
// crossover (the two meet there).
AsymptoticModel build_model(const HProfile& h, const NonlinearityParams& nl,
                            double epsilon, double a);

}  // namespace tailwave
