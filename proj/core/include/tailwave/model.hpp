#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tailwave {

// Sign-preserving power |u|^{q-1} u.  Odd in u for every q, so nonlinear
// terms never break the u -> -u symmetry of the wave operator.
double pow_s(double u, double q);

struct NonlinearityParams {
  double p = 3.0;          // leading power, must exceed 1 + sqrt(2)
  double k = 1.0;          // gap to the subleading power, must be positive
  double extra_coeff = 0;  // coefficient of the subleading term

  void validate() const;  // throws ConfigError
};

// F(u) = pow_s(u, p) + extra_coeff * pow_s(u, p + k), with multiply-only fast
// paths when the exponents are small integers (the hot path of the stepper).
class Nonlinearity {
 public:
  explicit Nonlinearity(const NonlinearityParams& params);

  double operator()(double u) const {
    double lead = ipow_ > 0 ? int_pow(u, ipow_) : pow_s(u, p_);
    if (coeff_ == 0.0) return lead;
    double sub = ipow_sub_ > 0 ? int_pow(u, ipow_sub_) : pow_s(u, p_ + k_);
    return lead + coeff_ * sub;
  }

  const NonlinearityParams& params() const { return params_; }

 private:
  static double int_pow(double u, int q) {  // |u|^{q-1} u, so even q stays odd in u
    const double m = u < 0.0 ? -u : u;
    double a = u;
    for (int i = 1; i < q; ++i) a *= m;
    return a;
  }

  NonlinearityParams params_;
  double p_, k_, coeff_;
  int ipow_ = 0, ipow_sub_ = 0;  // set only for small integer exponents
};

// Radial profile sampled at r_j = j*dr, even in r, identically zero for
// r >= support_radius.  Off-node values come from clamped cubic interpolation.
struct RadialProfile {
  double dr = 0;
  double support_radius = 0;
  int smoothness_class = 0;  // highest k with a continuous k-th derivative
  std::vector<double> samples;

  std::size_t size() const { return samples.size(); }
  double value(double r) const;
  double grid_max() const;  // max |samples|
};

// family "bump4": amplitude * (1 - (r/R)^2)^4 inside r < R (C^3 at the edge).
// family "zero":  the zero profile.
RadialProfile make_profile(std::string_view family, double amplitude,
                           double support_radius, double dr);

// Weighted sup norms of a data pair on its sample grid:
//   f0 = max (1+r)^{p-1} |f|,  f1 = max (1+r)^p |f'|,  g0 = max (1+r)^p |g|.
// f' by finite differences on the grid.  Profiles must share dr and size.
struct DataNorms {
  double f0 = 0, f1 = 0, g0 = 0;
};
DataNorms data_norms(const RadialProfile& f, const RadialProfile& g, double p);

}  // namespace tailwave
