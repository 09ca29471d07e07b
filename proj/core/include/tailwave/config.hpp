#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tailwave/model.hpp"

namespace tailwave {

// One run of the laboratory.  Parsed from a flat key=value file; '#' starts
// a comment.  Unknown keys are rejected so config typos fail loudly.
struct RunConfig {
  NonlinearityParams nl;

  // Initial data: family selects the (f, g) pair.
  //   bump4   -> f = 0,      g = bump4(amplitude, R)   (velocity data)
  //   bump4_f -> f = bump4,  g = 0                     (position data)
  //   zero    -> f = g = 0
  std::string family = "bump4";
  double amplitude = 1.0;
  double support_radius = 1.0;  // key "R"

  std::vector<double> epsilons;  // key "epsilon", comma separated
  double a = 0.5;                // scaling exponent, 0 < a < p(p-1)/(p+1)

  double dr = 0.02;
  double cfl = 0.9;
  double t_max = 100.0;
  std::string output_dir = "out";

  // Optional keys.
  bool nonlinear = true;                  // "nonlinear" (0/1)
  std::vector<double> probe_radii{1.0};   // "probe_r", comma separated
  int keep_every = 1;                     // lattice row decimation
  double conv_probe_t = 0.0;              // "conv_probe_t"; 0 = auto, see probe_time()
  double conv_probe_r = 1.0;              // "conv_probe_r"

  // Refinement-probe time: the explicit key, else min(10, t_max).
  double probe_time() const { return conv_probe_t > 0.0 ? conv_probe_t : std::min(10.0, t_max); }

  double dt() const { return cfl * dr; }
  // Domain radius with an exact closure margin: r_max = R + t_max + 2R keeps
  // the outer boundary causally disconnected from every point with r <= R+t.
  double r_max() const { return 3.0 * support_radius + t_max; }
  std::size_t n_cells() const;  // lattice cells along r; nodes run 0..n_cells
  std::size_t n_steps() const;  // leapfrog steps to reach t_max

  void validate() const;  // throws ConfigError
};

RunConfig parse_config_text(std::string_view text);
RunConfig load_config(const std::string& path);

struct DataProfiles {
  RadialProfile f, g;
};
DataProfiles make_data(const RunConfig& cfg);

// Normalised (key, value) echo of every effective setting, for manifests.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& cfg);

}  // namespace tailwave
