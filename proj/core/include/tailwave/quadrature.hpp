#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailwave {

// Composite Simpson rule over uniformly spaced samples.  Needs an even panel
// count; with an odd count the last panel uses the 3-point end rule, keeping
// the composite error O(dx^4).  At least 2 samples required.
double simpson(std::span<const double> y, double dx);

// out[i] = integral from x_i to x_{n-1} of the sampled function.  Built from
// the right end with paired Simpson panels plus 3-point half-panel rules, so
// every entry is O(dx^4) accurate and out[n-1] == 0 exactly.
std::vector<double> cumulative_from_right(std::span<const double> y, double dx);

// First derivative on a uniform grid: 4th-order centred stencils inside,
// one-sided 4th-order at the edges; falls back to 2nd order below 5 samples.
std::vector<double> derivative(std::span<const double> y, double dx);

}  // namespace tailwave
