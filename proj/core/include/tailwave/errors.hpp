#pragma once

#include <stdexcept>
#include <string>

namespace tailwave {

// Invalid input: bad config file, out-of-range parameter, mismatched grids.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The computation itself went bad: non-finite field values, blowup sentinel.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A fit or diagnostic cannot produce a meaningful answer on this input.
struct AnalysisError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace tailwave
