#pragma once

#include <stdexcept>
#include <string>

namespace geopriv {

// Bad user input: out-of-range coordinates, invalid priors, malformed files.
struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical / optimization failure: LP did not reach a certified optimum,
// calibration target unattainable, basis factorization lost.
struct solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A constructed object violates one of its structural invariants.
struct invariant_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace geopriv
