#include "geopriv/prior.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "geopriv/errors.hpp"

namespace geopriv {

Prior::Prior(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw input_error("prior must have at least one entry");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) throw input_error("prior weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw input_error("prior must sum to 1 (got " + std::to_string(sum) + ")");
}

Prior Prior::uniform(int n) {
  if (n < 1) throw input_error("prior must have at least one entry");
  return Prior(std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
}

double Prior::at(int i) const {
  if (i < 0 || i >= size()) throw input_error("prior index out of range");
  return weights_[static_cast<std::size_t>(i)];
}

}  // namespace geopriv
