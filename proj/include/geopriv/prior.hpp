#pragma once

#include <vector>

namespace geopriv {

// Probability vector over a LocationSet: non-negative, sums to 1 within 1e-9.
class Prior {
 public:
  explicit Prior(std::vector<double> weights);
  static Prior uniform(int n);

  int size() const { return static_cast<int>(weights_.size()); }
  double at(int i) const;
  const std::vector<double>& weights() const { return weights_; }
  const double* data() const { return weights_.data(); }

 private:
  std::vector<double> weights_;
};

}  // namespace geopriv
