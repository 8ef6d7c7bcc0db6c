#pragma once

#include <vector>

#include "geopriv/geo.hpp"
#include "geopriv/mech.hpp"
#include "geopriv/prior.hpp"

namespace geopriv {

// Adversary post-processing: row-stochastic H, h_{z,xhat} the probability
// of remapping reported z to guess xhat.
class Remapping {
 public:
  explicit Remapping(std::vector<double> matrix, int n);
  // 0/1 matrix selecting assignment[z] for each z.
  static Remapping deterministic(std::vector<int> assignment, int n);

  int size() const { return n_; }
  const std::vector<double>& matrix() const { return matrix_; }
  // Non-empty only for deterministic remappings.
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  int n_ = 0;
  std::vector<double> matrix_;
  std::vector<int> assignment_;
};

struct Triple {
  int x = -1;
  int xprime = -1;
  int z = -1;
};

struct PrivacyReport {
  double effective_epsilon = 0.0;  // +inf when a ratio degenerates
  Triple worst_triple;
  bool satisfied_at = false;
  double slack = 0.0;
};

// sum_{x,z} pi_x k_xz d(x,z).
double expected_distance(const Mechanism& mech, const Prior& pi, const Metric& d);

// Service quality loss: expected_distance under the quality metric.
double quality_loss(const Mechanism& mech, const Prior& pi, const Metric& dq);

// The Bayes-optimal remapping: for each reported z, the deterministic guess
// argmin_xhat sum_x pi_x k_xz dA(x, xhat) (ties to the lowest index). The
// objective is linear in each row of H, so a deterministic vertex attains
// the minimum over all stochastic remappings.
Remapping optimal_remap(const Mechanism& mech, const Prior& pi, const Metric& da);

// min_H ExpDist(KH, pi, dA), evaluated at the optimal remapping.
double adv_error(const Mechanism& mech, const Prior& pi, const Metric& da);

// Matrix product KH as a mechanism (provenance: external).
Mechanism compose(const Mechanism& mech, const Remapping& remap);

// Effective epsilon relative to the metric handed in: the largest
// ln(k_xz / k_x'z) / d(x,x') over ordered triples, with the usual zero
// conventions (both entries zero contribute nothing; exactly one zero gives
// +inf). satisfied_at holds iff every triple obeys
// k_xz <= e^{d(x,x')} k_x'z (1 + slack). Pass eps*dX to check a concrete
// privacy level, or the unscaled dX to read the answer in 1/km.
PrivacyReport verify_dx_privacy(const Mechanism& mech, const Metric& dx_scaled,
                                double slack = 1e-6);

}  // namespace geopriv
