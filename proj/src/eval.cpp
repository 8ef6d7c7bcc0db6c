#include "geopriv/eval.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "geopriv/errors.hpp"
#include "geopriv/kernels.hpp"

namespace geopriv {

namespace {
void check_dims(const Mechanism& mech, const Prior& pi, const Metric& d) {
  if (pi.size() != mech.size()) throw input_error("prior does not match the mechanism");
  if (d.size() != mech.size()) throw input_error("metric does not match the mechanism");
}
}  // namespace

Remapping::Remapping(std::vector<double> matrix, int n) : n_(n), matrix_(std::move(matrix)) {
  if (n_ < 1 || matrix_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
    throw input_error("remapping matrix must be n x n");
  for (int z = 0; z < n_; ++z) {
    double sum = 0.0;
    for (int xh = 0; xh < n_; ++xh) {
      const double v = matrix_[static_cast<std::size_t>(z) * n_ + xh];
      if (!std::isfinite(v) || v < 0.0) throw invariant_error("remapping entries must be >= 0");
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
      throw invariant_error("remapping row " + std::to_string(z) + " sums to " +
                            std::to_string(sum));
  }
}

Remapping Remapping::deterministic(std::vector<int> assignment, int n) {
  if (static_cast<int>(assignment.size()) != n) throw input_error("assignment size mismatch");
  std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int z = 0; z < n; ++z) {
    const int xh = assignment[static_cast<std::size_t>(z)];
    if (xh < 0 || xh >= n) throw input_error("assignment index out of range");
    m[static_cast<std::size_t>(z) * n + xh] = 1.0;
  }
  Remapping r(std::move(m), n);
  r.assignment_ = std::move(assignment);
  return r;
}

double expected_distance(const Mechanism& mech, const Prior& pi, const Metric& d) {
  check_dims(mech, pi, d);
  return kernels::expected_distance(mech.matrix().data(), pi.data(), d, mech.size());
}

double quality_loss(const Mechanism& mech, const Prior& pi, const Metric& dq) {
  return expected_distance(mech, pi, dq);
}

Remapping optimal_remap(const Mechanism& mech, const Prior& pi, const Metric& da) {
  check_dims(mech, pi, da);
  std::vector<int> assign = kernels::best_remap(mech.matrix().data(), pi.data(), da, mech.size());
  return Remapping::deterministic(std::move(assign), mech.size());
}

double adv_error(const Mechanism& mech, const Prior& pi, const Metric& da) {
  check_dims(mech, pi, da);
  const std::vector<int> assign =
      kernels::best_remap(mech.matrix().data(), pi.data(), da, mech.size());
  return kernels::expected_distance_assigned(mech.matrix().data(), pi.data(), da, assign.data(),
                                             mech.size());
}

Mechanism compose(const Mechanism& mech, const Remapping& remap) {
  if (remap.size() != mech.size()) throw input_error("remapping does not match the mechanism");
  std::vector<double> kh =
      kernels::stochastic_product(mech.matrix().data(), remap.matrix().data(), mech.size());
  // Products of row-stochastic matrices drift from exact row sums by a few
  // ulps; renormalize so the Mechanism invariant holds.
  const int n = mech.size();
  for (int x = 0; x < n; ++x) {
    double sum = 0.0;
    for (int z = 0; z < n; ++z) sum += kh[static_cast<std::size_t>(x) * n + z];
    for (int z = 0; z < n; ++z) {
      double& v = kh[static_cast<std::size_t>(x) * n + z];
      v = std::min(v / sum, 1.0);
    }
  }
  Provenance prov;
  prov.kind = MechanismKind::external;
  prov.epsilon = mech.provenance().epsilon;
  return Mechanism(mech.locations(), std::move(kh), prov);
}

PrivacyReport verify_dx_privacy(const Mechanism& mech, const Metric& dx_scaled, double slack) {
  if (dx_scaled.size() != mech.size()) throw input_error("metric does not match the mechanism");
  const auto scan =
      kernels::privacy_scan(mech.matrix().data(), dx_scaled, mech.size(), slack);
  PrivacyReport report;
  report.effective_epsilon = scan.effective_epsilon;
  report.worst_triple = {scan.x, scan.xprime, scan.z};
  report.satisfied_at = scan.satisfied;
  report.slack = slack;
  return report;
}

}  // namespace geopriv
