#include "dispatchkit/adam.hpp"

#include <cmath>

#include "dispatchkit/errors.hpp"

namespace dispatchkit::forecast {

void adam_step(AdamState& state, LstmParams& params, const LstmParams& grad,
               const AdamConfig& config) {
  auto p = params.tensors();
  auto m = state.m.tensors();
  auto v = state.v.tensors();
  const auto g = grad.tensors();
  if (p.size() != g.size() || p.size() != m.size() || p.size() != v.size()) {
    throw ContractViolation("adam_step: shape mismatch");
  }

  ++state.step;
  const double t = static_cast<double>(state.step);
  const double correction1 = 1.0 - std::pow(config.beta1, t);
  const double correction2 = 1.0 - std::pow(config.beta2, t);

  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k].data.size() != g[k].data.size()) throw ContractViolation("adam_step: shape mismatch");
    for (std::size_t j = 0; j < p[k].data.size(); ++j) {
      const double gj = g[k].data[j];
      double& mj = m[k].data[j];
      double& vj = v[k].data[j];
      mj = config.beta1 * mj + (1.0 - config.beta1) * gj;
      vj = config.beta2 * vj + (1.0 - config.beta2) * gj * gj;
      const double m_hat = mj / correction1;
      const double v_hat = vj / correction2;
      p[k].data[j] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.eps);
    }
  }
}

}  // namespace dispatchkit::forecast
