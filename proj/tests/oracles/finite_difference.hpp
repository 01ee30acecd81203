#pragma once

// Central finite-difference gradient of the LSTM loss, used to check BPTT.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "dispatchkit/lstm.hpp"

namespace oracle {

struct GradientCheck {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
};

/// Compares every parameter of `analytic` with (L(p+eps) - L(p-eps)) / 2eps.
/// Relative error uses max(|a|, |n|, floor) in the denominator so that
/// parameters with near-zero gradient are compared on an absolute scale.
inline GradientCheck check_gradient(const dispatchkit::forecast::LstmParams& params,
                                    std::span<const double> input, std::span<const double> target,
                                    const dispatchkit::forecast::LstmParams& analytic,
                                    double eps = 1e-5, double floor = 1e-7) {
  using namespace dispatchkit::forecast;
  GradientCheck result;
  LstmParams probe = params;
  auto loss = [&] { return mse_loss(forward(probe, input), target); };
  auto probe_tensors = probe.tensors();
  const auto grad_tensors = analytic.tensors();
  for (std::size_t k = 0; k < probe_tensors.size(); ++k) {
    for (std::size_t j = 0; j < probe_tensors[k].data.size(); ++j) {
      double& w = probe_tensors[k].data[j];
      const double saved = w;
      w = saved + eps;
      const double up = loss();
      w = saved - eps;
      const double down = loss();
      w = saved;
      const double numeric = (up - down) / (2.0 * eps);
      const double a = grad_tensors[k].data[j];
      const double denom = std::max({std::fabs(a), std::fabs(numeric), floor});
      result.max_rel_error = std::max(result.max_rel_error, std::fabs(a - numeric) / denom);
      ++result.checked;
    }
  }
  return result;
}

}  // namespace oracle
