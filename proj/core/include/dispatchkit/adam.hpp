#pragma once

#include <cstdint>

#include "dispatchkit/lstm.hpp"

namespace dispatchkit::forecast {

struct AdamConfig {
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct AdamState {
  LstmParams m;
  LstmParams v;
  std::int64_t step = 0;

  static AdamState zeros(LstmDims dims) { return {LstmParams::zeros(dims), LstmParams::zeros(dims), 0}; }
};

/// Bias-corrected ADAM update of `params` in place.
void adam_step(AdamState& state, LstmParams& params, const LstmParams& grad,
               const AdamConfig& config);

}  // namespace dispatchkit::forecast
