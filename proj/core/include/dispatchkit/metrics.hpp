#pragma once

#include <optional>
#include <span>

namespace dispatchkit {

struct FitReport {
  double mse = 0.0;
  double rmse = 0.0;
  /// Empty when the truth vector is constant (total sum of squares is 0).
  std::optional<double> r2;
};

/// MSE, RMSE and R^2 = 1 - SS_res / SS_tot. Lengths must match and be >= 2.
FitReport evaluate_fit(std::span<const double> y_true, std::span<const double> y_pred);

}  // namespace dispatchkit
