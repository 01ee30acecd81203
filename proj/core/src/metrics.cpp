#include "dispatchkit/metrics.hpp"

#include <cmath>

#include "dispatchkit/errors.hpp"

namespace dispatchkit {

FitReport evaluate_fit(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size()) throw Error("evaluate_fit: length mismatch");
  if (y_true.size() < 2) throw Error("evaluate_fit: need at least two points");

  const double n = static_cast<double>(y_true.size());
  double mean = 0.0;
  for (double y : y_true) mean += y;
  mean /= n;

  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double r = y_true[i] - y_pred[i];
    const double t = y_true[i] - mean;
    ss_res += r * r;
    ss_tot += t * t;
  }

  FitReport fit;
  fit.mse = ss_res / n;
  fit.rmse = std::sqrt(fit.mse);
  if (ss_tot > 0.0) fit.r2 = 1.0 - ss_res / ss_tot;
  return fit;
}

}  // namespace dispatchkit
