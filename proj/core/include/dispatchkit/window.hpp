#pragma once

#include <span>
#include <vector>

#include "dispatchkit/series.hpp"

namespace dispatchkit::forecast {

/// Days of history per sample; the target is the following day.
inline constexpr int kHistoryDays = 29;
inline constexpr int kHistorySlots = kHistoryDays * kSlotsPerDay;
inline constexpr int kWindowCount = kDaysPerYear - kHistoryDays;

/// Min-max scaling to [0, 1].
struct Normalizer {
  double min_kw = 0.0;
  double max_kw = 1.0;

  /// Fits to the range of `values`; a constant input gets max = min + 1 so
  /// the scale stays invertible.
  static Normalizer fit(std::span<const double> values);

  double normalize(double kw) const noexcept { return (kw - min_kw) / (max_kw - min_kw); }
  double denormalize(double x) const noexcept { return min_kw + x * (max_kw - min_kw); }
};

struct WindowSample {
  int target_day = 0;
  std::vector<double> input;   // kHistorySlots values, oldest first
  std::vector<double> target;  // kSlotsPerDay values
};

/// One sample per target day 30..365. Normalized values are clipped to [0, 1]
/// (data outside the fitted range saturates).
std::vector<WindowSample> make_windows(const YearSeries& series, const Normalizer& normalizer);

}  // namespace dispatchkit::forecast
