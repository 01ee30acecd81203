#include "dispatchkit/window.hpp"

#include <algorithm>

#include "dispatchkit/errors.hpp"

namespace dispatchkit::forecast {

Normalizer Normalizer::fit(std::span<const double> values) {
  if (values.empty()) throw Error("cannot fit a normalizer to no data");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Normalizer n{*lo, *hi};
  if (!(n.max_kw > n.min_kw)) n.max_kw = n.min_kw + 1.0;
  return n;
}

std::vector<WindowSample> make_windows(const YearSeries& series, const Normalizer& normalizer) {
  auto scaled = [&normalizer](std::span<const double> kw) {
    std::vector<double> out(kw.size());
    std::transform(kw.begin(), kw.end(), out.begin(),
                   [&](double v) { return std::clamp(normalizer.normalize(v), 0.0, 1.0); });
    return out;
  };
  std::vector<WindowSample> samples;
  samples.reserve(kWindowCount);
  for (int day = kHistoryDays + 1; day <= kDaysPerYear; ++day) {
    samples.push_back(
        {day, scaled(series.days(day - kHistoryDays, kHistoryDays)), scaled(series.day(day))});
  }
  return samples;
}

}  // namespace dispatchkit::forecast
