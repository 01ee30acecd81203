#pragma once

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "dispatchkit/time_slot.hpp"

namespace dispatchkit {

enum class SeriesKind { Load, Pv };

std::string_view to_string(SeriesKind kind) noexcept;

/// One year of half-hourly average-power samples in kW, dense over all 17,520
/// slots. Every sample is finite and non-negative; the constructor enforces it.
class YearSeries {
 public:
  YearSeries(SeriesKind kind, std::vector<double> samples);

  SeriesKind kind() const noexcept { return kind_; }
  std::span<const double> values() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  double operator[](TimeSlot slot) const { return samples_[slot.index()]; }
  double at(std::size_t index) const { return samples_.at(index); }

  /// The 48 samples of `day` (1-based).
  std::span<const double> day(int day) const;

  /// `count` consecutive days starting at `first_day`.
  std::span<const double> days(int first_day, int count) const;

  friend bool operator==(const YearSeries&, const YearSeries&) = default;

 private:
  SeriesKind kind_;
  std::vector<double> samples_;
};

/// Reads the `day,slot,kw` CSV format. Errors carry the offending row number.
YearSeries load_series(const std::filesystem::path& path, SeriesKind kind);
YearSeries parse_series(std::string_view text, SeriesKind kind);

/// Writes the canonical CSV: header, rows sorted by (day, slot), values with
/// six decimals, `\n` line endings.
void write_series(const YearSeries& series, const std::filesystem::path& path);
std::string format_series(const YearSeries& series);

/// A run of complete days in the same CSV schema, used as forecaster history.
/// Days must be consecutive and each must list slots 0..47 in order; the day
/// count is unconstrained.
struct DayBlock {
  int first_day = 1;
  std::vector<double> samples;

  int day_count() const noexcept { return static_cast<int>(samples.size()) / kSlotsPerDay; }
};

DayBlock load_day_block(const std::filesystem::path& path);
DayBlock parse_day_block(std::string_view text);

/// Rounds to the 1e-6 kW grid that the CSV format represents exactly.
double quantize_kw(double kw) noexcept;

}  // namespace dispatchkit
