#pragma once

#include <cstddef>
#include <stdexcept>

namespace dispatchkit {

inline constexpr int kSlotsPerDay = 48;
inline constexpr int kDaysPerYear = 365;
inline constexpr std::size_t kSlotsPerYear = static_cast<std::size_t>(kSlotsPerDay) * kDaysPerYear;

/// Length of one slot in hours. Samples are average kW over the slot, so the
/// slot energy in kWh is `kw * kSlotHours`.
inline constexpr double kSlotHours = 0.5;

/// A half-hour slot of a non-leap year: day 1..365, slot 0..47 (slot 0 starts
/// at 00:00).
struct TimeSlot {
  int day = 1;
  int slot = 0;

  constexpr bool valid() const noexcept {
    return day >= 1 && day <= kDaysPerYear && slot >= 0 && slot < kSlotsPerDay;
  }

  constexpr std::size_t index() const {
    if (!valid()) throw std::out_of_range("TimeSlot out of range");
    return static_cast<std::size_t>(day - 1) * kSlotsPerDay + static_cast<std::size_t>(slot);
  }

  static constexpr TimeSlot from_index(std::size_t index) {
    if (index >= kSlotsPerYear) throw std::out_of_range("slot index out of range");
    return TimeSlot{static_cast<int>(index / kSlotsPerDay) + 1,
                    static_cast<int>(index % kSlotsPerDay)};
  }

  friend constexpr bool operator==(const TimeSlot&, const TimeSlot&) = default;
};

}  // namespace dispatchkit
