#pragma once

#include <filesystem>
#include <string>

#include "dispatchkit/time_slot.hpp"

namespace dispatchkit {

/// Two-rate time-of-use tariff with a flat export rate. Rates are in £/kWh;
/// the off-peak window is the half-open slot range [offpeak_start_slot,
/// offpeak_end_slot) of every day.
struct TariffSchedule {
  double rate_peak = 0.16;
  double rate_offpeak = 0.08;
  double rate_export = 0.04;
  int offpeak_start_slot = 0;
  int offpeak_end_slot = 14;  // 00:00-07:00

  void validate() const;

  bool is_offpeak(int slot) const noexcept {
    return slot >= offpeak_start_slot && slot < offpeak_end_slot;
  }
  bool is_offpeak(TimeSlot slot) const noexcept { return is_offpeak(slot.slot); }

  double import_rate(TimeSlot slot) const noexcept {
    return is_offpeak(slot) ? rate_offpeak : rate_peak;
  }

  /// Price of energy crossing the meter in this slot: the import rate when
  /// load exceeds PV, the export rate when PV exceeds load, 0 when they match.
  double slot_price(TimeSlot slot, double load_kw, double pv_kw) const noexcept {
    if (load_kw > pv_kw) return import_rate(slot);
    if (pv_kw > load_kw) return rate_export;
    return 0.0;
  }

  /// Same schedule with every rate multiplied by `k`.
  TariffSchedule scaled(double k) const;
};

TariffSchedule load_tariff(const std::filesystem::path& path);
TariffSchedule parse_tariff(std::string_view text);
std::string format_tariff(const TariffSchedule& tariff);

}  // namespace dispatchkit
