#pragma once

#include <filesystem>
#include <string>

#include "dispatchkit/time_slot.hpp"

namespace dispatchkit {

/// Energy-reservoir battery. Power limits and efficiencies are measured on
/// the AC side; SoC bounds are fractions of capacity.
struct BatterySpec {
  double capacity_kwh = 4.0;
  double p_charge_max_kw = 3.0;
  double p_discharge_max_kw = 3.0;
  double eta_charge = 0.95;
  double eta_discharge = 0.95;
  double soc_min_frac = 0.1;
  double soc_max_frac = 1.0;
  double soc_init_frac = 0.5;

  void validate() const;

  double soc_min_kwh() const noexcept { return soc_min_frac * capacity_kwh; }
  double soc_max_kwh() const noexcept { return soc_max_frac * capacity_kwh; }
  double soc_init_kwh() const noexcept { return soc_init_frac * capacity_kwh; }
};

struct BatteryState {
  double soc_kwh = 0.0;

  friend bool operator==(const BatteryState&, const BatteryState&) = default;
};

inline BatteryState initial_state(const BatterySpec& spec) { return {spec.soc_init_kwh()}; }

/// Largest AC charging power that one slot can absorb without passing the SoC
/// ceiling, capped by the charger limit.
double max_charge_power(const BatterySpec& spec, BatteryState state);

/// Largest AC discharge power one slot can deliver without passing the SoC
/// floor, capped by the inverter limit.
double max_discharge_power(const BatterySpec& spec, BatteryState state);

/// Advances one slot. At most one of the two flows may be positive, and each
/// must respect its max_*_power limit; otherwise ContractViolation.
///   soc' = soc + eta_c * charge * dt - discharge * dt / eta_d
BatteryState apply(const BatterySpec& spec, BatteryState state, double charge_kw,
                   double discharge_kw);

BatterySpec load_battery(const std::filesystem::path& path);
BatterySpec parse_battery(std::string_view text);
std::string format_battery(const BatterySpec& spec);

}  // namespace dispatchkit
