#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dispatchkit/battery.hpp"
#include "dispatchkit/series.hpp"
#include "dispatchkit/tariff.hpp"

namespace dispatchkit {

enum class ScenarioCase { GridOnly, PvGrid, PvGridBattery };

inline constexpr std::array<ScenarioCase, 3> kAllCases{
    ScenarioCase::GridOnly, ScenarioCase::PvGrid, ScenarioCase::PvGridBattery};

/// CLI spelling: "grid", "pv", "pv-batt".
std::string_view to_string(ScenarioCase c) noexcept;
std::optional<ScenarioCase> parse_case(std::string_view name) noexcept;

/// Power routing for one slot, all in kW and non-negative.
struct DispatchDecision {
  double pv_to_load = 0.0;
  double pv_to_batt = 0.0;
  double pv_to_grid = 0.0;
  double batt_to_load = 0.0;
  double grid_to_load = 0.0;

  friend bool operator==(const DispatchDecision&, const DispatchDecision&) = default;
};

struct SlotOutcome {
  DispatchDecision decision;
  BatteryState state;
};

/// A contiguous run of decisions. `soc_kwh` has one more entry than
/// `decisions`: the SoC before each slot, then the terminal SoC.
struct DispatchTrace {
  std::size_t first_index = 0;  // linear TimeSlot index of decisions[0]
  std::vector<DispatchDecision> decisions;
  std::vector<double> soc_kwh;

  std::size_t size() const noexcept { return decisions.size(); }
  TimeSlot slot(std::size_t i) const { return TimeSlot::from_index(first_index + i); }
};

/// One slot of the rule-based policy:
///   1. PV serves the load first.
///   2. Excess PV charges the battery up to its headroom; the rest is exported.
///   3. Remaining load is served by the battery in peak slots only, then by
///      the grid.
/// PvGrid drops the battery terms; GridOnly ignores PV entirely. The battery
/// never charges from the grid.
SlotOutcome dispatch_slot(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                          BatteryState state, TimeSlot slot, double pv_kw, double load_kw);

/// Folds dispatch_slot over a contiguous span starting at `first_index`.
DispatchTrace run_dispatch(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                           std::size_t first_index, std::span<const double> load_kw,
                           std::span<const double> pv_kw, BatteryState initial);

/// Full-year run from the battery's initial SoC.
DispatchTrace run_scenario(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                           const YearSeries& load, const YearSeries& pv);

/// Throws ContractViolation naming the first slot where a trace breaks PV or
/// load balance (1e-9 kW), discharges off-peak, charges and discharges at
/// once, or leaves the SoC bounds.
void verify_trace(const DispatchTrace& trace, ScenarioCase c, const TariffSchedule& tariff,
                  const BatterySpec& spec, std::span<const double> load_kw,
                  std::span<const double> pv_kw);

/// `day,slot,pv_to_load,pv_to_batt,pv_to_grid,batt_to_load,grid_to_load,soc_kwh`
/// with six decimals; soc_kwh is the SoC after the slot.
void write_trace(const DispatchTrace& trace, const std::filesystem::path& path);
std::string format_trace(const DispatchTrace& trace);

/// Inverse of write_trace. The SoC before the first row is not stored in the
/// file; it is taken from `initial_soc_kwh`.
DispatchTrace parse_trace(std::string_view text, double initial_soc_kwh);
DispatchTrace load_trace(const std::filesystem::path& path, double initial_soc_kwh);

}  // namespace dispatchkit
