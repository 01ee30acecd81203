#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dispatchkit/battery.hpp"
#include "dispatchkit/cost.hpp"
#include "dispatchkit/dispatch.hpp"
#include "dispatchkit/series.hpp"
#include "dispatchkit/tariff.hpp"

namespace dispatchkit {

/// Returns the 48 forecast kW values for `day`. Implementations may only look
/// at data from days before `day`.
using DayForecaster = std::function<std::vector<double>(int day)>;

/// Re-applies planned battery flows against actual PV and load. Planned
/// charging is clamped to the actual PV excess and the battery headroom;
/// planned discharge is clamped to the actual deficit and the available
/// energy, and only happens in peak slots. Grid exchange absorbs the rest.
SlotOutcome realize_slot(const TariffSchedule& tariff, const BatterySpec& spec, BatteryState state,
                         TimeSlot slot, double planned_charge_kw, double planned_discharge_kw,
                         double pv_kw, double load_kw);

struct PredictiveResult {
  int first_day = 0;
  int last_day = 0;
  DispatchTrace realized;  // battery flows planned on forecasts, settled on actuals
  DispatchTrace perfect;   // PvGridBattery dispatch on the actual series
  CostReport forecast_cost;
  CostReport perfect_cost;

  double gap() const { return forecast_cost.net_cost - perfect_cost.net_cost; }
};

/// Day by day over [first_day, last_day]: forecast load and PV, plan the
/// day with PvGridBattery dispatch from the current actual SoC, then settle
/// the plan against the actual series. Both runs start at the battery's
/// initial SoC.
PredictiveResult evaluate_predictive(const TariffSchedule& tariff, const BatterySpec& spec,
                                     const YearSeries& load, const YearSeries& pv, int first_day,
                                     int last_day, const DayForecaster& load_forecast,
                                     const DayForecaster& pv_forecast);

/// Forecasters used for sanity runs.
DayForecaster oracle_forecaster(const YearSeries& actual);
DayForecaster zero_forecaster();

/// `scheduling,peak_cost,offpeak_cost,export_revenue,net_cost` rows for the
/// forecast-driven and perfect-information runs, then a `gap` row.
std::string format_predictive_csv(const PredictiveResult& result);

}  // namespace dispatchkit
