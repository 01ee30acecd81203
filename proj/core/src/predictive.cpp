#include "dispatchkit/predictive.hpp"

#include <algorithm>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

SlotOutcome realize_slot(const TariffSchedule& tariff, const BatterySpec& spec, BatteryState state,
                         TimeSlot slot, double planned_charge_kw, double planned_discharge_kw,
                         double pv_kw, double load_kw) {
  DispatchDecision d;
  d.pv_to_load = std::min(pv_kw, load_kw);
  const double excess = pv_kw - d.pv_to_load;
  const double deficit = load_kw - d.pv_to_load;

  d.pv_to_batt = std::clamp(std::min(planned_charge_kw, max_charge_power(spec, state)), 0.0, excess);
  d.pv_to_grid = excess - d.pv_to_batt;
  if (!tariff.is_offpeak(slot)) {
    d.batt_to_load =
        std::clamp(std::min(planned_discharge_kw, max_discharge_power(spec, state)), 0.0, deficit);
  }
  d.grid_to_load = deficit - d.batt_to_load;
  return {d, apply(spec, state, d.pv_to_batt, d.batt_to_load)};
}

PredictiveResult evaluate_predictive(const TariffSchedule& tariff, const BatterySpec& spec,
                                     const YearSeries& load, const YearSeries& pv, int first_day,
                                     int last_day, const DayForecaster& load_forecast,
                                     const DayForecaster& pv_forecast) {
  if (first_day < 1 || last_day > kDaysPerYear || first_day > last_day) {
    throw Error("predictive span must satisfy 1 <= first_day <= last_day <= 365");
  }
  const int days = last_day - first_day + 1;
  const std::size_t first_index = TimeSlot{first_day, 0}.index();

  PredictiveResult result;
  result.first_day = first_day;
  result.last_day = last_day;
  result.perfect = run_dispatch(ScenarioCase::PvGridBattery, tariff, spec, first_index,
                                load.days(first_day, days), pv.days(first_day, days),
                                initial_state(spec));

  DispatchTrace& realized = result.realized;
  realized.first_index = first_index;
  BatteryState state = initial_state(spec);
  realized.soc_kwh.push_back(state.soc_kwh);
  for (int day = first_day; day <= last_day; ++day) {
    const std::vector<double> load_hat = load_forecast(day);
    const std::vector<double> pv_hat = pv_forecast(day);
    if (load_hat.size() != kSlotsPerDay || pv_hat.size() != kSlotsPerDay) {
      throw Error("forecaster must return 48 values for day " + std::to_string(day));
    }
    const std::size_t day_index = TimeSlot{day, 0}.index();
    const DispatchTrace plan = run_dispatch(ScenarioCase::PvGridBattery, tariff, spec, day_index,
                                            load_hat, pv_hat, state);
    const auto load_day = load.day(day);
    const auto pv_day = pv.day(day);
    for (int s = 0; s < kSlotsPerDay; ++s) {
      const auto k = static_cast<std::size_t>(s);
      const SlotOutcome out =
          realize_slot(tariff, spec, state, TimeSlot{day, s}, plan.decisions[k].pv_to_batt,
                       plan.decisions[k].batt_to_load, pv_day[k], load_day[k]);
      realized.decisions.push_back(out.decision);
      state = out.state;
      realized.soc_kwh.push_back(state.soc_kwh);
    }
  }

  result.forecast_cost = cost_of_trace(result.realized, tariff);
  result.perfect_cost = cost_of_trace(result.perfect, tariff);
  return result;
}

DayForecaster oracle_forecaster(const YearSeries& actual) {
  return [&actual](int day) {
    const auto d = actual.day(day);
    return std::vector<double>(d.begin(), d.end());
  };
}

DayForecaster zero_forecaster() {
  return [](int) { return std::vector<double>(kSlotsPerDay, 0.0); };
}

std::string format_predictive_csv(const PredictiveResult& r) {
  std::string out = "scheduling,peak_cost,offpeak_cost,export_revenue,net_cost\n";
  auto row = [&out](std::string_view name, const CostReport& c) {
    out.append(name);
    for (double v : {c.peak_import_cost, c.offpeak_import_cost, c.export_revenue, c.net_cost}) {
      out.push_back(',');
      detail::append_fixed(out, v, 2);
    }
    out.push_back('\n');
  };
  row("forecast", r.forecast_cost);
  row("perfect", r.perfect_cost);
  row("gap", CostReport::from_components(
                 r.forecast_cost.peak_import_cost - r.perfect_cost.peak_import_cost,
                 r.forecast_cost.offpeak_import_cost - r.perfect_cost.offpeak_import_cost,
                 r.forecast_cost.export_revenue - r.perfect_cost.export_revenue));
  return out;
}

}  // namespace dispatchkit
