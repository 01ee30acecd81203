#pragma once

// Straight-line re-implementation of the dispatch rules, written against the
// raw tariff/battery fields only. Tests compare the engine to this slot by
// slot; it must not call into dispatch.cpp or battery.cpp.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dispatchkit/battery.hpp"
#include "dispatchkit/tariff.hpp"

namespace oracle {

struct Flows {
  double pv_to_load, pv_to_batt, pv_to_grid, batt_to_load, grid_to_load;
};

struct OracleTrace {
  std::vector<Flows> flows;
  std::vector<double> soc;  // before each slot, plus terminal
};

inline bool oracle_is_peak(const dispatchkit::TariffSchedule& t, std::size_t linear_index) {
  const int slot_of_day = static_cast<int>(linear_index % 48);
  return !(t.offpeak_start_slot <= slot_of_day && slot_of_day < t.offpeak_end_slot);
}

/// `with_battery = false` gives the PV + grid case.
inline OracleTrace dispatch_straight_line(const dispatchkit::TariffSchedule& t,
                                          const dispatchkit::BatterySpec& b,
                                          std::size_t first_index, const std::vector<double>& load,
                                          const std::vector<double>& pv, double soc0,
                                          bool with_battery) {
  const double dt = 0.5;
  const double floor_kwh = b.soc_min_frac * b.capacity_kwh;
  const double ceil_kwh = b.soc_max_frac * b.capacity_kwh;
  OracleTrace out;
  double soc = soc0;
  out.soc.push_back(soc);
  for (std::size_t k = 0; k < load.size(); ++k) {
    Flows f{0, 0, 0, 0, 0};
    const double used = pv[k] < load[k] ? pv[k] : load[k];
    f.pv_to_load = used;
    double spare = pv[k] - used;
    double unmet = load[k] - used;
    if (with_battery) {
      double room = (ceil_kwh - soc) / (b.eta_charge * dt);
      if (room < 0) room = 0;
      if (room > b.p_charge_max_kw) room = b.p_charge_max_kw;
      f.pv_to_batt = spare < room ? spare : room;
      spare -= f.pv_to_batt;

      if (oracle_is_peak(t, first_index + k)) {
        double avail = (soc - floor_kwh) * b.eta_discharge / dt;
        if (avail < 0) avail = 0;
        if (avail > b.p_discharge_max_kw) avail = b.p_discharge_max_kw;
        f.batt_to_load = unmet < avail ? unmet : avail;
        unmet -= f.batt_to_load;
      }
      soc = soc + b.eta_charge * f.pv_to_batt * dt - f.batt_to_load * dt / b.eta_discharge;
      soc = std::clamp(soc, floor_kwh, ceil_kwh);
    }
    f.pv_to_grid = spare;
    f.grid_to_load = unmet;
    out.flows.push_back(f);
    out.soc.push_back(soc);
  }
  return out;
}

/// Brute-force pricing of a flow list: every slot priced on its own.
struct OracleCost {
  double peak = 0, offpeak = 0, exported = 0;
  double net() const { return peak + offpeak - exported; }
};

inline OracleCost price_flows(const dispatchkit::TariffSchedule& t, std::size_t first_index,
                              const std::vector<Flows>& flows) {
  OracleCost c;
  for (std::size_t k = 0; k < flows.size(); ++k) {
    const double import_kwh = flows[k].grid_to_load * 0.5;
    if (oracle_is_peak(t, first_index + k)) {
      c.peak += import_kwh * t.rate_peak;
    } else {
      c.offpeak += import_kwh * t.rate_offpeak;
    }
    c.exported += flows[k].pv_to_grid * 0.5 * t.rate_export;
  }
  return c;
}

}  // namespace oracle
