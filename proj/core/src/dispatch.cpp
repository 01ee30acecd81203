#include "dispatchkit/dispatch.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

namespace {

constexpr std::string_view kTraceHeader =
    "day,slot,pv_to_load,pv_to_batt,pv_to_grid,batt_to_load,grid_to_load,soc_kwh";

}  // namespace

std::string_view to_string(ScenarioCase c) noexcept {
  switch (c) {
    case ScenarioCase::GridOnly:
      return "grid";
    case ScenarioCase::PvGrid:
      return "pv";
    case ScenarioCase::PvGridBattery:
      return "pv-batt";
  }
  return "?";
}

std::optional<ScenarioCase> parse_case(std::string_view name) noexcept {
  for (ScenarioCase c : kAllCases) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

SlotOutcome dispatch_slot(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                          BatteryState state, TimeSlot slot, double pv_kw, double load_kw) {
  DispatchDecision d;
  if (c == ScenarioCase::GridOnly) {
    d.grid_to_load = load_kw;
    return {d, state};
  }

  d.pv_to_load = std::min(pv_kw, load_kw);
  const double excess = pv_kw - d.pv_to_load;
  const double deficit = load_kw - d.pv_to_load;

  if (c == ScenarioCase::PvGrid) {
    d.pv_to_grid = excess;
    d.grid_to_load = deficit;
    return {d, state};
  }

  d.pv_to_batt = std::min(excess, max_charge_power(spec, state));
  d.pv_to_grid = excess - d.pv_to_batt;
  d.batt_to_load = tariff.is_offpeak(slot) ? 0.0 : std::min(deficit, max_discharge_power(spec, state));
  d.grid_to_load = deficit - d.batt_to_load;
  return {d, apply(spec, state, d.pv_to_batt, d.batt_to_load)};
}

DispatchTrace run_dispatch(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                           std::size_t first_index, std::span<const double> load_kw,
                           std::span<const double> pv_kw, BatteryState initial) {
  if (load_kw.size() != pv_kw.size()) throw Error("load and pv series differ in length");
  if (first_index + load_kw.size() > kSlotsPerYear) throw Error("dispatch span runs past day 365");

  DispatchTrace trace;
  trace.first_index = first_index;
  trace.decisions.reserve(load_kw.size());
  trace.soc_kwh.reserve(load_kw.size() + 1);
  trace.soc_kwh.push_back(initial.soc_kwh);

  BatteryState state = initial;
  for (std::size_t i = 0; i < load_kw.size(); ++i) {
    const SlotOutcome out = dispatch_slot(c, tariff, spec, state, TimeSlot::from_index(first_index + i),
                                          pv_kw[i], load_kw[i]);
    trace.decisions.push_back(out.decision);
    state = out.state;
    trace.soc_kwh.push_back(state.soc_kwh);
  }
  return trace;
}

DispatchTrace run_scenario(ScenarioCase c, const TariffSchedule& tariff, const BatterySpec& spec,
                           const YearSeries& load, const YearSeries& pv) {
  return run_dispatch(c, tariff, spec, 0, load.values(), pv.values(), initial_state(spec));
}

void verify_trace(const DispatchTrace& trace, ScenarioCase c, const TariffSchedule& tariff,
                  const BatterySpec& spec, std::span<const double> load_kw,
                  std::span<const double> pv_kw) {
  constexpr double tol = 1e-9;
  if (load_kw.size() != trace.size() || pv_kw.size() != trace.size() ||
      trace.soc_kwh.size() != trace.size() + 1) {
    throw ContractViolation("trace length does not match its inputs");
  }
  auto fail = [&](std::size_t i, const std::string& what) {
    const TimeSlot s = trace.slot(i);
    throw ContractViolation("day " + std::to_string(s.day) + " slot " + std::to_string(s.slot) +
                            ": " + what);
  };
  const double pv_scale = c == ScenarioCase::GridOnly ? 0.0 : 1.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const DispatchDecision& d = trace.decisions[i];
    if (std::abs(d.pv_to_load + d.pv_to_batt + d.pv_to_grid - pv_scale * pv_kw[i]) > tol) {
      fail(i, "PV balance violated");
    }
    if (std::abs(d.pv_to_load + d.batt_to_load + d.grid_to_load - load_kw[i]) > tol) {
      fail(i, "load balance violated");
    }
    if (d.pv_to_batt > 0.0 && d.batt_to_load > 0.0) fail(i, "simultaneous charge and discharge");
    if (d.batt_to_load > 0.0 && tariff.is_offpeak(trace.slot(i))) fail(i, "off-peak discharge");
    const double soc = trace.soc_kwh[i + 1];
    if (soc < spec.soc_min_kwh() - tol || soc > spec.soc_max_kwh() + tol) fail(i, "SoC out of bounds");
  }
}

std::string format_trace(const DispatchTrace& trace) {
  std::string out;
  out.reserve(trace.size() * 64 + 96);
  out.append(kTraceHeader);
  out.push_back('\n');
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TimeSlot s = trace.slot(i);
    const DispatchDecision& d = trace.decisions[i];
    out.append(std::to_string(s.day));
    out.push_back(',');
    out.append(std::to_string(s.slot));
    for (double v : {d.pv_to_load, d.pv_to_batt, d.pv_to_grid, d.batt_to_load, d.grid_to_load,
                     trace.soc_kwh[i + 1]}) {
      out.push_back(',');
      detail::append_fixed(out, v, 6);
    }
    out.push_back('\n');
  }
  return out;
}

void write_trace(const DispatchTrace& trace, const std::filesystem::path& path) {
  detail::write_file(path, format_trace(trace));
}

DispatchTrace parse_trace(std::string_view text, double initial_soc_kwh) {
  const auto lines = detail::split_lines(text);
  if (lines.empty() || lines.front() != kTraceHeader) {
    throw ParseError(1, "expected header '" + std::string(kTraceHeader) + "'");
  }
  DispatchTrace trace;
  trace.soc_kwh.push_back(initial_soc_kwh);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t row = i + 1;
    const auto fields = detail::split(lines[i], ',');
    if (fields.size() != 8) throw ParseError(row, "expected 8 fields");
    TimeSlot s;
    if (!detail::parse_number(fields[0], s.day) || !detail::parse_number(fields[1], s.slot) ||
        !s.valid()) {
      throw ParseError(row, "invalid day/slot");
    }
    std::array<double, 6> v{};
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!detail::parse_number(fields[k + 2], v[k]) || v[k] < 0.0) {
        throw ParseError(row, "invalid value in column " + std::to_string(k + 3));
      }
    }
    if (i == 1) {
      trace.first_index = s.index();
    } else if (s.index() != trace.first_index + trace.decisions.size()) {
      throw ParseError(row, "rows are not consecutive slots");
    }
    trace.decisions.push_back({v[0], v[1], v[2], v[3], v[4]});
    trace.soc_kwh.push_back(v[5]);
  }
  return trace;
}

DispatchTrace load_trace(const std::filesystem::path& path, double initial_soc_kwh) {
  try {
    return parse_trace(detail::read_file(path), initial_soc_kwh);
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

}  // namespace dispatchkit
