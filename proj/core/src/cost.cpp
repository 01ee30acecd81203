#include "dispatchkit/cost.hpp"

#include <algorithm>
#include <cstdio>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit {

CostReport cost_of_trace(const DispatchTrace& trace, const TariffSchedule& tariff) {
  double peak = 0.0;
  double offpeak = 0.0;
  double exported = 0.0;
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const TimeSlot slot = trace.slot(i);
    const DispatchDecision& d = trace.decisions[i];
    const double import_cost = d.grid_to_load * kSlotHours * tariff.import_rate(slot);
    (tariff.is_offpeak(slot) ? offpeak : peak) += import_cost;
    exported += d.pv_to_grid * kSlotHours * tariff.rate_export;
  }
  return CostReport::from_components(peak, offpeak, exported);
}

ComparisonTable compare_cases(const std::vector<std::pair<ScenarioCase, CostReport>>& reports) {
  std::optional<double> baseline;
  for (const auto& [c, r] : reports) {
    if (c == ScenarioCase::GridOnly) baseline = r.net_cost;
  }
  ComparisonTable table;
  for (const auto& [c, r] : reports) {
    CaseRow row{c, r, std::nullopt};
    if (c != ScenarioCase::GridOnly && baseline && *baseline != 0.0) {
      row.reduction_pct = 100.0 * (*baseline - r.net_cost) / *baseline;
    }
    table.rows.push_back(row);
  }
  return table;
}

std::string format_comparison_csv(const ComparisonTable& table) {
  std::string out = "case,peak_cost,offpeak_cost,export_revenue,net_cost,reduction_pct\n";
  for (const CaseRow& row : table.rows) {
    out.append(to_string(row.scenario));
    for (double v : {row.report.peak_import_cost, row.report.offpeak_import_cost,
                     row.report.export_revenue, row.report.net_cost}) {
      out.push_back(',');
      detail::append_fixed(out, v, 2);
    }
    out.push_back(',');
    if (row.reduction_pct) {
      detail::append_fixed(out, *row.reduction_pct, 1);
    } else {
      out.append("n/a");
    }
    out.push_back('\n');
  }
  return out;
}

void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path) {
  detail::write_file(path, format_comparison_csv(table));
}

std::string format_comparison_table(const ComparisonTable& table) {
  auto case_title = [](ScenarioCase c) -> std::string_view {
    switch (c) {
      case ScenarioCase::GridOnly:
        return "1) Utility grid only";
      case ScenarioCase::PvGrid:
        return "2) PV and utility grid";
      case ScenarioCase::PvGridBattery:
        return "3) PV, battery, and utility grid";
    }
    return "?";
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-34s %12s %12s %12s %12s %10s\n", "Case", "Peak (£)",
                "Off-peak (£)", "Export (£)", "Net (£)", "Reduction");
  out += line;
  for (const CaseRow& row : table.rows) {
    const std::string reduction =
        row.reduction_pct ? detail::fixed(*row.reduction_pct, 1) + "%" : std::string("-");
    std::snprintf(line, sizeof line, "%-34s %12s %12s %12s %12s %10s\n",
                  std::string(case_title(row.scenario)).c_str(),
                  detail::fixed(row.report.peak_import_cost, 2).c_str(),
                  detail::fixed(row.report.offpeak_import_cost, 2).c_str(),
                  detail::fixed(row.report.export_revenue, 2).c_str(),
                  detail::fixed(row.report.net_cost, 2).c_str(), reduction.c_str());
    out += line;
  }
  return out;
}

}  // namespace dispatchkit
