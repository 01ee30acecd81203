#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dispatchkit/dispatch.hpp"
#include "dispatchkit/tariff.hpp"

namespace dispatchkit {

/// Money in £. net_cost = peak_import_cost + offpeak_import_cost - export_revenue.
struct CostReport {
  double peak_import_cost = 0.0;
  double offpeak_import_cost = 0.0;
  double export_revenue = 0.0;
  double net_cost = 0.0;

  static CostReport from_components(double peak, double offpeak, double exported) {
    return {peak, offpeak, exported, peak + offpeak - exported};
  }
};

/// Imports (grid_to_load) priced at the slot's import rate into the peak or
/// off-peak bucket, exports (pv_to_grid) at the export rate.
CostReport cost_of_trace(const DispatchTrace& trace, const TariffSchedule& tariff);

struct CaseRow {
  ScenarioCase scenario;
  CostReport report;
  /// 100 * (net_grid - net_case) / net_grid; empty for the GridOnly row, when
  /// no GridOnly row is present, or when its net cost is 0.
  std::optional<double> reduction_pct;
};

struct ComparisonTable {
  std::vector<CaseRow> rows;
};

ComparisonTable compare_cases(const std::vector<std::pair<ScenarioCase, CostReport>>& reports);

/// Report CSV: `case,peak_cost,offpeak_cost,export_revenue,net_cost,reduction_pct`,
/// two-decimal money, one-decimal percent, "n/a" for an empty reduction.
std::string format_comparison_csv(const ComparisonTable& table);
void write_comparison_csv(const ComparisonTable& table, const std::filesystem::path& path);

/// Human-readable table for the terminal.
std::string format_comparison_table(const ComparisonTable& table);

}  // namespace dispatchkit
