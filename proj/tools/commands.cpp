#include "commands.hpp"

#include <array>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <thread>
#include <vector>

#include "dispatchkit/battery.hpp"
#include "dispatchkit/cost.hpp"
#include "dispatchkit/dispatch.hpp"
#include "dispatchkit/errors.hpp"
#include "dispatchkit/model_io.hpp"
#include "dispatchkit/predictive.hpp"
#include "dispatchkit/series.hpp"
#include "dispatchkit/synthetic.hpp"
#include "dispatchkit/tariff.hpp"
#include "dispatchkit/trainer.hpp"

namespace dispatchkit::cli {

namespace fs = std::filesystem;
using forecast::TrainingConfig;

namespace {

/// Runs `body`, mapping every library error to a message and exit status 1.
template <class F>
int guarded(const char* command, F&& body) {
  try {
    body();
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "dispatchkit " << command << ": error: " << e.what() << '\n';
    return 1;
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw IoError("cannot write " + path.string());
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

TariffSchedule tariff_of(const SystemOptions& s) {
  return s.tariff ? load_tariff(*s.tariff) : TariffSchedule{};
}

BatterySpec battery_of(const SystemOptions& s) {
  BatterySpec spec = s.battery ? load_battery(*s.battery) : BatterySpec{};
  spec.validate();
  return spec;
}

YearSeries require_series(const std::optional<fs::path>& path, SeriesKind kind, const char* flag) {
  if (!path) throw Error(std::string(flag) + " is required");
  return load_series(*path, kind);
}

std::vector<ScenarioCase> selected_cases(const std::string& name) {
  if (name == "all") return {kAllCases.begin(), kAllCases.end()};
  const auto c = parse_case(name);
  if (!c) throw Error("unknown case '" + name + "'");
  return {*c};
}

TrainingConfig training_config(const ForecastOptions& f) {
  TrainingConfig config;
  config.epochs = f.epochs;
  config.hidden_dim = f.hidden;
  config.split = forecast::parse_split(f.split);
  config.seed = f.seed;
  return config;
}

forecast::TrainedModel train_series(const YearSeries& series, const ForecastOptions& f) {
  const std::string label(to_string(series.kind()));
  auto progress = [&](const forecast::EpochLoss& e) {
    if (f.quiet) return;
    std::cerr << "[" << label << "] epoch " << e.epoch << "  train_mse=" << e.train_mse
              << "  val_mse=" << e.val_mse << '\n';
  };
  return forecast::train(series, training_config(f), progress);
}

fs::path trace_path(const fs::path& dir, ScenarioCase c) {
  return dir / ("trace_" + std::string(to_string(c)) + ".csv");
}

void print_and_write_report(const std::vector<std::pair<ScenarioCase, CostReport>>& reports,
                            const fs::path& out_dir) {
  const ComparisonTable table = compare_cases(reports);
  write_comparison_csv(table, out_dir / "report.csv");
  std::cout << format_comparison_table(table);
}

}  // namespace

int run_generate(const GenerateOptions& o) {
  return guarded("generate", [&] {
    const YearSeries series = generate_synthetic(o.seed, parse_synthetic_profile(o.kind));
    write_series(series, o.out);
    std::cout << "wrote " << series.size() << " samples to " << o.out.string() << '\n';
  });
}

int run_simulate(const SimulateOptions& o) {
  return guarded("simulate", [&] {
    const auto cases = selected_cases(o.cases);
    const TariffSchedule tariff = tariff_of(o.system);
    const BatterySpec spec = battery_of(o.system);
    const YearSeries load = require_series(o.system.load, SeriesKind::Load, "--load");
    const bool needs_pv = cases.size() > 1 || cases.front() != ScenarioCase::GridOnly;
    const YearSeries pv = needs_pv || o.system.pv
                              ? require_series(o.system.pv, SeriesKind::Pv, "--pv")
                              : YearSeries(SeriesKind::Pv, std::vector<double>(kSlotsPerYear, 0.0));
    ensure_dir(o.system.out_dir);

    std::vector<DispatchTrace> traces(cases.size());
    auto run = [&](std::size_t k) { traces[k] = run_scenario(cases[k], tariff, spec, load, pv); };
    if (o.parallel_cases) {
      std::vector<std::exception_ptr> errors(cases.size());
      std::vector<std::thread> workers;
      for (std::size_t k = 0; k < cases.size(); ++k) {
        workers.emplace_back([&, k] {
          try {
            run(k);
          } catch (...) {
            errors[k] = std::current_exception();
          }
        });
      }
      for (auto& w : workers) w.join();
      for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    } else {
      for (std::size_t k = 0; k < cases.size(); ++k) run(k);
    }

    for (std::size_t k = 0; k < cases.size(); ++k) {
      verify_trace(traces[k], cases[k], tariff, spec, load.values(), pv.values());
    }
    std::vector<std::pair<ScenarioCase, CostReport>> reports;
    for (std::size_t k = 0; k < cases.size(); ++k) {
      write_trace(traces[k], trace_path(o.system.out_dir, cases[k]));
      reports.emplace_back(cases[k], cost_of_trace(traces[k], tariff));
    }
    print_and_write_report(reports, o.system.out_dir);
  });
}

int run_report(const ReportOptions& o) {
  return guarded("report", [&] {
    const TariffSchedule tariff = tariff_of(o.system);
    const BatterySpec spec = battery_of(o.system);
    std::vector<std::pair<ScenarioCase, CostReport>> reports;
    for (ScenarioCase c : kAllCases) {
      const fs::path path = trace_path(o.system.out_dir, c);
      if (!fs::exists(path)) continue;
      reports.emplace_back(c, cost_of_trace(load_trace(path, spec.soc_init_kwh()), tariff));
    }
    if (reports.empty()) {
      throw Error("no trace_*.csv files in " + o.system.out_dir.string());
    }
    print_and_write_report(reports, o.system.out_dir);
  });
}

int run_train(const TrainOptions& o) {
  return guarded("train", [&] {
    if (!o.system.load && !o.system.pv) throw Error("pass --load and/or --pv");
    ensure_dir(o.system.out_dir);
    for (const auto& [path, kind] : {std::pair{o.system.load, SeriesKind::Load},
                                     std::pair{o.system.pv, SeriesKind::Pv}}) {
      if (!path) continue;
      const YearSeries series = load_series(*path, kind);
      const forecast::TrainedModel model = train_series(series, o.forecast);
      const std::string label(to_string(kind));
      forecast::write_model({model.params, model.normalizer},
                            o.system.out_dir / ("model_" + label + ".txt"));
      forecast::write_loss_history(model.history, o.system.out_dir / ("loss_" + label + ".csv"));
      const auto& last = model.history.back();
      std::cout << label << ": epoch " << last.epoch << " train_mse=" << last.train_mse
                << " val_mse=" << last.val_mse << '\n';
    }
  });
}

int run_predict(const PredictOptions& o) {
  return guarded("predict", [&] {
    const forecast::ModelFile model = forecast::read_model(o.model);
    const DayBlock block = load_day_block(o.history);
    std::span<const double> history(block.samples);
    int target_day = block.first_day + block.day_count();
    if (o.day) {
      target_day = *o.day;
      const int end = target_day - block.first_day;  // days of the block before the target
      if (end < forecast::kHistoryDays || end > block.day_count()) {
        throw InsufficientHistory("insufficient history: day " + std::to_string(target_day) +
                                  " needs days " + std::to_string(target_day - forecast::kHistoryDays) +
                                  ".." + std::to_string(target_day - 1) + " in the history file");
      }
      history = history.first(static_cast<std::size_t>(end) * kSlotsPerDay);
    }
    const std::vector<double> day = forecast::predict_day(model.params, model.normalizer, history);

    std::string out = "day,slot,kw\n";
    for (std::size_t s = 0; s < day.size(); ++s) {
      char line[64];
      std::snprintf(line, sizeof line, "%d,%zu,%.6f\n", target_day, s, day[s]);
      out += line;
    }
    write_text(o.out, out);
  });
}

int run_evaluate_predictive(const EvaluateOptions& o) {
  return guarded("evaluate-predictive", [&] {
    const TariffSchedule tariff = tariff_of(o.system);
    const BatterySpec spec = battery_of(o.system);
    const YearSeries load = require_series(o.system.load, SeriesKind::Load, "--load");
    const YearSeries pv = require_series(o.system.pv, SeriesKind::Pv, "--pv");
    ensure_dir(o.system.out_dir);

    // Evaluate over the chronological validation tail: the last 20% of target days.
    const TrainingConfig config = training_config(o.forecast);
    const int n_train = static_cast<int>(std::floor(config.train_fraction * forecast::kWindowCount));
    const int first_day = forecast::kHistoryDays + 1 + n_train;

    std::vector<forecast::ModelFile> models;  // kept alive for the forecaster closures
    models.reserve(2);
    auto lstm_forecaster = [&](const YearSeries& series,
                               const std::optional<fs::path>& model_path) -> DayForecaster {
      if (model_path) {
        models.push_back(forecast::read_model(*model_path));
      } else {
        const forecast::TrainedModel trained = train_series(series, o.forecast);
        models.push_back({trained.params, trained.normalizer});
        const std::string label(to_string(series.kind()));
        forecast::write_model(models.back(), o.system.out_dir / ("model_" + label + ".txt"));
        forecast::write_loss_history(trained.history, o.system.out_dir / ("loss_" + label + ".csv"));
      }
      const forecast::ModelFile* m = &models.back();
      return [m, &series](int day) {
        return forecast::predict_day(m->params, m->normalizer,
                                     series.days(day - forecast::kHistoryDays, forecast::kHistoryDays));
      };
    };

    DayForecaster load_fc;
    DayForecaster pv_fc;
    if (o.forecaster == "oracle") {
      load_fc = oracle_forecaster(load);
      pv_fc = oracle_forecaster(pv);
    } else if (o.forecaster == "zero") {
      load_fc = oracle_forecaster(load);
      pv_fc = zero_forecaster();
    } else {
      load_fc = lstm_forecaster(load, o.load_model);
      pv_fc = lstm_forecaster(pv, o.pv_model);
    }

    const PredictiveResult result =
        evaluate_predictive(tariff, spec, load, pv, first_day, kDaysPerYear, load_fc, pv_fc);
    write_text(o.system.out_dir / "predictive.csv", format_predictive_csv(result));
    write_trace(result.realized, o.system.out_dir / "trace_forecast.csv");
    write_trace(result.perfect, o.system.out_dir / "trace_perfect.csv");

    std::printf("days %d..%d (%s forecaster)\n", result.first_day, result.last_day,
                o.forecaster.c_str());
    std::printf("  forecast-scheduled net cost: %10.2f\n", result.forecast_cost.net_cost);
    std::printf("  perfect-information net cost: %9.2f\n", result.perfect_cost.net_cost);
    std::printf("  gap: %33.2f\n", result.gap());
  });
}

}  // namespace dispatchkit::cli
