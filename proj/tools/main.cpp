#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using namespace dispatchkit::cli;

// --seed wins; otherwise DISPATCHKIT_SEED; otherwise 0.
std::uint64_t seed_fallback() {
  if (const char* env = std::getenv("DISPATCHKIT_SEED"); env != nullptr && *env != '\0') {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring non-numeric DISPATCHKIT_SEED='" << env << "'\n";
    }
  }
  return 0;
}

void add_system_options(CLI::App* cmd, SystemOptions& s) {
  cmd->add_option("--load", s.load, "Load series CSV (day,slot,kw)");
  cmd->add_option("--pv", s.pv, "PV series CSV (day,slot,kw)");
  cmd->add_option("--tariff", s.tariff, "Tariff key=value file (defaults apply when omitted)");
  cmd->add_option("--battery", s.battery, "Battery key=value file (defaults apply when omitted)");
  cmd->add_option("--out-dir", s.out_dir, "Output directory")->capture_default_str();
}

void add_forecast_options(CLI::App* cmd, ForecastOptions& f) {
  cmd->add_option("--epochs", f.epochs, "Training epochs")->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--hidden", f.hidden, "LSTM hidden size")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--split", f.split, "Train/validation split")
      ->capture_default_str()
      ->check(CLI::IsMember({"chrono", "random"}));
  cmd->add_option("--seed", f.seed, "Seed (falls back to DISPATCHKIT_SEED)");
  cmd->add_flag("--quiet", f.quiet, "Do not print per-epoch losses");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dispatchkit: PV + battery dispatch under a time-of-use tariff, with LSTM day-ahead forecasting"};
  app.require_subcommand(1);

  const std::uint64_t default_seed = seed_fallback();

  GenerateOptions gen;
  gen.seed = default_seed;
  auto* generate = app.add_subcommand("generate", "Write a synthetic year series CSV");
  generate->add_option("--kind", gen.kind, "load, pv or sinusoid")
      ->capture_default_str()
      ->check(CLI::IsMember({"load", "pv", "sinusoid"}));
  generate->add_option("--seed", gen.seed, "Seed (falls back to DISPATCHKIT_SEED)");
  generate->add_option("--out", gen.out, "Output CSV path")->required();

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Run the dispatch cases and price them");
  add_system_options(simulate, sim.system);
  simulate->add_option("--case", sim.cases, "grid, pv, pv-batt or all")
      ->capture_default_str()
      ->check(CLI::IsMember({"grid", "pv", "pv-batt", "all"}));
  simulate->add_flag("--parallel-cases", sim.parallel_cases, "Run cases on separate threads");

  TrainOptions tr;
  tr.forecast.seed = default_seed;
  auto* train = app.add_subcommand("train", "Train day-ahead LSTM forecasters");
  add_system_options(train, tr.system);
  add_forecast_options(train, tr.forecast);

  PredictOptions pr;
  auto* predict = app.add_subcommand("predict", "Forecast one day from 29 days of history");
  predict->add_option("--model", pr.model, "Model file written by train")->required();
  predict->add_option("--history", pr.history, "History CSV (day,slot,kw) of whole days")->required();
  predict->add_option("--day", pr.day, "Target day; history is then days day-29..day-1 of the file");
  predict->add_option("--out", pr.out, "Output CSV path")->required();

  EvaluateOptions ev;
  ev.forecast.seed = default_seed;
  auto* evaluate = app.add_subcommand(
      "evaluate-predictive", "Dispatch on forecasts, settle on actuals, compare to perfect information");
  add_system_options(evaluate, ev.system);
  add_forecast_options(evaluate, ev.forecast);
  evaluate->add_option("--forecaster", ev.forecaster, "lstm, oracle or zero")
      ->capture_default_str()
      ->check(CLI::IsMember({"lstm", "oracle", "zero"}));
  evaluate->add_option("--load-model", ev.load_model, "Use a trained load model instead of training");
  evaluate->add_option("--pv-model", ev.pv_model, "Use a trained PV model instead of training");

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Re-price trace CSVs written by simulate");
  add_system_options(report, rep.system);

  CLI11_PARSE(app, argc, argv);

  if (*generate) return run_generate(gen);
  if (*simulate) return run_simulate(sim);
  if (*train) return run_train(tr);
  if (*predict) return run_predict(pr);
  if (*evaluate) return run_evaluate_predictive(ev);
  if (*report) return run_report(rep);
  return 1;
}
