#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace dispatchkit::cli {

struct GenerateOptions {
  std::string kind = "load";
  std::uint64_t seed = 0;
  std::filesystem::path out;
};

struct SystemOptions {
  std::optional<std::filesystem::path> load;
  std::optional<std::filesystem::path> pv;
  std::optional<std::filesystem::path> tariff;
  std::optional<std::filesystem::path> battery;
  std::filesystem::path out_dir = ".";
};

struct SimulateOptions {
  SystemOptions system;
  std::string cases = "all";
  bool parallel_cases = false;
};

struct ForecastOptions {
  int epochs = 50;
  int hidden = 32;
  std::string split = "chrono";
  std::uint64_t seed = 0;
  bool quiet = false;
};

struct TrainOptions {
  SystemOptions system;
  ForecastOptions forecast;
};

struct PredictOptions {
  std::filesystem::path model;
  std::filesystem::path history;
  std::optional<int> day;
  std::filesystem::path out;
};

struct EvaluateOptions {
  SystemOptions system;
  ForecastOptions forecast;
  std::string forecaster = "lstm";
  std::optional<std::filesystem::path> load_model;
  std::optional<std::filesystem::path> pv_model;
};

struct ReportOptions {
  SystemOptions system;
};

// Each returns the process exit status; errors are reported on stderr.
int run_generate(const GenerateOptions& o);
int run_simulate(const SimulateOptions& o);
int run_train(const TrainOptions& o);
int run_predict(const PredictOptions& o);
int run_evaluate_predictive(const EvaluateOptions& o);
int run_report(const ReportOptions& o);

}  // namespace dispatchkit::cli
