#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "dispatchkit/adam.hpp"
#include "dispatchkit/lstm.hpp"
#include "dispatchkit/series.hpp"
#include "dispatchkit/window.hpp"

namespace dispatchkit::forecast {

enum class SplitMode { Chronological, Random };

SplitMode parse_split(std::string_view name);

struct TrainingConfig {
  double learning_rate = 0.001;
  int epochs = 50;
  int batch_size = 1;  // only 1 is supported
  double train_fraction = 0.8;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 0;
  int hidden_dim = 32;
  double clip_norm = 5.0;   // <= 0 disables
  double dropout = 0.0;     // on the final hidden state, training only
  double forget_bias = 1.0;
  SplitMode split = SplitMode::Chronological;
  bool shuffle = true;  // per-epoch sample order

  void validate() const;
  AdamConfig adam() const { return {learning_rate, adam_beta1, adam_beta2, adam_eps}; }
};

struct EpochLoss {
  int epoch = 0;
  double train_mse = 0.0;
  double val_mse = 0.0;

  friend bool operator==(const EpochLoss&, const EpochLoss&) = default;
};

struct TrainedModel {
  LstmParams params;
  Normalizer normalizer;
  std::vector<EpochLoss> history;  // epoch 0 is the untrained evaluation
  std::vector<int> train_days;     // target days, in split order
  std::vector<int> val_days;
};

/// Splits windows into train/validation, fits the normalizer on days covered
/// by training windows, and runs per-sample ADAM for `epochs` epochs.
/// Deterministic given config.seed.
TrainedModel train(const YearSeries& series, const TrainingConfig& config,
                   const std::function<void(const EpochLoss&)>& on_epoch = {});

/// Mean normalized MSE of `params` over `samples`.
double evaluate_mse(const LstmParams& params, std::span<const WindowSample> samples);

/// Day-ahead forecast in kW from the trailing kHistorySlots values of
/// `history`, clamped at 0. Throws InsufficientHistory on shorter input.
std::vector<double> predict_day(const LstmParams& params, const Normalizer& normalizer,
                                std::span<const double> history);

}  // namespace dispatchkit::forecast
