#include "dispatchkit/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dispatchkit/errors.hpp"
#include "dispatchkit/rng.hpp"

namespace dispatchkit::forecast {

SplitMode parse_split(std::string_view name) {
  if (name == "chrono") return SplitMode::Chronological;
  if (name == "random") return SplitMode::Random;
  throw Error("unknown split '" + std::string(name) + "' (expected chrono or random)");
}

void TrainingConfig::validate() const {
  if (!(learning_rate > 0.0)) throw Error("learning_rate must be > 0");
  if (epochs < 0) throw Error("epochs must be >= 0");
  if (batch_size != 1) throw Error("only batch_size = 1 is supported");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw Error("train_fraction must be in (0, 1)");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0 && adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw Error("ADAM betas must be in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw Error("adam_eps must be > 0");
  if (hidden_dim < 1) throw Error("hidden_dim must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw Error("dropout must be in [0, 1)");
}

namespace {

void shuffle_in_place(std::vector<std::size_t>& order, Rng& rng) {
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.below(i)]);
  }
}

}  // namespace

double evaluate_mse(const LstmParams& params, std::span<const WindowSample> samples) {
  if (samples.empty()) return 0.0;
  double sum = 0.0;
  for (const WindowSample& s : samples) sum += mse_loss(forward(params, s.input), s.target);
  return sum / static_cast<double>(samples.size());
}

TrainedModel train(const YearSeries& series, const TrainingConfig& config,
                   const std::function<void(const EpochLoss&)>& on_epoch) {
  config.validate();
  Rng rng(config.seed);

  // Target days 30..365 in chronological order, then split.
  std::vector<std::size_t> order(kWindowCount);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (config.split == SplitMode::Random) shuffle_in_place(order, rng);
  const auto n_train = static_cast<std::size_t>(std::floor(config.train_fraction * kWindowCount));
  std::vector<std::size_t> train_idx(order.begin(), order.begin() + static_cast<long>(n_train));
  std::vector<std::size_t> val_idx(order.begin() + static_cast<long>(n_train), order.end());

  // Normalizer sees only days touched by training windows (history + target).
  std::vector<bool> covered(kDaysPerYear + 1, false);
  for (std::size_t w : train_idx) {
    const int target = kHistoryDays + 1 + static_cast<int>(w);
    for (int d = target - kHistoryDays; d <= target; ++d) covered[static_cast<std::size_t>(d)] = true;
  }
  std::vector<double> fit_values;
  for (int d = 1; d <= kDaysPerYear; ++d) {
    if (!covered[static_cast<std::size_t>(d)]) continue;
    const auto day = series.day(d);
    fit_values.insert(fit_values.end(), day.begin(), day.end());
  }

  TrainedModel model;
  model.normalizer = Normalizer::fit(fit_values);
  const std::vector<WindowSample> windows = make_windows(series, model.normalizer);
  std::vector<WindowSample> train_set;
  std::vector<WindowSample> val_set;
  for (std::size_t w : train_idx) {
    train_set.push_back(windows[w]);
    model.train_days.push_back(windows[w].target_day);
  }
  for (std::size_t w : val_idx) {
    val_set.push_back(windows[w]);
    model.val_days.push_back(windows[w].target_day);
  }

  const LstmDims dims{1, config.hidden_dim, kSlotsPerDay};
  model.params = LstmParams::initialize(dims, rng.next(), config.forget_bias);
  AdamState adam = AdamState::zeros(dims);
  const AdamConfig adam_config = config.adam();

  auto record = [&](int epoch) {
    EpochLoss loss{epoch, evaluate_mse(model.params, train_set), evaluate_mse(model.params, val_set)};
    model.history.push_back(loss);
    if (on_epoch) on_epoch(loss);
  };
  record(0);

  std::vector<std::size_t> visit(train_set.size());
  std::iota(visit.begin(), visit.end(), std::size_t{0});
  std::vector<double> mask;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    if (config.shuffle) shuffle_in_place(visit, rng);
    for (std::size_t s : visit) {
      mask.clear();
      if (config.dropout > 0.0) {
        const double keep = 1.0 - config.dropout;
        mask.resize(static_cast<std::size_t>(dims.hidden));
        for (double& m : mask) m = rng.uniform() < keep ? 1.0 / keep : 0.0;
      }
      LossGradient lg = backward(model.params, train_set[s].input, train_set[s].target, mask);
      clip_global_norm(lg.grad, config.clip_norm);
      adam_step(adam, model.params, lg.grad, adam_config);
    }
    if (!model.params.all_finite()) throw Error("training diverged: non-finite parameters");
    record(epoch);
  }
  return model;
}

std::vector<double> predict_day(const LstmParams& params, const Normalizer& normalizer,
                                std::span<const double> history) {
  if (history.size() < static_cast<std::size_t>(kHistorySlots)) {
    throw InsufficientHistory("insufficient history: need " + std::to_string(kHistoryDays) +
                              " days (" + std::to_string(kHistorySlots) + " samples), got " +
                              std::to_string(history.size()) + " samples");
  }
  const auto recent = history.last(static_cast<std::size_t>(kHistorySlots));
  std::vector<double> input(recent.size());
  std::transform(recent.begin(), recent.end(), input.begin(),
                 [&](double v) { return std::clamp(normalizer.normalize(v), 0.0, 1.0); });
  const Eigen::VectorXd y = forward(params, input);
  std::vector<double> out(static_cast<std::size_t>(y.size()));
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    out[static_cast<std::size_t>(k)] = std::max(0.0, normalizer.denormalize(y[k]));
  }
  return out;
}

}  // namespace dispatchkit::forecast
