#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "dispatchkit/lstm.hpp"
#include "dispatchkit/trainer.hpp"
#include "dispatchkit/window.hpp"

namespace dispatchkit::forecast {

struct ModelFile {
  LstmParams params;
  Normalizer normalizer;
};

/// Text container: a magic line, dims, normalizer, then one line per tensor
/// (`name rows cols v...`). Doubles are written as hex floats so a
/// write/read round-trip is bit-exact.
std::string format_model(const ModelFile& model);
ModelFile parse_model(std::string_view text);
void write_model(const ModelFile& model, const std::filesystem::path& path);
ModelFile read_model(const std::filesystem::path& path);

/// `epoch,train_mse,val_mse`
std::string format_loss_history(std::span<const EpochLoss> history);
void write_loss_history(std::span<const EpochLoss> history, const std::filesystem::path& path);

}  // namespace dispatchkit::forecast
