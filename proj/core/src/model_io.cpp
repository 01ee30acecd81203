#include "dispatchkit/model_io.hpp"

#include <string>

#include "dispatchkit/errors.hpp"
#include "text_util.hpp"

namespace dispatchkit::forecast {

namespace {

constexpr std::string_view kMagic = "dispatchkit-lstm v1";

std::vector<std::string_view> words(std::string_view line) {
  std::vector<std::string_view> out;
  for (std::string_view w : detail::split(line, ' ')) {
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

// "key=value" with an integer value.
int int_field(std::string_view word, std::string_view key, std::size_t row) {
  int v = 0;
  if (word.substr(0, key.size()) != key || word.size() <= key.size() || word[key.size()] != '=' ||
      !detail::parse_number(word.substr(key.size() + 1), v)) {
    throw ParseError(row, "expected " + std::string(key) + "=<int>");
  }
  return v;
}

double hex_field(std::string_view word, std::string_view key, std::size_t row) {
  double v = 0.0;
  if (word.substr(0, key.size()) != key || word.size() <= key.size() || word[key.size()] != '=' ||
      !detail::parse_hex_double(word.substr(key.size() + 1), v)) {
    throw ParseError(row, "expected " + std::string(key) + "=<hex float>");
  }
  return v;
}

}  // namespace

std::string format_model(const ModelFile& model) {
  const LstmParams& p = model.params;
  std::string out(kMagic);
  out += "\ndims input=" + std::to_string(p.dims.input) + " hidden=" + std::to_string(p.dims.hidden) +
         " output=" + std::to_string(p.dims.output) + "\n";
  out += "normalizer min=";
  detail::append_hex(out, model.normalizer.min_kw);
  out += " max=";
  detail::append_hex(out, model.normalizer.max_kw);
  out += '\n';
  for (const ConstTensorView& t : p.tensors()) {
    out += "tensor " + t.name + " " + std::to_string(t.rows) + " " + std::to_string(t.cols);
    for (double v : t.data) {
      out += ' ';
      detail::append_hex(out, v);
    }
    out += '\n';
  }
  return out;
}

ModelFile parse_model(std::string_view text) {
  const auto lines = detail::split_lines(text);
  if (lines.size() < 3 || lines[0] != kMagic) throw ParseError(1, "not a dispatchkit model file");

  const auto dims_words = words(lines[1]);
  if (dims_words.size() != 4 || dims_words[0] != "dims") throw ParseError(2, "expected dims line");
  LstmDims dims{int_field(dims_words[1], "input", 2), int_field(dims_words[2], "hidden", 2),
                int_field(dims_words[3], "output", 2)};
  if (dims.input < 1 || dims.hidden < 1 || dims.output < 1) throw ParseError(2, "invalid dims");

  const auto norm_words = words(lines[2]);
  if (norm_words.size() != 3 || norm_words[0] != "normalizer") {
    throw ParseError(3, "expected normalizer line");
  }
  ModelFile model;
  model.normalizer = {hex_field(norm_words[1], "min", 3), hex_field(norm_words[2], "max", 3)};
  if (!(model.normalizer.max_kw > model.normalizer.min_kw)) {
    throw ParseError(3, "normalizer max must exceed min");
  }

  model.params = LstmParams::zeros(dims);
  auto tensors = model.params.tensors();
  if (lines.size() != 3 + tensors.size()) {
    throw ParseError(0, "expected " + std::to_string(tensors.size()) + " tensors, found " +
                            std::to_string(lines.size() - 3));
  }
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const std::size_t row = k + 4;
    const auto w = words(lines[k + 3]);
    TensorView& t = tensors[k];
    long rows = 0;
    long cols = 0;
    if (w.size() < 4 || w[0] != "tensor" || w[1] != t.name || !detail::parse_number(w[2], rows) ||
        !detail::parse_number(w[3], cols)) {
      throw ParseError(row, "expected tensor " + t.name);
    }
    if (rows != t.rows || cols != t.cols || w.size() != 4 + t.data.size()) {
      throw ParseError(row, "tensor " + t.name + " has the wrong shape");
    }
    for (std::size_t j = 0; j < t.data.size(); ++j) {
      if (!detail::parse_hex_double(w[4 + j], t.data[j])) {
        throw ParseError(row, "bad number in tensor " + t.name);
      }
    }
  }
  if (!model.params.all_finite()) throw ParseError(0, "model contains non-finite weights");
  return model;
}

void write_model(const ModelFile& model, const std::filesystem::path& path) {
  detail::write_file(path, format_model(model));
}

ModelFile read_model(const std::filesystem::path& path) {
  try {
    return parse_model(detail::read_file(path));
  } catch (const ParseError& e) {
    throw e.in_file(path.string());
  }
}

std::string format_loss_history(std::span<const EpochLoss> history) {
  std::string out = "epoch,train_mse,val_mse\n";
  for (const EpochLoss& e : history) {
    out += std::to_string(e.epoch);
    out += ',';
    detail::append_scientific(out, e.train_mse, 9);
    out += ',';
    detail::append_scientific(out, e.val_mse, 9);
    out += '\n';
  }
  return out;
}

void write_loss_history(std::span<const EpochLoss> history, const std::filesystem::path& path) {
  detail::write_file(path, format_loss_history(history));
}

}  // namespace dispatchkit::forecast
