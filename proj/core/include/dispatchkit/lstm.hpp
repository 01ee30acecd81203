#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace dispatchkit::forecast {

enum class Gate { Forget = 0, Input = 1, Output = 2, Candidate = 3 };

inline constexpr std::array<std::string_view, 4> kGateNames{"forget", "input", "output",
                                                            "candidate"};

struct LstmDims {
  int input = 1;
  int hidden = 32;
  int output = 48;

  friend bool operator==(const LstmDims&, const LstmDims&) = default;
};

struct GateWeights {
  Eigen::MatrixXd input;      // hidden x input
  Eigen::MatrixXd recurrent;  // hidden x hidden
  Eigen::VectorXd bias;       // hidden
};

/// Named flat view of one parameter array (column-major for matrices).
struct TensorView {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::span<double> data;
};

struct ConstTensorView {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::span<const double> data;
};

/// One LSTM layer followed by a dense head applied to the last hidden state.
/// Also used as the gradient and ADAM-moment container, since those share
/// its shape.
struct LstmParams {
  LstmDims dims;
  std::array<GateWeights, 4> gates;
  Eigen::MatrixXd head_weight;  // output x hidden
  Eigen::VectorXd head_bias;    // output

  static LstmParams zeros(LstmDims dims);

  /// Uniform in [-1/sqrt(H), 1/sqrt(H)] from the seeded generator, forget
  /// bias set to `forget_bias`, head bias zero.
  static LstmParams initialize(LstmDims dims, std::uint64_t seed, double forget_bias = 1.0);

  GateWeights& gate(Gate g) { return gates[static_cast<std::size_t>(g)]; }
  const GateWeights& gate(Gate g) const { return gates[static_cast<std::size_t>(g)]; }

  /// Order: per gate (forget, input, output, candidate) W, U, b; then head W, b.
  std::vector<TensorView> tensors();
  std::vector<ConstTensorView> tensors() const;

  std::size_t parameter_count() const;
  bool all_finite() const;
  bool shapes_consistent() const;

  friend bool operator==(const LstmParams& a, const LstmParams& b);
};

struct LstmState {
  Eigen::VectorXd h;
  Eigen::VectorXd c;

  static LstmState zeros(int hidden) {
    return {Eigen::VectorXd::Zero(hidden), Eigen::VectorXd::Zero(hidden)};
  }
};

/// f, i, o = sigmoid(W x + U h + b); g = tanh(W_c x + U_c h + b_c);
/// c' = f*c + i*g; h' = o*tanh(c').
LstmState cell_step(const LstmParams& params, const LstmState& state,
                    std::span<const double> x);

/// Runs the cell over `input` (steps * dims.input values, time-major) from a
/// zero state and applies the head to the final hidden state.
Eigen::VectorXd forward(const LstmParams& params, std::span<const double> input);

/// Mean squared error over the output vector.
double mse_loss(const Eigen::VectorXd& prediction, std::span<const double> target);

struct LossGradient {
  double loss = 0.0;
  Eigen::VectorXd prediction;
  LstmParams grad;
};

/// Full backpropagation through time of mse_loss. When `dropout_mask` is
/// non-empty it multiplies the final hidden state before the head (inverted
/// dropout: the mask already carries the 1/(1-p) scale).
LossGradient backward(const LstmParams& params, std::span<const double> input,
                      std::span<const double> target,
                      std::span<const double> dropout_mask = {});

/// this += scale * other, tensor by tensor.
void accumulate(LstmParams& into, const LstmParams& other, double scale = 1.0);

double global_norm(const LstmParams& grad);

/// Rescales `grad` in place so its global L2 norm is at most `max_norm`.
/// Returns the norm before clipping. max_norm <= 0 disables clipping.
double clip_global_norm(LstmParams& grad, double max_norm);

}  // namespace dispatchkit::forecast
