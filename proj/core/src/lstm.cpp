#include "dispatchkit/lstm.hpp"

#include <cmath>
#include <string>

#include "dispatchkit/errors.hpp"
#include "dispatchkit/rng.hpp"

namespace dispatchkit::forecast {

namespace {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

template <class Derived>
auto sigmoid(const Eigen::MatrixBase<Derived>& x) {
  return x.unaryExpr([](double v) { return sigmoid(v); });
}

template <class Derived>
auto tanh_of(const Eigen::MatrixBase<Derived>& x) {
  return x.unaryExpr([](double v) { return std::tanh(v); });
}

void check_input(const LstmParams& params, std::span<const double> input) {
  const auto in = static_cast<std::size_t>(params.dims.input);
  if (input.empty() || input.size() % in != 0) {
    throw ContractViolation("input length " + std::to_string(input.size()) +
                            " is not a positive multiple of input_dim " + std::to_string(in));
  }
}

Eigen::Map<const MatrixXd> as_columns(const LstmParams& params, std::span<const double> input) {
  const Index in = params.dims.input;
  return {input.data(), in, static_cast<Index>(input.size()) / in};
}

/// Forward pass that keeps everything backward needs. Column t of each
/// matrix belongs to step t; `h` and `c` carry an extra leading zero column.
struct Tape {
  std::array<MatrixXd, 4> act;  // gate activations f, i, o, g
  MatrixXd c;
  MatrixXd tanh_c;
  MatrixXd h;
};

Tape run_tape(const LstmParams& p, std::span<const double> input) {
  const Index hidden = p.dims.hidden;
  const auto x = as_columns(p, input);
  const Index steps = x.cols();

  Tape tape;
  std::array<MatrixXd, 4> pre;
  for (std::size_t k = 0; k < 4; ++k) {
    pre[k] = p.gates[k].input * x;
    pre[k].colwise() += p.gates[k].bias;
    tape.act[k].resize(hidden, steps);
  }
  tape.c = MatrixXd::Zero(hidden, steps + 1);
  tape.h = MatrixXd::Zero(hidden, steps + 1);
  tape.tanh_c.resize(hidden, steps);

  VectorXd z(hidden);
  for (Index t = 0; t < steps; ++t) {
    const auto h_prev = tape.h.col(t);
    for (std::size_t k = 0; k < 4; ++k) {
      z.noalias() = p.gates[k].recurrent * h_prev;
      z += pre[k].col(t);
      if (k == static_cast<std::size_t>(Gate::Candidate)) {
        tape.act[k].col(t) = tanh_of(z);
      } else {
        tape.act[k].col(t) = sigmoid(z);
      }
    }
    const auto f = tape.act[0].col(t);
    const auto i = tape.act[1].col(t);
    const auto o = tape.act[2].col(t);
    const auto g = tape.act[3].col(t);
    tape.c.col(t + 1) = f.cwiseProduct(tape.c.col(t)) + i.cwiseProduct(g);
    tape.tanh_c.col(t) = tanh_of(tape.c.col(t + 1));
    tape.h.col(t + 1) = o.cwiseProduct(tape.tanh_c.col(t));
  }
  return tape;
}

VectorXd apply_head(const LstmParams& p, const VectorXd& h) {
  return p.head_weight * h + p.head_bias;
}

}  // namespace

LstmParams LstmParams::zeros(LstmDims dims) {
  if (dims.input < 1 || dims.hidden < 1 || dims.output < 1) {
    throw ContractViolation("LSTM dimensions must be positive");
  }
  LstmParams p;
  p.dims = dims;
  for (auto& g : p.gates) {
    g.input = MatrixXd::Zero(dims.hidden, dims.input);
    g.recurrent = MatrixXd::Zero(dims.hidden, dims.hidden);
    g.bias = VectorXd::Zero(dims.hidden);
  }
  p.head_weight = MatrixXd::Zero(dims.output, dims.hidden);
  p.head_bias = VectorXd::Zero(dims.output);
  return p;
}

LstmParams LstmParams::initialize(LstmDims dims, std::uint64_t seed, double forget_bias) {
  LstmParams p = zeros(dims);
  Rng rng(seed);
  const double bound = 1.0 / std::sqrt(static_cast<double>(dims.hidden));
  for (TensorView& t : p.tensors()) {
    for (double& v : t.data) v = rng.uniform(-bound, bound);
  }
  p.gate(Gate::Forget).bias.setConstant(forget_bias);
  p.head_bias.setZero();
  return p;
}

std::vector<TensorView> LstmParams::tensors() {
  std::vector<TensorView> out;
  auto add = [&out](std::string name, auto& m) {
    out.push_back({std::move(name), m.rows(), m.cols(),
                   std::span<double>(m.data(), static_cast<std::size_t>(m.size()))});
  };
  for (std::size_t k = 0; k < 4; ++k) {
    const std::string prefix(kGateNames[k]);
    add(prefix + ".W", gates[k].input);
    add(prefix + ".U", gates[k].recurrent);
    add(prefix + ".b", gates[k].bias);
  }
  add("head.W", head_weight);
  add("head.b", head_bias);
  return out;
}

std::vector<ConstTensorView> LstmParams::tensors() const {
  std::vector<ConstTensorView> out;
  for (TensorView& t : const_cast<LstmParams*>(this)->tensors()) {
    out.push_back({std::move(t.name), t.rows, t.cols, t.data});
  }
  return out;
}

std::size_t LstmParams::parameter_count() const {
  std::size_t n = 0;
  for (const auto& t : tensors()) n += t.data.size();
  return n;
}

bool LstmParams::all_finite() const {
  for (const auto& t : tensors()) {
    for (double v : t.data) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

bool LstmParams::shapes_consistent() const {
  for (const auto& g : gates) {
    if (g.input.rows() != dims.hidden || g.input.cols() != dims.input) return false;
    if (g.recurrent.rows() != dims.hidden || g.recurrent.cols() != dims.hidden) return false;
    if (g.bias.size() != dims.hidden) return false;
  }
  return head_weight.rows() == dims.output && head_weight.cols() == dims.hidden &&
         head_bias.size() == dims.output;
}

bool operator==(const LstmParams& a, const LstmParams& b) {
  if (!(a.dims == b.dims)) return false;
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  for (std::size_t k = 0; k < ta.size(); ++k) {
    if (ta[k].rows != tb[k].rows || ta[k].cols != tb[k].cols) return false;
    if (!std::equal(ta[k].data.begin(), ta[k].data.end(), tb[k].data.begin())) return false;
  }
  return true;
}

LstmState cell_step(const LstmParams& p, const LstmState& state, std::span<const double> x) {
  if (!p.shapes_consistent() || x.size() != static_cast<std::size_t>(p.dims.input) ||
      state.h.size() != p.dims.hidden || state.c.size() != p.dims.hidden) {
    throw ContractViolation("cell_step: shape mismatch");
  }
  const Eigen::Map<const VectorXd> xv(x.data(), p.dims.input);
  auto pre = [&](Gate g) -> VectorXd {
    const GateWeights& w = p.gate(g);
    return w.input * xv + w.recurrent * state.h + w.bias;
  };
  const VectorXd f = sigmoid(pre(Gate::Forget));
  const VectorXd i = sigmoid(pre(Gate::Input));
  const VectorXd o = sigmoid(pre(Gate::Output));
  const VectorXd g = tanh_of(pre(Gate::Candidate));

  LstmState next;
  next.c = f.cwiseProduct(state.c) + i.cwiseProduct(g);
  next.h = o.cwiseProduct(tanh_of(next.c));
  return next;
}

Eigen::VectorXd forward(const LstmParams& params, std::span<const double> input) {
  if (!params.shapes_consistent()) throw ContractViolation("forward: inconsistent shapes");
  check_input(params, input);
  const Tape tape = run_tape(params, input);
  return apply_head(params, tape.h.col(tape.h.cols() - 1));
}

double mse_loss(const Eigen::VectorXd& prediction, std::span<const double> target) {
  if (static_cast<std::size_t>(prediction.size()) != target.size()) {
    throw ContractViolation("mse_loss: target length mismatch");
  }
  const Eigen::Map<const VectorXd> y(target.data(), prediction.size());
  return (prediction - y).squaredNorm() / static_cast<double>(prediction.size());
}

LossGradient backward(const LstmParams& p, std::span<const double> input,
                      std::span<const double> target, std::span<const double> dropout_mask) {
  if (!p.shapes_consistent()) throw ContractViolation("backward: inconsistent shapes");
  check_input(p, input);
  if (target.size() != static_cast<std::size_t>(p.dims.output)) {
    throw ContractViolation("backward: target length mismatch");
  }
  if (!dropout_mask.empty() && dropout_mask.size() != static_cast<std::size_t>(p.dims.hidden)) {
    throw ContractViolation("backward: dropout mask length mismatch");
  }

  const Index hidden = p.dims.hidden;
  const auto x = as_columns(p, input);
  const Index steps = x.cols();
  const Tape tape = run_tape(p, input);

  VectorXd h_last = tape.h.col(steps);
  const Eigen::Map<const VectorXd> mask(dropout_mask.data(),
                                        dropout_mask.empty() ? 0 : hidden);
  if (!dropout_mask.empty()) h_last = h_last.cwiseProduct(mask);

  LossGradient out;
  out.prediction = apply_head(p, h_last);
  out.loss = mse_loss(out.prediction, target);
  out.grad = LstmParams::zeros(p.dims);

  const Eigen::Map<const VectorXd> y(target.data(), p.dims.output);
  const VectorXd dy = (2.0 / static_cast<double>(p.dims.output)) * (out.prediction - y);
  out.grad.head_weight.noalias() = dy * h_last.transpose();
  out.grad.head_bias = dy;

  VectorXd dh = p.head_weight.transpose() * dy;
  if (!dropout_mask.empty()) dh = dh.cwiseProduct(mask);
  VectorXd dc = VectorXd::Zero(hidden);

  // Pre-activation gradients per gate, one column per step.
  std::array<MatrixXd, 4> dz;
  for (auto& m : dz) m.resize(hidden, steps);

  for (Index t = steps - 1; t >= 0; --t) {
    const auto f = tape.act[0].col(t);
    const auto i = tape.act[1].col(t);
    const auto o = tape.act[2].col(t);
    const auto g = tape.act[3].col(t);
    const auto tc = tape.tanh_c.col(t);

    const VectorXd d_o = dh.cwiseProduct(tc);
    dc += dh.cwiseProduct(o).cwiseProduct((1.0 - tc.array().square()).matrix());

    dz[0].col(t) = dc.cwiseProduct(tape.c.col(t)).cwiseProduct(f.cwiseProduct((1.0 - f.array()).matrix()));
    dz[1].col(t) = dc.cwiseProduct(g).cwiseProduct(i.cwiseProduct((1.0 - i.array()).matrix()));
    dz[2].col(t) = d_o.cwiseProduct(o.cwiseProduct((1.0 - o.array()).matrix()));
    dz[3].col(t) = dc.cwiseProduct(i).cwiseProduct((1.0 - g.array().square()).matrix());

    dc = dc.cwiseProduct(f);
    dh.setZero();
    for (std::size_t k = 0; k < 4; ++k) {
      dh.noalias() += p.gates[k].recurrent.transpose() * dz[k].col(t);
    }
  }

  const auto h_prev = tape.h.leftCols(steps);
  for (std::size_t k = 0; k < 4; ++k) {
    GateWeights& gk = out.grad.gates[k];
    gk.input.noalias() = dz[k] * x.transpose();
    gk.recurrent.noalias() = dz[k] * h_prev.transpose();
    gk.bias = dz[k].rowwise().sum();
  }
  return out;
}

void accumulate(LstmParams& into, const LstmParams& other, double scale) {
  auto a = into.tensors();
  const auto b = other.tensors();
  if (a.size() != b.size()) throw ContractViolation("accumulate: shape mismatch");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].data.size() != b[k].data.size()) throw ContractViolation("accumulate: shape mismatch");
    for (std::size_t j = 0; j < a[k].data.size(); ++j) a[k].data[j] += scale * b[k].data[j];
  }
}

double global_norm(const LstmParams& grad) {
  double sum = 0.0;
  for (const auto& t : grad.tensors()) {
    for (double v : t.data) sum += v * v;
  }
  return std::sqrt(sum);
}

double clip_global_norm(LstmParams& grad, double max_norm) {
  const double norm = global_norm(grad);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (auto& t : grad.tensors()) {
      for (double& v : t.data) v *= scale;
    }
  }
  return norm;
}

}  // namespace dispatchkit::forecast
