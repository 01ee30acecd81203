#include <doctest.h>

#include <cmath>
#include <vector>

#include "dispatchkit/adam.hpp"
#include "dispatchkit/lstm.hpp"
#include "dispatchkit/rng.hpp"
#include "oracles/finite_difference.hpp"

using namespace dispatchkit;
using namespace dispatchkit::forecast;

namespace {

std::vector<double> random_vector(Rng& rng, std::size_t n, double lo = 0.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

LstmParams random_params(LstmDims dims, Rng& rng, double scale) {
  LstmParams p = LstmParams::zeros(dims);
  for (auto& t : p.tensors()) {
    for (double& w : t.data) w = rng.uniform(-scale, scale);
  }
  return p;
}

LstmState scalar_state(double h, double c) {
  LstmState s = LstmState::zeros(1);
  s.h[0] = h;
  s.c[0] = c;
  return s;
}

}  // namespace

TEST_CASE("cell_step hand evaluations") {
  const LstmParams zero = LstmParams::zeros({1, 1, 1});
  const double x = 0.0;

  const LstmState a = cell_step(zero, scalar_state(0.0, 1.0), {&x, 1});
  CHECK(a.c[0] == doctest::Approx(0.5));
  CHECK(a.h[0] == doctest::Approx(0.5 * std::tanh(0.5)));
  CHECK(a.h[0] == doctest::Approx(0.231059).epsilon(1e-6));

  const LstmState b = cell_step(zero, scalar_state(0.0, 0.0), {&x, 1});
  CHECK(b.c[0] == 0.0);
  CHECK(b.h[0] == 0.0);

  LstmParams remember = zero;
  remember.gate(Gate::Forget).bias[0] = 100.0;
  const LstmState c = cell_step(remember, scalar_state(0.0, 0.7), {&x, 1});
  CHECK(c.c[0] == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("cell_step bounds") {
  Rng rng(5);
  const LstmDims dims{2, 6, 3};
  for (int trial = 0; trial < 50; ++trial) {
    const LstmParams p = random_params(dims, rng, 5.0);
    LstmState s = LstmState::zeros(dims.hidden);
    for (int t = 0; t < 20; ++t) {
      const auto x = random_vector(rng, 2, -3.0, 3.0);
      const LstmState next = cell_step(p, s, x);
      for (int k = 0; k < dims.hidden; ++k) {
        REQUIRE(std::fabs(next.h[k]) <= 1.0);
        // |c'| <= |c| + 1 since f, i are in (0,1) and |g| <= 1.
        REQUIRE(std::fabs(next.c[k]) <= std::fabs(s.c[k]) + 1.0);
      }
      s = next;
    }
  }
}

TEST_CASE("cell_step rejects a wrong input width") {
  const LstmParams p = LstmParams::zeros({2, 3, 1});
  const std::vector<double> x{1.0};
  CHECK_THROWS(cell_step(p, LstmState::zeros(3), x));
}

TEST_CASE("forward of the zero network is the zero vector") {
  const LstmParams p = LstmParams::zeros({1, 8, 48});
  Rng rng(1);
  const auto input = random_vector(rng, 1392);
  const Eigen::VectorXd y = forward(p, input);
  REQUIRE(y.size() == 48);
  CHECK(y.isZero(0.0));
}

TEST_CASE("forward equals chained cell steps plus head") {
  Rng rng(2);
  const LstmParams p = LstmParams::initialize({1, 5, 7}, 17);
  const auto input = random_vector(rng, 40);
  LstmState s = LstmState::zeros(5);
  for (double x : input) s = cell_step(p, s, {&x, 1});
  const Eigen::VectorXd expected = p.head_weight * s.h + p.head_bias;
  const Eigen::VectorXd y = forward(p, input);
  CHECK((y - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("forward is deterministic, finite and 48 wide") {
  const LstmParams p = LstmParams::initialize({1, 16, 48}, 99);
  CHECK(p == LstmParams::initialize({1, 16, 48}, 99));
  CHECK_FALSE(p == LstmParams::initialize({1, 16, 48}, 100));
  Rng rng(3);
  const auto input = random_vector(rng, 1392);
  const Eigen::VectorXd a = forward(p, input);
  const Eigen::VectorXd b = forward(p, input);
  REQUIRE(a.size() == 48);
  CHECK(a == b);
  CHECK(a.allFinite());
}

TEST_CASE("initialize ranges") {
  const LstmParams p = LstmParams::initialize({1, 16, 48}, 4, 1.0);
  CHECK(p.shapes_consistent());
  CHECK(p.parameter_count() == 4 * (16 + 16 * 16 + 16) + 48 * 16 + 48);
  const double bound = 1.0 / std::sqrt(16.0);
  for (const auto& t : p.tensors()) {
    if (t.name == "forget.b") {
      for (double w : t.data) CHECK(w == 1.0);
    } else if (t.name == "head.b") {
      for (double w : t.data) CHECK(w == 0.0);
    } else {
      for (double w : t.data) CHECK(std::fabs(w) <= bound);
    }
  }
}

TEST_CASE("backward at the optimum has zero gradient") {
  const LstmParams p = LstmParams::zeros({1, 4, 6});
  const std::vector<double> input(12, 0.3);
  const std::vector<double> target(6, 0.0);
  const LossGradient lg = backward(p, input, target);
  CHECK(lg.loss == 0.0);
  CHECK(global_norm(lg.grad) == 0.0);
}

TEST_CASE("backward agrees with central differences") {
  Rng rng(11);
  for (int trial = 0; trial < 6; ++trial) {
    const int hidden = 1 + static_cast<int>(rng.below(4));
    const int steps = 1 + static_cast<int>(rng.below(8));
    const LstmDims dims{1, hidden, 3};
    const LstmParams p = random_params(dims, rng, 0.5);
    const auto input = random_vector(rng, static_cast<std::size_t>(steps));
    const auto target = random_vector(rng, 3);
    const LossGradient lg = backward(p, input, target);
    CHECK(lg.loss == doctest::Approx(mse_loss(forward(p, input), target)));
    const oracle::GradientCheck check = oracle::check_gradient(p, input, target, lg.grad);
    CHECK(check.checked == p.parameter_count());
    CHECK(check.max_rel_error < 1e-4);
  }
}

TEST_CASE("doubling the loss doubles the gradient") {
  Rng rng(12);
  const LstmDims dims{1, 3, 4};
  const LstmParams p = random_params(dims, rng, 0.4);
  const auto input = random_vector(rng, 6);
  const auto target = random_vector(rng, 4);
  const LossGradient once = backward(p, input, target);
  LstmParams twice = LstmParams::zeros(dims);
  accumulate(twice, once.grad);
  accumulate(twice, backward(p, input, target).grad);
  const auto a = once.grad.tensors();
  const auto b = twice.tensors();
  for (std::size_t k = 0; k < a.size(); ++k) {
    for (std::size_t j = 0; j < a[k].data.size(); ++j) {
      CHECK(b[k].data[j] == doctest::Approx(2.0 * a[k].data[j]));
    }
  }
}

TEST_CASE("dropout mask of ones changes nothing, zeros cut the head gradient") {
  Rng rng(13);
  const LstmDims dims{1, 3, 2};
  const LstmParams p = random_params(dims, rng, 0.4);
  const auto input = random_vector(rng, 5);
  const auto target = random_vector(rng, 2);
  const LossGradient plain = backward(p, input, target);
  const std::vector<double> ones(3, 1.0);
  const LossGradient masked = backward(p, input, target, ones);
  CHECK(masked.loss == plain.loss);
  CHECK(global_norm(masked.grad) == doctest::Approx(global_norm(plain.grad)));

  const std::vector<double> zeros(3, 0.0);
  const LossGradient cut = backward(p, input, target, zeros);
  CHECK(cut.grad.head_weight.isZero(0.0));
  CHECK(cut.grad.gate(Gate::Input).recurrent.isZero(0.0));
}

TEST_CASE("global norm clipping") {
  LstmParams g = LstmParams::zeros({1, 1, 1});
  g.head_bias[0] = 3.0;
  g.head_weight(0, 0) = 4.0;
  CHECK(global_norm(g) == doctest::Approx(5.0));
  CHECK(clip_global_norm(g, 10.0) == doctest::Approx(5.0));
  CHECK(g.head_bias[0] == 3.0);
  CHECK(clip_global_norm(g, 1.0) == doctest::Approx(5.0));
  CHECK(global_norm(g) == doctest::Approx(1.0));
  CHECK(g.head_bias[0] == doctest::Approx(0.6));
  clip_global_norm(g, 0.0);
  CHECK(global_norm(g) == doctest::Approx(1.0));
}

TEST_CASE("adam_step") {
  const LstmDims dims{1, 1, 1};
  const AdamConfig config;

  SUBCASE("zero gradient leaves params and moments alone") {
    LstmParams p = LstmParams::initialize(dims, 3);
    const LstmParams before = p;
    AdamState state = AdamState::zeros(dims);
    adam_step(state, p, LstmParams::zeros(dims), config);
    CHECK(p == before);
    CHECK(state.m == LstmParams::zeros(dims));
    CHECK(state.v == LstmParams::zeros(dims));
  }

  SUBCASE("first step moves by the learning rate against the gradient sign") {
    LstmParams p = LstmParams::zeros(dims);
    LstmParams g = LstmParams::zeros(dims);
    g.head_bias[0] = 1.0;
    g.head_weight(0, 0) = -1.0;
    AdamState state = AdamState::zeros(dims);
    adam_step(state, p, g, config);
    CHECK(state.step == 1);
    CHECK(p.head_bias[0] == doctest::Approx(-0.001 / (1.0 + 1e-8)).epsilon(1e-12));
    CHECK(p.head_weight(0, 0) == doctest::Approx(0.001).epsilon(1e-6));
    CHECK(p.gate(Gate::Forget).bias[0] == 0.0);
  }
}
