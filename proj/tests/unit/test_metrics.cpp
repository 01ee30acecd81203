#include <doctest.h>

#include <cmath>
#include <vector>

#include "dispatchkit/errors.hpp"
#include "dispatchkit/metrics.hpp"
#include "dispatchkit/rng.hpp"

using namespace dispatchkit;

TEST_CASE("perfect prediction") {
  const std::vector<double> y{1.0, 2.0, 3.0, 4.0};
  const FitReport r = evaluate_fit(y, y);
  CHECK(r.mse == 0.0);
  CHECK(r.rmse == 0.0);
  REQUIRE(r.r2.has_value());
  CHECK(*r.r2 == 1.0);
}

TEST_CASE("predicting the mean gives R2 = 0") {
  const std::vector<double> y{1.0, 2.0, 3.0, 6.0};
  const std::vector<double> mean(4, 3.0);
  const FitReport r = evaluate_fit(y, mean);
  CHECK(r.mse == doctest::Approx(14.0 / 4.0));
  CHECK(*r.r2 == doctest::Approx(0.0));
}

TEST_CASE("hand example") {
  const std::vector<double> y{0.0, 1.0};
  const std::vector<double> p{1.0, 1.0};
  const FitReport r = evaluate_fit(y, p);
  CHECK(r.mse == doctest::Approx(0.5));
  CHECK(r.rmse == doctest::Approx(std::sqrt(0.5)));
  CHECK(*r.r2 == doctest::Approx(-1.0));
}

TEST_CASE("constant truth leaves R2 undefined") {
  const std::vector<double> y(5, 0.7);
  const std::vector<double> p{0.6, 0.7, 0.8, 0.7, 0.7};
  const FitReport r = evaluate_fit(y, p);
  CHECK_FALSE(r.r2.has_value());
  CHECK(r.mse == doctest::Approx(0.02 / 5.0));
}

TEST_CASE("argument errors") {
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(evaluate_fit(a, b), Error);
  const std::vector<double> one{1.0};
  CHECK_THROWS_AS(evaluate_fit(one, one), Error);
}

TEST_CASE("identities on random vectors") {
  Rng rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + rng.below(100);
    std::vector<double> y(n);
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = rng.uniform(-5.0, 5.0);
      p[i] = rng.uniform(-5.0, 5.0);
    }
    const FitReport r = evaluate_fit(y, p);
    CHECK(r.mse >= 0.0);
    CHECK(r.rmse == doctest::Approx(std::sqrt(r.mse)));
    REQUIRE(r.r2.has_value());
    CHECK(*r.r2 <= 1.0);
    CHECK(evaluate_fit(p, y).mse == doctest::Approx(r.mse));
  }
}
