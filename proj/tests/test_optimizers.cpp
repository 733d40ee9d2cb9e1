// Copyright 2026 The qseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qseg/optimizers.hpp"

using namespace qseg;
using std::numbers::pi;

namespace {

double bump(std::span<const double> x) { return std::cos(x[0] - 1.0) + std::cos(x[1] - 2.0); }

double periodic_se(double a, double b, double l, double period) {
  const double s = std::sin(pi * (a - b) / period);
  return std::exp(-2.0 * s * s / (l * l));
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(OptimizerConfig::bayesian_defaults().validate());
  CHECK_NOTHROW(OptimizerConfig::adam_defaults().validate());
  CHECK(OptimizerConfig::bayesian_defaults().max_iters == 60);
  CHECK(OptimizerConfig::bayesian_defaults().shots == 1024);

  auto c = OptimizerConfig::adam_defaults();
  c.adam.learning_rate = 0.0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = OptimizerConfig::bayesian_defaults();
  c.max_iters = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = OptimizerConfig::bayesian_defaults();
  c.shots = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("expected improvement") {
  using detail::expected_improvement;
  CHECK(expected_improvement(1.0, 0.0, 1.0, 0.0) == 0.0);
  CHECK(expected_improvement(2.0, 0.0, 1.0, 0.0) == doctest::Approx(1.0));
  // At mean == best the closed form reduces to stddev / sqrt(2 pi).
  CHECK(expected_improvement(1.0, 0.5, 1.0, 0.0) == doctest::Approx(0.5 / std::sqrt(2.0 * pi)));
  CHECK(expected_improvement(0.0, 1.0, 0.0, 0.0) < expected_improvement(0.0, 2.0, 0.0, 0.0));
  CHECK(expected_improvement(0.0, 1.0, 0.0, 0.5) < expected_improvement(0.0, 1.0, 0.0, 0.0));
}

TEST_CASE("periodic kernel") {
  const detail::GaussianProcess gp({{0.0}, {1.0}}, std::vector<double>{1.0, 3.0}, {0.7}, 2.0 * pi);
  const double a[] = {0.3};
  const double b[] = {0.3 + 2.0 * pi};
  const double c[] = {1.4};
  CHECK(gp.kernel(a, a) == doctest::Approx(1.0));
  CHECK(gp.kernel(a, b) == doctest::Approx(1.0));
  CHECK(gp.kernel(a, c) == doctest::Approx(periodic_se(0.3, 1.4, 0.7, 2.0 * pi)));
  CHECK(gp.kernel(a, c) == doctest::Approx(gp.kernel(c, a)));
}

TEST_CASE("posterior matches the two-point closed form") {
  const double l = 0.9;
  const double noise = 1e-3;
  const detail::GaussianProcess gp({{0.0}, {1.0}}, std::vector<double>{1.0, 3.0}, {l}, 2.0 * pi, noise);
  // Standardized targets are -1 and +1 with mean 2 and scale 1.
  const double k12 = periodic_se(0.0, 1.0, l, 2.0 * pi);
  const double d = 1.0 + noise;
  const double det = d * d - k12 * k12;
  for (double q : {0.0, 0.4, 2.5, 5.0}) {
    const double k1 = periodic_se(q, 0.0, l, 2.0 * pi);
    const double k2 = periodic_se(q, 1.0, l, 2.0 * pi);
    // K^-1 = [d, -k12; -k12, d] / det
    const double w1 = (d * k1 - k12 * k2) / det;
    const double w2 = (-k12 * k1 + d * k2) / det;
    const double mean = 2.0 + (-w1 + w2);
    const double var = 1.0 - (w1 * k1 + w2 * k2);
    const double x[] = {q};
    const auto p = gp.predict(x);
    CHECK(p.mean == doctest::Approx(mean).epsilon(1e-9));
    CHECK(p.stddev == doctest::Approx(std::sqrt(std::max(var, 0.0))).epsilon(1e-6));
  }
  CHECK(gp.y_scale() == doctest::Approx(1.0));
}

TEST_CASE("lengthscale arguments") {
  CHECK_THROWS_AS(detail::GaussianProcess({{0.0, 0.0}}, std::vector<double>{1.0}, {1.0, 1.0, 1.0}, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(detail::GaussianProcess({{0.0}}, std::vector<double>{1.0}, {0.0}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(detail::GaussianProcess({}, std::vector<double>{}, {1.0}, 1.0), std::invalid_argument);
}

TEST_CASE("hyperparameter fit prefers a short scale on the rough axis") {
  Rng rng(3);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 40; ++i) {
    const double a = uniform(rng, 0, 2 * pi);
    const double b = uniform(rng, 0, 2 * pi);
    x.push_back({a, b});
    y.push_back(std::sin(a) + std::sin(6.0 * b));
  }
  const auto fit = detail::fit_gp_hyperparameters(x, y, 2 * pi);
  REQUIRE(fit.lengthscales.size() == 2);
  CHECK(fit.lengthscales[1] < fit.lengthscales[0]);
  CHECK(fit.jitter > 0.0);
}

TEST_CASE("Adam climbs a smooth bump") {
  Rng rng(1);
  AdamConfig cfg;
  const auto r = maximize_adam(bump, 2, cfg, 200, rng);
  CHECK(r.trace.size() == 200);
  CHECK(r.best_value > 1.99);
  CHECK(r.best_value == doctest::Approx(bump(r.best_x)));
}

TEST_CASE("Bayesian optimization uses exactly its budget") {
  int calls = 0;
  auto counted = [&](std::span<const double> x) {
    ++calls;
    return bump(x);
  };
  Rng rng(2);
  const auto r = maximize_bayesian(counted, 2, BayesianConfig{}, 40, rng);
  CHECK(calls == 40);
  CHECK(r.evaluations == 40);
  CHECK(r.trace.size() == 40);
  CHECK(r.best_value > 1.95);
  for (double v : r.best_x) {
    CHECK(v >= 0.0);
    CHECK(v < 2 * pi);
  }
}

TEST_CASE("fixed lengthscale path") {
  BayesianConfig cfg;
  cfg.kernel_lengthscale = 1.0;
  Rng rng(4);
  const auto r = maximize_bayesian(bump, 2, cfg, 40, rng);
  CHECK(r.best_value > 1.9);
}

TEST_CASE("a one-qubit QAOA landscape is solved by both optimizers") {
  // F(gamma, beta) = (1 + sin 2 gamma sin beta) / 2 has maximum 1.
  auto f = [](std::span<const double> x) { return 0.5 * (1.0 + std::sin(2.0 * x[0]) * std::sin(x[1])); };
  for (auto kind : {OptimizerKind::kBayesian, OptimizerKind::kAdam}) {
    auto cfg = kind == OptimizerKind::kBayesian ? OptimizerConfig::bayesian_defaults() : OptimizerConfig::adam_defaults();
    cfg.rng_seed = 10;
    const auto r = maximize(f, 2, cfg);
    CHECK(r.best_value >= 0.99);
  }
}

TEST_CASE("optimizers are deterministic per seed") {
  auto cfg = OptimizerConfig::bayesian_defaults();
  cfg.max_iters = 25;
  cfg.rng_seed = 99;
  const auto a = maximize(bump, 2, cfg);
  const auto b = maximize(bump, 2, cfg);
  CHECK(a.trace == b.trace);
  cfg.rng_seed = 100;
  CHECK(maximize(bump, 2, cfg).trace != a.trace);
}
