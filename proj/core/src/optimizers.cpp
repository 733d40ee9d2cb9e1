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

#include "qseg/optimizers.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace qseg {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kLengthscaleGrid[] = {0.05, 0.1, 0.2, 0.35, 0.6, 1.0, 1.7, 3.0};
constexpr std::array<double, 4> kJitterGrid = {1e-6, 1e-3, 1e-2, 1e-1};
constexpr int kArdSweeps = 2;

double wrap(double v, double period) {
  double r = std::fmod(v, period);
  if (r < 0.0) r += period;
  return r;
}

struct Recorder {
  const ObjectiveFn& f;
  OptimizationResult result;

  double operator()(std::span<const double> x) {
    const double v = f(x);
    result.trace.push_back(v);
    ++result.evaluations;
    if (result.best_x.empty() || v > result.best_value) {
      result.best_value = v;
      result.best_x.assign(x.begin(), x.end());
    }
    return v;
  }
};

}  // namespace

OptimizerConfig OptimizerConfig::bayesian_defaults() {
  OptimizerConfig c;
  c.kind = OptimizerKind::kBayesian;
  c.max_iters = 60;
  return c;
}

OptimizerConfig OptimizerConfig::adam_defaults() {
  OptimizerConfig c;
  c.kind = OptimizerKind::kAdam;
  c.max_iters = 100;
  return c;
}

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("optimizer needs at least one iteration");
  if (shots < 1) throw std::invalid_argument("at least one shot is required");
  if (kind == OptimizerKind::kAdam) {
    if (!(adam.learning_rate > 0.0) || !(adam.fd_step > 0.0)) {
      throw std::invalid_argument("Adam learning rate and finite-difference step must be positive");
    }
    if (adam.beta1 < 0.0 || adam.beta1 >= 1.0 || adam.beta2 < 0.0 || adam.beta2 >= 1.0) {
      throw std::invalid_argument("Adam moment decay rates must lie in [0, 1)");
    }
  } else {
    if (bayes.init_samples < 1) throw std::invalid_argument("Bayesian optimizer needs an initial sample");
    if (!(bayes.period > 0.0)) throw std::invalid_argument("search period must be positive");
    if (bayes.acquisition_candidates < 1 || bayes.acquisition_restarts < 0) {
      throw std::invalid_argument("invalid acquisition settings");
    }
  }
}

OptimizationResult maximize_adam(const ObjectiveFn& f, int dim, const AdamConfig& cfg, int iterations, Rng& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Recorder rec{f, {}};
  std::vector<double> x(static_cast<std::size_t>(dim));
  for (auto& v : x) v = uniform(rng, 0.0, cfg.init_high);
  std::vector<double> m(x.size(), 0.0);
  std::vector<double> v2(x.size(), 0.0);
  std::vector<double> probe = x;
  std::vector<double> grad(x.size());

  for (int t = 1; t <= iterations; ++t) {
    rec(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      probe = x;
      probe[i] = x[i] + cfg.fd_step;
      const double up = f(probe);
      probe[i] = x[i] - cfg.fd_step;
      const double down = f(probe);
      grad[i] = (up - down) / (2.0 * cfg.fd_step);
    }
    const double c1 = 1.0 - std::pow(cfg.beta1, t);
    const double c2 = 1.0 - std::pow(cfg.beta2, t);
    for (std::size_t i = 0; i < x.size(); ++i) {
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * grad[i];
      v2[i] = cfg.beta2 * v2[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
      x[i] += cfg.learning_rate * (m[i] / c1) / (std::sqrt(v2[i] / c2) + cfg.epsilon);
    }
  }
  return std::move(rec.result);
}

namespace detail {

double expected_improvement(double mean, double stddev, double best, double xi) {
  const double gain = mean - best - xi;
  if (stddev <= 1e-12) return std::max(gain, 0.0);
  const double z = gain / stddev;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * kPi);
  return gain * cdf + stddev * pdf;
}

GaussianProcess::GaussianProcess(std::vector<std::vector<double>> x, std::span<const double> y,
                                 std::vector<double> lengthscales, double period, double noise)
    : x_(std::move(x)), period_(period) {
  const auto n = static_cast<Eigen::Index>(x_.size());
  if (n == 0 || static_cast<std::size_t>(n) != y.size()) throw std::invalid_argument("GP needs matching data");
  const std::size_t d = x_.front().size();
  if (lengthscales.size() == 1) lengthscales.assign(d, lengthscales.front());
  if (lengthscales.size() != d) throw std::invalid_argument("one lengthscale per dimension expected");
  for (double l : lengthscales) {
    if (!(l > 0.0)) throw std::invalid_argument("lengthscales must be positive");
    inv_l2_.push_back(1.0 / (l * l));
  }
  sin_.reserve(x_.size() * d);
  cos_.reserve(x_.size() * d);
  for (const auto& p : x_) {
    if (p.size() != d) throw std::invalid_argument("GP inputs differ in dimension");
    for (double v : p) {
      sin_.push_back(std::sin(kPi * v / period_));
      cos_.push_back(std::cos(kPi * v / period_));
    }
  }
  y_mean_ = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : y) var += (v - y_mean_) * (v - y_mean_);
  var /= static_cast<double>(n);
  y_scale_ = var > 1e-24 ? std::sqrt(var) : 1.0;

  Eigen::MatrixXd k(n, n);
  Eigen::VectorXd ys(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    ys(i) = (y[static_cast<std::size_t>(i)] - y_mean_) / y_scale_;
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto row = static_cast<std::size_t>(i) * d;
      const double kij = kernel_to_train(&sin_[row], &cos_[row], static_cast<std::size_t>(j));
      k(i, j) = kij;
      k(j, i) = kij;
    }
    k(i, i) += noise;
  }
  Eigen::LLT<Eigen::MatrixXd> llt(k);
  if (llt.info() != Eigen::Success) throw std::runtime_error("GP covariance is not positive definite");
  const Eigen::VectorXd alpha = llt.solve(ys);
  const Eigen::MatrixXd l = llt.matrixL();

  alpha_.assign(alpha.data(), alpha.data() + n);
  chol_.resize(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) chol_[static_cast<std::size_t>(i * n + j)] = l(i, j);
  }
  log_ml_ = -0.5 * ys.dot(alpha) - l.diagonal().array().log().sum() - 0.5 * static_cast<double>(n) * std::log(2.0 * kPi);
}

double GaussianProcess::kernel(std::span<const double> a, std::span<const double> b) const {
  // SE kernel on the embedding of each angle into the unit circle; the
  // lengthscale is measured as if the period were 2 pi.
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = std::sin(kPi * (a[i] - b[i]) / period_);
    acc += s * s * inv_l2_[i];
  }
  return std::exp(-2.0 * acc);
}

double GaussianProcess::kernel_to_train(const double* sin_x, const double* cos_x, std::size_t i) const {
  // sin(a - b) = sin a cos b - cos a sin b, on precomputed half-angles.
  const std::size_t d = inv_l2_.size();
  const double* si = &sin_[i * d];
  const double* ci = &cos_[i * d];
  double acc = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    const double s = sin_x[k] * ci[k] - cos_x[k] * si[k];
    acc += s * s * inv_l2_[k];
  }
  return std::exp(-2.0 * acc);
}

GaussianProcess::Prediction GaussianProcess::predict(std::span<const double> x) const {
  const std::size_t n = x_.size();
  const std::size_t d = inv_l2_.size();
  if (x.size() != d) throw std::invalid_argument("query dimension mismatch");
  std::vector<double> sx(d);
  std::vector<double> cx(d);
  for (std::size_t k = 0; k < d; ++k) {
    sx[k] = std::sin(kPi * x[k] / period_);
    cx[k] = std::cos(kPi * x[k] / period_);
  }
  std::vector<double> ks(n);
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ks[i] = kernel_to_train(sx.data(), cx.data(), i);
    mean += ks[i] * alpha_[i];
  }
  // Forward substitution L v = k*.
  double vv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = ks[i];
    const double* row = &chol_[i * n];
    for (std::size_t j = 0; j < i; ++j) s -= row[j] * ks[j];
    ks[i] = s / row[i];
    vv += ks[i] * ks[i];
  }
  const double var = std::max(1.0 - vv, 0.0);
  return {y_mean_ + y_scale_ * mean, y_scale_ * std::sqrt(var)};
}

GpHyperparameters fit_gp_hyperparameters(const std::vector<std::vector<double>>& x, std::span<const double> y,
                                         double period) {
  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> ls{kLengthscaleGrid[0]};
  double jitter = kJitterGrid.back();
  auto consider = [&](const std::vector<double>& trial_ls, double trial_jitter) {
    try {
      const GaussianProcess trial(x, y, trial_ls, period, trial_jitter);
      if (trial.log_marginal_likelihood() > best) {
        best = trial.log_marginal_likelihood();
        ls = trial_ls;
        jitter = trial_jitter;
      }
    } catch (const std::runtime_error&) {
      // numerically singular at this setting
    }
  };
  for (double l : kLengthscaleGrid) {
    for (double j : kJitterGrid) consider({l}, j);
  }
  const std::size_t d = x.front().size();
  if (d > 1) {
    ls.assign(d, ls.front());
    for (int sweep = 0; sweep < kArdSweeps; ++sweep) {
      for (std::size_t i = 0; i < d; ++i) {
        for (double l : kLengthscaleGrid) {
          auto trial = ls;
          trial[i] = l;
          consider(trial, jitter);
        }
      }
    }
  }
  return {ls, jitter};
}

}  // namespace detail

OptimizationResult maximize_bayesian(const ObjectiveFn& f, int dim, const BayesianConfig& cfg, int evaluations,
                                     Rng& rng) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  Recorder rec{f, {}};
  std::vector<std::vector<double>> xs;
  std::vector<double> ys;
  const auto d = static_cast<std::size_t>(dim);

  auto random_point = [&] {
    std::vector<double> p(d);
    for (auto& v : p) v = uniform(rng, 0.0, cfg.period);
    return p;
  };
  auto observe = [&](std::vector<double> p) {
    ys.push_back(rec(p));
    xs.push_back(std::move(p));
  };

  const int n_init = std::min(cfg.init_samples, evaluations);
  for (int i = 0; i < n_init; ++i) observe(random_point());

  detail::GpHyperparameters hyper;
  int steps = 0;
  while (static_cast<int>(xs.size()) < evaluations) {
    if (cfg.kernel_lengthscale > 0.0) {
      hyper.lengthscales = {cfg.kernel_lengthscale};
    } else if (steps % std::max(cfg.refit_every, 1) == 0) {
      hyper = detail::fit_gp_hyperparameters(xs, ys, cfg.period);
    }
    ++steps;
    std::optional<detail::GaussianProcess> gp;
    try {
      gp.emplace(xs, ys, hyper.lengthscales, cfg.period, hyper.jitter);
    } catch (const std::runtime_error&) {
      gp.emplace(xs, ys, hyper.lengthscales, cfg.period, kJitterGrid.back());
    }
    const double best = *std::max_element(ys.begin(), ys.end());
    const double xi = cfg.xi * gp->y_scale();
    auto acquisition = [&](std::span<const double> p) {
      const auto pred = gp->predict(p);
      return detail::expected_improvement(pred.mean, pred.stddev, best, xi);
    };

    // Random multistart: score candidates, refine the best few by compass search.
    std::vector<std::pair<double, std::vector<double>>> pool;
    pool.reserve(static_cast<std::size_t>(cfg.acquisition_candidates));
    for (int i = 0; i < cfg.acquisition_candidates; ++i) {
      auto p = random_point();
      const double a = acquisition(p);
      pool.emplace_back(a, std::move(p));
    }
    const auto restarts = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.acquisition_restarts, 1)),
                                                pool.size());
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(restarts), pool.end(),
                      [](const auto& l, const auto& r) { return l.first > r.first; });
    std::vector<double> chosen = pool.front().second;
    double chosen_value = pool.front().first;
    for (std::size_t r = 0; r < restarts; ++r) {
      std::vector<double> p = pool[r].second;
      double value = pool[r].first;
      double step = 0.05 * cfg.period;
      for (int halving = 0; halving < 6; ++halving) {
        bool improved = true;
        while (improved) {
          improved = false;
          for (std::size_t i = 0; i < d; ++i) {
            for (double sgn : {1.0, -1.0}) {
              std::vector<double> q = p;
              q[i] = wrap(q[i] + sgn * step, cfg.period);
              const double a = acquisition(q);
              if (a > value) {
                value = a;
                p = std::move(q);
                improved = true;
              }
            }
          }
        }
        step *= 0.5;
      }
      if (value > chosen_value) {
        chosen_value = value;
        chosen = p;
      }
    }
    observe(std::move(chosen));
  }
  return std::move(rec.result);
}

OptimizationResult maximize(const ObjectiveFn& f, int dim, const OptimizerConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.rng_seed);
  if (cfg.kind == OptimizerKind::kAdam) return maximize_adam(f, dim, cfg.adam, cfg.max_iters, rng);
  return maximize_bayesian(f, dim, cfg.bayes, cfg.max_iters, rng);
}

}  // namespace qseg
