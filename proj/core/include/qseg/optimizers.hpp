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

#ifndef QSEG_OPTIMIZERS_HPP_
#define QSEG_OPTIMIZERS_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qseg/bits.hpp"

namespace qseg {

enum class OptimizerKind { kBayesian, kAdam };

struct AdamConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double fd_step = 1e-3;
  /// Initial coordinates are drawn uniformly from [0, init_high).
  double init_high = 3.141592653589793;
};

struct BayesianConfig {
  int init_samples = 10;
  /// Periodic squared-exponential lengthscale. A value <= 0 refits one
  /// lengthscale per angle and a jitter level each step by maximizing the GP
  /// marginal likelihood over fixed grids.
  double kernel_lengthscale = 0.0;
  /// Exploration margin in expected improvement, in units of the
  /// standardized objective.
  double xi = 0.01;
  /// Random candidates scored per acquisition step before local refinement.
  int acquisition_candidates = 256;
  int acquisition_restarts = 4;
  /// Hyperparameters are refitted every this many steps and reused between.
  int refit_every = 5;
  /// Search box is [0, period)^d and the kernel is periodic with this period.
  double period = 6.283185307179586;
};

struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kBayesian;
  int max_iters = 60;           ///< N1: objective evaluations (Bayesian) or steps (Adam)
  std::uint64_t shots = 1024;   ///< N2: final measurement shots
  AdamConfig adam;
  BayesianConfig bayes;
  std::uint64_t rng_seed = 0;

  static OptimizerConfig bayesian_defaults();
  static OptimizerConfig adam_defaults();
  void validate() const;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

struct OptimizationResult {
  std::vector<double> best_x;
  double best_value = 0.0;
  /// Objective at every evaluated iterate, in order.
  std::vector<double> trace;
  int evaluations = 0;
};

/// Gradient ascent with Adam moments and central finite differences.
/// Returns the best iterate seen.
OptimizationResult maximize_adam(const ObjectiveFn& f, int dim, const AdamConfig& cfg, int iterations, Rng& rng);

/// GP-EI maximization over [0, period)^dim with a periodic kernel.
/// Exactly `evaluations` calls to f.
OptimizationResult maximize_bayesian(const ObjectiveFn& f, int dim, const BayesianConfig& cfg, int evaluations,
                                     Rng& rng);

/// Dispatches on cfg.kind using an Rng seeded from cfg.rng_seed.
OptimizationResult maximize(const ObjectiveFn& f, int dim, const OptimizerConfig& cfg);

namespace detail {

/// Zero-mean GP with unit-amplitude periodic SE kernel on standardized data.
/// `lengthscales` holds one entry per dimension, or a single shared entry.
class GaussianProcess {
 public:
  GaussianProcess(std::vector<std::vector<double>> x, std::span<const double> y, std::vector<double> lengthscales,
                  double period, double noise = 1e-6);

  struct Prediction {
    double mean;
    double stddev;
  };
  /// Prediction in the original objective units.
  Prediction predict(std::span<const double> x) const;
  /// Log marginal likelihood of the standardized targets.
  double log_marginal_likelihood() const { return log_ml_; }
  double y_scale() const { return y_scale_; }
  double kernel(std::span<const double> a, std::span<const double> b) const;

 private:
  double kernel_to_train(const double* sin_x, const double* cos_x, std::size_t i) const;

  std::vector<std::vector<double>> x_;
  std::vector<double> inv_l2_;
  // sin and cos of pi * x / period per training point, row-major n x d.
  std::vector<double> sin_;
  std::vector<double> cos_;
  double period_;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
  double log_ml_ = 0.0;
  std::vector<double> alpha_;
  std::vector<double> chol_;  // lower-triangular, row-major n x n
};

double expected_improvement(double mean, double stddev, double best, double xi);

/// Marginal-likelihood fit over the lengthscale and jitter grids: a shared
/// lengthscale first, then coordinate sweeps over per-dimension values.
struct GpHyperparameters {
  std::vector<double> lengthscales;
  double jitter = 1e-6;
};

GpHyperparameters fit_gp_hyperparameters(const std::vector<std::vector<double>>& x, std::span<const double> y,
                                         double period);

}  // namespace detail

}  // namespace qseg

#endif  // QSEG_OPTIMIZERS_HPP_
