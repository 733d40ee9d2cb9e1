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

#ifndef QSEG_EXPERIMENT_HPP_
#define QSEG_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qseg/datasets.hpp"
#include "qseg/hamiltonian.hpp"
#include "qseg/optimizers.hpp"
#include "qseg/qaoa.hpp"

namespace qseg {

enum class Method { kMaxflow, kNcut };

std::string to_string(Method m);
std::string to_string(OptimizerKind k);

struct DatasetSpec {
  /// Generated bars and stripes when rows > 0, otherwise a corpus directory.
  int bas_rows = 0;
  int bas_cols = 0;
  double bas_noise = 0.2;
  std::filesystem::path input_dir;
};

struct ExperimentConfig {
  Method method = Method::kMaxflow;
  int depth = 1;
  OptimizerConfig optimizer = OptimizerConfig::bayesian_defaults();
  /// Per-Pauli probability; unset means noiseless.
  std::optional<double> noise;
  int noise_trajectories = 8;
  int runs = 1;
  DatasetSpec dataset;
  /// Reports are written here when non-empty.
  std::filesystem::path out_dir;
  std::uint64_t seed = 0;
  /// Override the terminal model's values (or the built-in defaults).
  std::optional<double> sigma;
  std::optional<double> lambda;
  /// Histogram JSON; binary-threshold terminals when unset.
  std::optional<std::filesystem::path> terminal_model;
  /// Orients normalized-cut outputs toward a known vessel boundary instead of
  /// scoring both labellings.
  std::optional<CropSide> anchor_side;
  bool oracle_only = false;
  NcutMode ncut_mode = NcutMode::kExact;
  WinnerRule winner_rule = WinnerRule::kMostFrequent;
  Estimator estimator = Estimator::kExact;
  /// Worker threads; 0 uses the hardware concurrency.
  int threads = 0;

  void validate() const;
};

struct ImageOutcome {
  std::string id;
  std::string winner;  ///< full register bitstring
  std::string predicted_mask;
  double dice = 0.0;
  double objective = 0.0;
  double wall_time_s = 0.0;
  std::vector<double> gamma;
  std::vector<double> beta;
  std::vector<double> trace;
  Histogram histogram;
};

struct RunOutcome {
  int run = 0;
  double dice_mean = 0.0;
  std::vector<ImageOutcome> images;
};

struct ExperimentSummary {
  std::string dims;
  std::string algorithm;
  std::string optimizer;
  int depth = 1;
  std::optional<double> noise;
  int images = 0;
  std::vector<double> run_means;
  double dice_mean = 0.0;
  /// Population standard deviation of the per-run means.
  double dice_std = 0.0;
};

struct ExperimentResult {
  std::vector<RunOutcome> runs;
  ExperimentSummary summary;
};

std::vector<LabeledImage> load_dataset(const DatasetSpec& spec, std::uint64_t seed);

/// Terminal model used for maxflow graphs under `cfg`.
TerminalModel experiment_terminal_model(const ExperimentConfig& cfg);

ExperimentResult run_experiment(const ExperimentConfig& cfg);
ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<LabeledImage>& images);

/// Mean and population standard deviation of per-run means.
void finalize_summary(ExperimentSummary& s);

/// Rebuilds the summary of an output directory from its per-run JSON files.
ExperimentSummary summarize_from_dir(const std::filesystem::path& out_dir);

/// Aligned text table with Dims, Algorithm, Dice mu, Dice sigma and Opt columns.
std::string format_table(const std::vector<ExperimentSummary>& rows);

}  // namespace qseg

#endif  // QSEG_EXPERIMENT_HPP_
