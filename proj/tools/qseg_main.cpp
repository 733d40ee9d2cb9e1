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

// qseg command-line entry point.

#include <cstdio>
#include <iostream>
#include <map>
#include <regex>
#include <string>

#include "CLI11.hpp"
#include "qseg/datasets.hpp"
#include "qseg/experiment.hpp"
#include "qseg/io.hpp"
#include "qseg/verify.hpp"

namespace {

// Parses "WxH" into rows and columns.
void parse_bas_dims(const std::string& text, int& rows, int& cols) {
  static const std::regex pattern(R"((\d+)[xX](\d+))");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) throw CLI::ValidationError("--bas", "expected WxH, e.g. 3x3");
  cols = std::stoi(m[1]);
  rows = std::stoi(m[2]);
}

int report_verification(const qseg::VerifyOptions& opts) {
  const auto checks = qseg::run_verification(opts);
  for (const auto& c : checks) {
    std::printf("[%s] %s%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(), c.passed ? "" : ": ",
                c.passed ? "" : c.detail.c_str());
  }
  const bool ok = qseg::all_passed(checks);
  std::printf("%s\n", ok ? "verification passed" : "verification FAILED");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph-cut image segmentation with QAOA on a statevector simulator"};
  app.require_subcommand(0, 1);
  bool verify_flag = false;
  app.add_flag("--verify", verify_flag, "Run the verification suite and exit");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a bars-and-stripes corpus (PGM + JSON sidecars)");
  std::string gen_bas = "3x3";
  double gen_noise = 0.2;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--bas", gen_bas, "Image size WxH")->capture_default_str();
  gen->add_option("--noise", gen_noise, "Maximum uniform intensity noise")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output directory")->required();

  // segment
  auto* seg = app.add_subcommand("segment", "Segment a corpus and write per-run reports");
  qseg::ExperimentConfig cfg;
  std::string method = "maxflow";
  std::string opt = "bayes";
  std::string bas;
  std::string input;
  std::string out;
  std::string model;
  std::string side;
  std::string winner = "frequent";
  std::string estimator = "exact";
  int iters = 0;
  std::uint64_t shots = 1024;
  double lr = 0.0;
  bool eq6 = false;
  double noise = 0.0;
  double sigma = 0.0;
  double lambda = 0.0;
  seg->add_option("--method", method, "maxflow or ncut")
      ->check(CLI::IsMember({"maxflow", "ncut"}))
      ->capture_default_str();
  seg->add_option("--p", cfg.depth, "QAOA depth")->check(CLI::PositiveNumber)->capture_default_str();
  seg->add_option("--opt", opt, "bayes or adam")->check(CLI::IsMember({"bayes", "adam"}))->capture_default_str();
  auto* noise_opt = seg->add_option("--noise", noise, "Per-Pauli noise probability")->check(CLI::Range(0.0, 1.0 / 3));
  seg->add_option("--runs", cfg.runs, "Runs per image")->check(CLI::PositiveNumber)->capture_default_str();
  seg->add_option("--shots", shots, "Measurement shots")->check(CLI::PositiveNumber)->capture_default_str();
  seg->add_option("--iters", iters, "Optimizer evaluations (Bayes) or steps (Adam); default 60 / 100")
      ->check(CLI::PositiveNumber);
  seg->add_option("--seed", cfg.seed, "Top-level random seed")->capture_default_str();
  auto* sigma_opt = seg->add_option("--sigma", sigma, "n-link similarity scale")->check(CLI::PositiveNumber);
  auto* lambda_opt = seg->add_option("--lambda", lambda, "t-link weight factor")->check(CLI::PositiveNumber);
  auto* bas_opt = seg->add_option("--bas", bas, "Generate a WxH bars-and-stripes corpus");
  auto* input_opt = seg->add_option("--input", input, "Corpus directory")->check(CLI::ExistingDirectory);
  bas_opt->excludes(input_opt);
  seg->add_option("--bas-noise", cfg.dataset.bas_noise, "Intensity noise for --bas")->capture_default_str();
  seg->add_option("--out", out, "Report directory");
  seg->add_flag("--oracle-only", cfg.oracle_only, "Classical oracle rows only");
  seg->add_flag("--eq6", eq6, "Normalized cuts with the spin-product cost form");
  seg->add_option("--model", model, "Terminal histogram JSON")->check(CLI::ExistingFile);
  seg->add_option("--side", side, "Crop side for vessel anchoring: left or right")
      ->check(CLI::IsMember({"left", "right"}));
  seg->add_option("--winner", winner, "frequent or probability")
      ->check(CLI::IsMember({"frequent", "probability"}))
      ->capture_default_str();
  seg->add_option("--estimator", estimator, "exact or sampled objective")
      ->check(CLI::IsMember({"exact", "sampled"}))
      ->capture_default_str();
  seg->add_option("--trajectories", cfg.noise_trajectories, "Noise trajectories per objective evaluation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  seg->add_option("--lr", lr, "Adam learning rate")->check(CLI::PositiveNumber);
  seg->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

  // summarize
  auto* sum = app.add_subcommand("summarize", "Recompute a summary table from per-run reports");
  std::string sum_dir;
  sum->add_option("dir", sum_dir, "Report directory")->required()->check(CLI::ExistingDirectory);

  // verify
  auto* ver = app.add_subcommand("verify", "Run cross-oracle and invariant checks");
  qseg::VerifyOptions vopts;
  ver->add_flag("--corrupt-weight-sign", vopts.corrupt_weight_sign, "Sabotage Hamiltonian weights (self-test)");
  ver->add_option("--seed", vopts.seed, "Seed for randomized checks")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_flag || ver->parsed()) return report_verification(vopts);

    if (gen->parsed()) {
      int rows = 0;
      int cols = 0;
      parse_bas_dims(gen_bas, rows, cols);
      const auto items = qseg::generate_bas(rows, cols, gen_noise, gen_seed);
      qseg::write_corpus(gen_out, items, gen_noise, gen_seed);
      std::printf("wrote %zu images to %s\n", items.size(), gen_out.c_str());
      return 0;
    }

    if (sum->parsed()) {
      std::cout << qseg::format_table({qseg::summarize_from_dir(sum_dir)});
      return 0;
    }

    if (seg->parsed()) {
      cfg.method = method == "maxflow" ? qseg::Method::kMaxflow : qseg::Method::kNcut;
      cfg.optimizer = opt == "adam" ? qseg::OptimizerConfig::adam_defaults() : qseg::OptimizerConfig::bayesian_defaults();
      if (iters > 0) cfg.optimizer.max_iters = iters;
      if (lr > 0.0) cfg.optimizer.adam.learning_rate = lr;
      cfg.optimizer.shots = shots;
      if (*noise_opt) cfg.noise = noise;
      if (*sigma_opt) cfg.sigma = sigma;
      if (*lambda_opt) cfg.lambda = lambda;
      if (!bas.empty()) {
        parse_bas_dims(bas, cfg.dataset.bas_rows, cfg.dataset.bas_cols);
      } else if (!input.empty()) {
        cfg.dataset.input_dir = input;
      } else {
        throw CLI::RequiredError("--bas or --input");
      }
      cfg.out_dir = out;
      if (!model.empty()) cfg.terminal_model = model;
      if (!side.empty()) cfg.anchor_side = side == "left" ? qseg::CropSide::kLeft : qseg::CropSide::kRight;
      cfg.ncut_mode = eq6 ? qseg::NcutMode::kSpinProduct : qseg::NcutMode::kExact;
      cfg.winner_rule = winner == "frequent" ? qseg::WinnerRule::kMostFrequent : qseg::WinnerRule::kMaxProbability;
      cfg.estimator = estimator == "exact" ? qseg::Estimator::kExact : qseg::Estimator::kSampled;
      const auto result = qseg::run_experiment(cfg);
      std::cout << qseg::format_table({result.summary});
      return 0;
    }

    std::cout << app.help();
    return 0;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "qseg: %s\n", e.what());
    return 2;
  }
}
