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

#include "qseg/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qseg/imagegraph.hpp"
#include "qseg/io.hpp"
#include "qseg/oracles.hpp"

namespace qseg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string algorithm_label(const ExperimentConfig& cfg) {
  std::string name = cfg.method == Method::kMaxflow ? "maxflow" : "norm cut";
  if (cfg.oracle_only) return name + " classical";
  if (cfg.noise) name += " noisy";
  return name + " QAOA" + std::to_string(cfg.depth);
}

std::string dims_label(const std::vector<LabeledImage>& images) {
  const auto& first = images.front().image;
  for (const auto& item : images) {
    if (item.image.width != first.width || item.image.height != first.height) return "mixed";
  }
  return std::to_string(first.height) + "x" + std::to_string(first.width);
}

std::string run_file_name(int run) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "run_%04d.json", run);
  return buf;
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bitstring,count,probability\n";
  const double total = static_cast<double>(h.total());
  std::vector<std::pair<BasisIndex, std::uint64_t>> rows(h.counts.begin(), h.counts.end());
  std::sort(rows.begin(), rows.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return lex_less(a.first, b.first, h.n_qubits);
  });
  out << std::setprecision(17);
  for (const auto& [z, c] : rows) out << to_bitstring(z, h.n_qubits) << ',' << c << ',' << c / total << '\n';
  return out.str();
}

json outcome_json(const ImageOutcome& o) {
  return {{"id", o.id},
          {"winner", o.winner},
          {"predicted_mask", o.predicted_mask},
          {"dice", o.dice},
          {"objective", o.objective},
          {"wall_time_s", o.wall_time_s},
          {"gamma", o.gamma},
          {"beta", o.beta},
          {"objective_trace", o.trace}};
}

double score(const ExperimentConfig& cfg, const Mask& predicted, const Mask& truth, const Mask& anchor) {
  if (truth.empty()) return std::nan("");
  if (cfg.method == Method::kMaxflow) return dice(predicted, truth);
  if (!anchor.empty()) return dice(orient_to_anchor(predicted, anchor), truth);
  return dice_label_ambiguous(predicted, truth);
}

ImageOutcome segment_one(const ExperimentConfig& cfg, const TerminalModel& model, const LabeledImage& item,
                         std::uint64_t task_seed) {
  const auto start = std::chrono::steady_clock::now();
  SegGraph g = cfg.method == Method::kMaxflow ? build_maxflow_graph(item.image, model)
                                              : build_grid_graph(item.image, model.sigma);
  Mask anchor;
  if (cfg.anchor_side) anchor = anchor_mask(item.image.width, item.image.height, *cfg.anchor_side);

  ImageOutcome out;
  out.id = item.id;
  BasisIndex winner = 0;
  if (cfg.oracle_only) {
    const CutResult cut = cfg.method == Method::kMaxflow ? maxflow_mincut(g) : exhaustive_ncut(g);
    winner = cut.partition;
    out.objective = cut.value;
    out.histogram.n_qubits = g.n_vertices();
    out.histogram.counts[winner] = 1;
  } else {
    const QaoaProblem problem =
        cfg.method == Method::kMaxflow ? QaoaProblem::mincut(g) : QaoaProblem::ncut(g, cfg.ncut_mode);
    RunConfig rc;
    rc.depth = cfg.depth;
    rc.optimizer = cfg.optimizer;
    rc.optimizer.rng_seed = task_seed;
    if (cfg.noise) rc.noise = NoiseConfig{*cfg.noise, derive_seed(task_seed, 1)};
    rc.noise_trajectories = cfg.noise_trajectories;
    rc.estimator = cfg.estimator;
    rc.winner_rule = cfg.winner_rule;
    RunReport report = run(problem, rc);
    winner = report.winner;
    out.objective = report.best_objective;
    out.gamma = report.best_params.gamma;
    out.beta = report.best_params.beta;
    out.trace = std::move(report.objective_trace);
    out.histogram = std::move(report.histogram);
  }
  out.winner = to_bitstring(winner, g.n_vertices());
  const Mask predicted = g.pixel_mask(winner);
  out.predicted_mask = mask_to_string(predicted);
  out.dice = score(cfg, predicted, item.mask, anchor);
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

json summary_json(const ExperimentSummary& s) {
  json doc = {{"dims", s.dims},           {"algorithm", s.algorithm}, {"optimizer", s.optimizer},
              {"depth", s.depth},         {"images", s.images},       {"run_means", s.run_means},
              {"dice_mean", s.dice_mean}, {"dice_std", s.dice_std}};
  doc["noise"] = s.noise ? json(*s.noise) : json(nullptr);
  return doc;
}

}  // namespace

std::string to_string(Method m) { return m == Method::kMaxflow ? "maxflow" : "ncut"; }
std::string to_string(OptimizerKind k) { return k == OptimizerKind::kBayesian ? "Bayes" : "Adam"; }

void ExperimentConfig::validate() const {
  if (runs < 1) throw std::invalid_argument("runs per image must be at least 1");
  if (depth < 1) throw std::invalid_argument("QAOA depth must be at least 1");
  if (noise_trajectories < 1) throw std::invalid_argument("need at least one noise trajectory");
  if (threads < 0) throw std::invalid_argument("thread count must be nonnegative");
  if (noise) NoiseConfig{*noise, 0}.validate();
  if (sigma && !(*sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (lambda && !(*lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  if (dataset.bas_rows <= 0 && dataset.input_dir.empty()) throw std::invalid_argument("no dataset given");
  optimizer.validate();
}

std::vector<LabeledImage> load_dataset(const DatasetSpec& spec, std::uint64_t seed) {
  if (spec.bas_rows > 0) return generate_bas(spec.bas_rows, spec.bas_cols, spec.bas_noise, seed);
  return read_corpus(spec.input_dir);
}

TerminalModel experiment_terminal_model(const ExperimentConfig& cfg) {
  TerminalModel model = cfg.terminal_model ? read_terminal_model(*cfg.terminal_model) : TerminalModel::binary_threshold();
  if (cfg.sigma) model.sigma = *cfg.sigma;
  if (cfg.lambda) model.lambda = *cfg.lambda;
  model.validate();
  return model;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return run_experiment(cfg, load_dataset(cfg.dataset, cfg.seed));
}

ExperimentResult run_experiment(const ExperimentConfig& cfg, const std::vector<LabeledImage>& images) {
  cfg.validate();
  if (images.empty()) throw std::invalid_argument("dataset is empty");
  const TerminalModel model = experiment_terminal_model(cfg);
  // Classical oracles are deterministic, so a single pass covers every run.
  const int runs = cfg.oracle_only ? 1 : cfg.runs;
  const std::size_t n_images = images.size();
  const std::size_t n_tasks = static_cast<std::size_t>(runs) * n_images;

  std::vector<ImageOutcome> outcomes(n_tasks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t t = next.fetch_add(1);
      if (t >= n_tasks) return;
      const auto run_index = t / n_images;
      const auto image_index = t % n_images;
      try {
        const auto seed = derive_seed(derive_seed(cfg.seed, 1000 + run_index), image_index);
        outcomes[t] = segment_one(cfg, model, images[image_index], seed);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n_tasks);
      }
    }
  };
  unsigned n_threads = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : std::thread::hardware_concurrency();
  n_threads = std::clamp<unsigned>(n_threads, 1, static_cast<unsigned>(n_tasks));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.summary.dims = dims_label(images);
  result.summary.algorithm = algorithm_label(cfg);
  result.summary.optimizer = cfg.oracle_only ? "-" : to_string(cfg.optimizer.kind);
  result.summary.depth = cfg.depth;
  result.summary.noise = cfg.noise;
  result.summary.images = static_cast<int>(n_images);
  for (int r = 0; r < runs; ++r) {
    RunOutcome run_outcome;
    run_outcome.run = r;
    double acc = 0.0;
    for (std::size_t i = 0; i < n_images; ++i) {
      auto& o = outcomes[static_cast<std::size_t>(r) * n_images + i];
      acc += o.dice;
      run_outcome.images.push_back(std::move(o));
    }
    run_outcome.dice_mean = acc / static_cast<double>(n_images);
    result.summary.run_means.push_back(run_outcome.dice_mean);
    result.runs.push_back(std::move(run_outcome));
  }
  finalize_summary(result.summary);

  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir / "runs");
    fs::create_directories(cfg.out_dir / "histograms");
    for (const auto& run_outcome : result.runs) {
      json images_json = json::array();
      for (const auto& o : run_outcome.images) {
        images_json.push_back(outcome_json(o));
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_run%04d.csv", run_outcome.run);
        write_text_file(cfg.out_dir / "histograms" / (o.id + suffix), histogram_csv(o.histogram));
      }
      const json doc = {{"run", run_outcome.run}, {"dice_mean", run_outcome.dice_mean}, {"images", images_json}};
      write_text_file(cfg.out_dir / "runs" / run_file_name(run_outcome.run), doc.dump(2) + "\n");
    }
    json summary = summary_json(result.summary);
    summary["seed"] = cfg.seed;
    summary["runs"] = runs;
    write_text_file(cfg.out_dir / "summary.json", summary.dump(2) + "\n");
    write_text_file(cfg.out_dir / "summary.txt", format_table({result.summary}));
  }
  return result;
}

void finalize_summary(ExperimentSummary& s) {
  const auto n = static_cast<double>(s.run_means.size());
  if (s.run_means.empty()) {
    s.dice_mean = s.dice_std = std::nan("");
    return;
  }
  s.dice_mean = std::accumulate(s.run_means.begin(), s.run_means.end(), 0.0) / n;
  double var = 0.0;
  for (double m : s.run_means) var += (m - s.dice_mean) * (m - s.dice_mean);
  s.dice_std = std::sqrt(var / n);
}

ExperimentSummary summarize_from_dir(const fs::path& out_dir) {
  ExperimentSummary s;
  try {
    const json meta = json::parse(read_text_file(out_dir / "summary.json"));
    s.dims = meta.at("dims").get<std::string>();
    s.algorithm = meta.at("algorithm").get<std::string>();
    s.optimizer = meta.at("optimizer").get<std::string>();
    s.depth = meta.at("depth").get<int>();
    s.images = meta.at("images").get<int>();
    if (!meta.at("noise").is_null()) s.noise = meta.at("noise").get<double>();

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(out_dir / "runs")) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const json run = json::parse(read_text_file(f));
      double acc = 0.0;
      std::size_t count = 0;
      for (const auto& img : run.at("images")) {
        acc += img.at("dice").is_null() ? std::nan("") : img.at("dice").get<double>();
        ++count;
      }
      if (count == 0) throw IoError(f.string() + " lists no images");
      s.run_means.push_back(acc / static_cast<double>(count));
    }
  } catch (const json::exception& e) {
    throw IoError(out_dir.string() + ": " + e.what());
  }
  finalize_summary(s);
  return s;
}

std::string format_table(const std::vector<ExperimentSummary>& rows) {
  std::ostringstream out;
  std::size_t algo_width = std::string("Algorithm").size();
  for (const auto& r : rows) algo_width = std::max(algo_width, r.algorithm.size());
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w > s.size() ? w - s.size() : 0, ' '); };
  out << pad("Dims", 6) << "  " << pad("Algorithm", algo_width) << "  " << pad("Dice mu", 8) << "  "
      << pad("Dice sigma", 10) << "  Opt\n";
  for (const auto& r : rows) {
    char mu[32];
    char sd[32];
    std::snprintf(mu, sizeof(mu), "%.2f", r.dice_mean);
    std::snprintf(sd, sizeof(sd), "%.2f", r.dice_std);
    out << pad(r.dims, 6) << "  " << pad(r.algorithm, algo_width) << "  " << pad(mu, 8) << "  " << pad(sd, 10)
        << "  " << r.optimizer << '\n';
  }
  return out.str();
}

}  // namespace qseg
