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

#include "qseg/imagegraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qseg {

void Image::validate() const {
  if (width < 1 || height < 1) throw std::invalid_argument("image must have at least one pixel");
  if (pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
    throw std::invalid_argument("pixel buffer does not match image dimensions");
  }
  for (double v : pixels) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("intensity outside [0, 1]");
  }
}

Image make_image(int width, int height, std::vector<double> pixels) {
  Image img{width, height, std::move(pixels)};
  img.validate();
  return img;
}

double nlink_weight(double ia, double ib, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double d = ia - ib;
  return std::exp(-(d * d) / (2.0 * sigma * sigma));
}

SegGraph build_grid_graph(const Image& img, double sigma) {
  img.validate();
  SegGraph g(img.size());
  for (int r = 0; r < img.height; ++r) {
    for (int c = 0; c < img.width; ++c) {
      if (c + 1 < img.width) {
        g.add_edge(img.index(r, c), img.index(r, c + 1), nlink_weight(img.at(r, c), img.at(r, c + 1), sigma));
      }
      if (r + 1 < img.height) {
        g.add_edge(img.index(r, c), img.index(r + 1, c), nlink_weight(img.at(r, c), img.at(r + 1, c), sigma));
      }
    }
  }
  return g;
}

double binary_likelihood_object(double intensity) { return intensity < 0.5 ? 1.0 : 0.0; }

double binary_likelihood_background(double intensity) { return intensity < 0.5 ? 0.0 : 1.0; }

int histogram_bin(double intensity) {
  const int b = static_cast<int>(std::floor(intensity * kHistogramBins));
  return std::clamp(b, 0, kHistogramBins - 1);
}

TerminalModel TerminalModel::binary_threshold(double lambda, double sigma) {
  TerminalModel m;
  m.kind = TerminalKind::kBinaryThreshold;
  m.lambda = lambda;
  m.sigma = sigma;
  m.validate();
  return m;
}

TerminalModel TerminalModel::histogram_posterior(std::span<const double> p_obj, std::span<const double> p_bkg,
                                                 double lambda, double sigma) {
  if (p_obj.size() != kHistogramBins || p_bkg.size() != kHistogramBins) {
    throw std::invalid_argument("histogram model needs exactly 10 bins per class");
  }
  TerminalModel m;
  m.kind = TerminalKind::kHistogramPosterior;
  m.lambda = lambda;
  m.sigma = sigma;
  for (int i = 0; i < kHistogramBins; ++i) {
    const double po = p_obj[static_cast<std::size_t>(i)];
    const double pb = p_bkg[static_cast<std::size_t>(i)];
    if (po == 0.0 && pb == 0.0) {
      m.p_obj[static_cast<std::size_t>(i)] = 0.5;
      m.p_bkg[static_cast<std::size_t>(i)] = 0.5;
    } else {
      m.p_obj[static_cast<std::size_t>(i)] = po;
      m.p_bkg[static_cast<std::size_t>(i)] = pb;
    }
  }
  m.validate();
  return m;
}

TerminalModel TerminalModel::fit_histogram(std::span<const double> object_intensities,
                                           std::span<const double> background_intensities, double lambda,
                                           double sigma) {
  if (object_intensities.empty() || background_intensities.empty()) {
    throw std::invalid_argument("both classes need training intensities");
  }
  std::array<double, kHistogramBins> like_obj{};
  std::array<double, kHistogramBins> like_bkg{};
  for (double v : object_intensities) like_obj[static_cast<std::size_t>(histogram_bin(v))] += 1.0;
  for (double v : background_intensities) like_bkg[static_cast<std::size_t>(histogram_bin(v))] += 1.0;
  for (auto& v : like_obj) v /= static_cast<double>(object_intensities.size());
  for (auto& v : like_bkg) v /= static_cast<double>(background_intensities.size());

  // Equal priors: Pr(O | bin) = Pr(bin | O) / (Pr(bin | O) + Pr(bin | B)).
  std::array<double, kHistogramBins> post_obj{};
  std::array<double, kHistogramBins> post_bkg{};
  for (std::size_t i = 0; i < kHistogramBins; ++i) {
    const double evidence = like_obj[i] + like_bkg[i];
    if (evidence > 0.0) {
      post_obj[i] = like_obj[i] / evidence;
      post_bkg[i] = like_bkg[i] / evidence;
    }
  }
  return histogram_posterior(post_obj, post_bkg, lambda, sigma);
}

void TerminalModel::validate() const {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("sigma must be positive");
  if (seed_weight && !(*seed_weight >= 0.0)) throw std::invalid_argument("seed weight must be nonnegative");
  if (kind == TerminalKind::kHistogramPosterior) {
    for (std::size_t i = 0; i < kHistogramBins; ++i) {
      if (p_obj[i] < 0.0 || p_obj[i] > 1.0 || p_bkg[i] < 0.0 || p_bkg[i] > 1.0) {
        throw std::invalid_argument("posteriors must lie in [0, 1]");
      }
      if (std::abs(p_obj[i] + p_bkg[i] - 1.0) > 1e-9) {
        throw std::invalid_argument("posteriors of bin " + std::to_string(i) + " do not sum to 1");
      }
    }
  }
}

TerminalScores TerminalModel::scores(double intensity) const {
  if (kind == TerminalKind::kHistogramPosterior) {
    const auto b = static_cast<std::size_t>(histogram_bin(intensity));
    return {p_obj[b], p_bkg[b]};
  }
  const double log_floor = std::log(kProbabilityFloor);
  auto affinity = [&](double p) { return std::log(std::max(p, kProbabilityFloor)) - log_floor; };
  return {affinity(binary_likelihood_object(intensity)), affinity(binary_likelihood_background(intensity))};
}

void attach_terminals(SegGraph& g, const Image& img, const TerminalModel& model, std::span<const Seed> seeds) {
  model.validate();
  if (g.has_terminals()) throw std::invalid_argument("graph already has terminals");
  if (g.n_pixels() != img.size()) throw std::invalid_argument("graph and image sizes differ");

  std::vector<int> seeded(static_cast<std::size_t>(img.size()), -1);
  for (const auto& s : seeds) {
    if (s.pixel < 0 || s.pixel >= img.size()) {
      throw std::invalid_argument("seed pixel " + std::to_string(s.pixel) + " out of range");
    }
    seeded[static_cast<std::size_t>(s.pixel)] = static_cast<int>(s.label);
  }

  double seed_weight = 0.0;
  if (model.seed_weight) {
    seed_weight = *model.seed_weight;
  } else {
    double max_sum = 0.0;
    for (int v = 0; v < g.n_pixels(); ++v) max_sum = std::max(max_sum, g.incident_weight(v));
    seed_weight = 1.0 + max_sum;
  }

  const Terminals t = g.add_terminals();
  for (int p = 0; p < img.size(); ++p) {
    double to_source = 0.0;
    double to_sink = 0.0;
    const int label = seeded[static_cast<std::size_t>(p)];
    if (label == static_cast<int>(PixelLabel::kObject)) {
      to_sink = seed_weight;
    } else if (label == static_cast<int>(PixelLabel::kBackground)) {
      to_source = seed_weight;
    } else {
      const TerminalScores s = model.scores(img.pixels[static_cast<std::size_t>(p)]);
      to_sink = model.lambda * s.object;
      to_source = model.lambda * s.background;
    }
    g.add_edge(p, t.source, to_source);
    g.add_edge(p, t.sink, to_sink);
  }
}

void assign_qubits(SegGraph& g) {
  std::vector<int> map(static_cast<std::size_t>(g.n_vertices()));
  for (int v = 0; v < g.n_pixels(); ++v) map[static_cast<std::size_t>(v)] = v;
  int next = g.n_pixels();
  if (const auto& t = g.terminals()) {
    map[static_cast<std::size_t>(t->source)] = next++;
    map[static_cast<std::size_t>(t->sink)] = next++;
  }
  g.set_qubit_map(std::move(map));
}

SegGraph build_maxflow_graph(const Image& img, const TerminalModel& model, std::span<const Seed> seeds) {
  SegGraph g = build_grid_graph(img, model.sigma);
  attach_terminals(g, img, model, seeds);
  assign_qubits(g);
  return g;
}

}  // namespace qseg
