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

#ifndef QSEG_IMAGEGRAPH_HPP_
#define QSEG_IMAGEGRAPH_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "qseg/seg_graph.hpp"

namespace qseg {

/// Grayscale image, row-major, intensities normalized to [0, 1].
struct Image {
  int width = 0;
  int height = 0;
  std::vector<double> pixels;

  int size() const { return width * height; }
  double at(int row, int col) const { return pixels[static_cast<std::size_t>(row * width + col)]; }
  int index(int row, int col) const { return row * width + col; }

  /// Throws std::invalid_argument unless dims are positive and every
  /// intensity lies in [0, 1].
  void validate() const;
};

Image make_image(int width, int height, std::vector<double> pixels);

inline constexpr double kDefaultSigma = 0.1;
inline constexpr double kDefaultLambda = 1.0;
/// Floor substituted for zero likelihoods before taking logarithms.
inline constexpr double kProbabilityFloor = 1e-6;
inline constexpr int kHistogramBins = 10;

/// exp(-(ia - ib)^2 / (2 sigma^2)), in (0, 1].
double nlink_weight(double ia, double ib, double sigma);

/// One vertex per pixel, 4-neighbourhood n-links.
SegGraph build_grid_graph(const Image& img, double sigma = kDefaultSigma);

/// Binary-image likelihoods: dark pixels are object. An intensity of exactly
/// 0.5 falls on the background branch.
double binary_likelihood_object(double intensity);
double binary_likelihood_background(double intensity);

/// Bin of width 0.1; intensity 1.0 lands in the last bin.
int histogram_bin(double intensity);

enum class TerminalKind { kBinaryThreshold, kHistogramPosterior };

struct TerminalScores {
  double object;
  double background;
};

struct TerminalModel {
  TerminalKind kind = TerminalKind::kBinaryThreshold;
  std::array<double, kHistogramBins> p_obj{};
  std::array<double, kHistogramBins> p_bkg{};
  double lambda = kDefaultLambda;
  double sigma = kDefaultSigma;
  /// Weight for user-seeded pixels; defaults to one more than the largest
  /// per-pixel n-link sum.
  std::optional<double> seed_weight;

  static TerminalModel binary_threshold(double lambda = kDefaultLambda, double sigma = kDefaultSigma);
  /// Posteriors per bin; bins where both entries are 0 carry no data and
  /// become 0.5 / 0.5.
  static TerminalModel histogram_posterior(std::span<const double> p_obj, std::span<const double> p_bkg,
                                           double lambda = kDefaultLambda, double sigma = kDefaultSigma);
  /// Bayes posteriors with equal class priors from labelled training
  /// intensities.
  static TerminalModel fit_histogram(std::span<const double> object_intensities,
                                     std::span<const double> background_intensities,
                                     double lambda = kDefaultLambda, double sigma = kDefaultSigma);

  void validate() const;

  /// Nonnegative class affinities (before lambda). Binary mode:
  /// ln(max(Pr(I|class), floor) / floor). Histogram mode: the posterior.
  TerminalScores scores(double intensity) const;
};

enum class PixelLabel { kBackground = 0, kObject = 1 };

struct Seed {
  int pixel;
  PixelLabel label;
};

/// Adds source and sink and a t-link from every pixel to each. The link to
/// the sink carries lambda * object affinity and the link to the source
/// lambda * background affinity, so severing a link costs the evidence for
/// the class the pixel is not given. Seeded pixels get seed_weight to their
/// own terminal and 0 to the other.
void attach_terminals(SegGraph& g, const Image& img, const TerminalModel& model, std::span<const Seed> seeds = {});

/// Row-major pixels on qubits 0..P-1, then source, then sink.
void assign_qubits(SegGraph& g);

/// Grid graph with terminals and qubits assigned, ready for the min-cut
/// Hamiltonian.
SegGraph build_maxflow_graph(const Image& img, const TerminalModel& model, std::span<const Seed> seeds = {});

}  // namespace qseg

#endif  // QSEG_IMAGEGRAPH_HPP_
