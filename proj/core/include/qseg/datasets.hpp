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

#ifndef QSEG_DATASETS_HPP_
#define QSEG_DATASETS_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qseg/bits.hpp"
#include "qseg/imagegraph.hpp"

namespace qseg {

struct LabeledImage {
  Image image;
  Mask mask;  ///< 1 = object; empty when no ground truth is known
  std::string id;
};

/// Number of bars-and-stripes patterns on a rows x cols grid once the
/// all-dark and all-light images are removed.
std::size_t bas_pattern_count(int rows, int cols);

/// Clean binary patterns, bars (row-constant) first, then stripes.
/// A 1 bit marks an object pixel, rendered dark (intensity 0).
std::vector<Mask> bas_patterns(int rows, int cols);

/// Every pattern with uniform noise in [0, noise_max] pushed away from its
/// clean intensity. Deterministic per seed.
std::vector<LabeledImage> generate_bas(int rows, int cols, double noise_max, std::uint64_t rng_seed);

enum class CropSide { kLeft, kRight };

struct MedicalCrop {
  LabeledImage item;
  TerminalModel model;
  /// Boundary pixels known to lie on the vessel: the right-most column of a
  /// left-hand crop, the left-most column of a right-hand crop.
  Mask anchor;
};

/// Reads a grayscale crop (PGM or CSV), its histogram JSON and, when a
/// sidecar `<stem>.json` with a "mask" entry sits next to the image, the
/// ground-truth mask.
MedicalCrop load_cropped_medical(const std::filesystem::path& image_file,
                                 const std::filesystem::path& histogram_file, CropSide side);

Mask anchor_mask(int width, int height, CropSide side);

/// Flips `predicted` when that puts more anchor pixels on the object side.
Mask orient_to_anchor(const Mask& predicted, const Mask& anchor);

}  // namespace qseg

#endif  // QSEG_DATASETS_HPP_
