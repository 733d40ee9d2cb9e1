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

#include "qseg/datasets.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qseg/io.hpp"
#include "qseg/oracles.hpp"

namespace qseg {

namespace {

void check_dims(int rows, int cols) {
  if (rows < 2 || cols < 2) throw std::invalid_argument("bars and stripes need at least 2 rows and 2 columns");
  if (rows * cols > kMaxQubits) throw CapacityError("bars-and-stripes image has too many pixels");
}

std::string pattern_id(int rows, int cols, const char* family, std::uint32_t code, int width) {
  std::string bits;
  for (int i = 0; i < width; ++i) bits.push_back(((code >> i) & 1U) ? '1' : '0');
  return "bas" + std::to_string(rows) + "x" + std::to_string(cols) + "_" + family + "_" + bits;
}

}  // namespace

std::size_t bas_pattern_count(int rows, int cols) {
  check_dims(rows, cols);
  return (std::size_t{1} << rows) + (std::size_t{1} << cols) - 4;
}

std::vector<Mask> bas_patterns(int rows, int cols) {
  check_dims(rows, cols);
  std::vector<Mask> out;
  std::set<Mask> seen;
  const auto n = static_cast<std::size_t>(rows * cols);
  auto push = [&](Mask m) {
    const auto ones = static_cast<std::size_t>(std::count(m.begin(), m.end(), 1));
    if (ones == 0 || ones == n || !seen.insert(m).second) return;
    out.push_back(std::move(m));
  };
  for (std::uint32_t code = 0; code < (1U << rows); ++code) {
    Mask m(n);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m[static_cast<std::size_t>(r * cols + c)] = (code >> r) & 1U;
    }
    push(std::move(m));
  }
  for (std::uint32_t code = 0; code < (1U << cols); ++code) {
    Mask m(n);
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) m[static_cast<std::size_t>(r * cols + c)] = (code >> c) & 1U;
    }
    push(std::move(m));
  }
  return out;
}

std::vector<LabeledImage> generate_bas(int rows, int cols, double noise_max, std::uint64_t rng_seed) {
  if (!(noise_max >= 0.0 && noise_max < 0.5)) throw std::invalid_argument("noise_max must lie in [0, 0.5)");
  const auto patterns = bas_patterns(rows, cols);
  Rng rng(rng_seed);
  std::vector<LabeledImage> out;
  out.reserve(patterns.size());
  for (const auto& m : patterns) {
    // Recover the family and code for a stable, readable id.
    bool row_constant = true;
    for (int r = 0; r < rows && row_constant; ++r) {
      for (int c = 1; c < cols; ++c) {
        if (m[static_cast<std::size_t>(r * cols + c)] != m[static_cast<std::size_t>(r * cols)]) row_constant = false;
      }
    }
    std::uint32_t code = 0;
    std::string id;
    if (row_constant) {
      for (int r = 0; r < rows; ++r) code |= static_cast<std::uint32_t>(m[static_cast<std::size_t>(r * cols)]) << r;
      id = pattern_id(rows, cols, "bars", code, rows);
    } else {
      for (int c = 0; c < cols; ++c) code |= static_cast<std::uint32_t>(m[static_cast<std::size_t>(c)]) << c;
      id = pattern_id(rows, cols, "stripes", code, cols);
    }

    std::vector<double> px(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double u = uniform(rng, 0.0, noise_max);
      px[i] = m[i] ? u : 1.0 - u;
    }
    out.push_back({make_image(cols, rows, std::move(px)), m, std::move(id)});
  }
  return out;
}

Mask anchor_mask(int width, int height, CropSide side) {
  Mask m(static_cast<std::size_t>(width * height), 0);
  const int col = side == CropSide::kLeft ? width - 1 : 0;
  for (int r = 0; r < height; ++r) m[static_cast<std::size_t>(r * width + col)] = 1;
  return m;
}

Mask orient_to_anchor(const Mask& predicted, const Mask& anchor) {
  if (predicted.size() != anchor.size()) throw std::invalid_argument("masks differ in length");
  int on = 0;
  int off = 0;
  for (std::size_t i = 0; i < anchor.size(); ++i) {
    if (!anchor[i]) continue;
    (predicted[i] ? on : off) += 1;
  }
  return off > on ? complement(predicted) : predicted;
}

MedicalCrop load_cropped_medical(const std::filesystem::path& image_file,
                                 const std::filesystem::path& histogram_file, CropSide side) {
  MedicalCrop crop;
  crop.item.image = read_image(image_file);
  if (crop.item.image.size() > kMaxQubits - 2) throw CapacityError("crop has too many pixels to simulate");
  crop.model = read_terminal_model(histogram_file);
  crop.item.id = image_file.stem().string();
  auto sidecar = image_file;
  sidecar.replace_extension(".json");
  if (std::filesystem::exists(sidecar)) {
    const auto meta = read_sidecar(sidecar);
    if (!meta.id.empty()) crop.item.id = meta.id;
    crop.item.mask = meta.mask;
    if (!crop.item.mask.empty() && crop.item.mask.size() != static_cast<std::size_t>(crop.item.image.size())) {
      throw IoError(sidecar.string() + ": mask length does not match the image");
    }
  }
  crop.anchor = anchor_mask(crop.item.image.width, crop.item.image.height, side);
  return crop;
}

}  // namespace qseg
