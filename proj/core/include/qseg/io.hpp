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

#ifndef QSEG_IO_HPP_
#define QSEG_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qseg/bits.hpp"
#include "qseg/imagegraph.hpp"
#include "qseg/seg_graph.hpp"

namespace qseg {

struct LabeledImage;

/// Plain (P2) or raw (P5) PGM; intensities are divided by maxval.
Image read_pgm(const std::filesystem::path& path);
/// Raw 16-bit PGM, so generated intensities survive a round trip to 1/65535.
void write_pgm(const std::filesystem::path& path, const Image& img);
/// One image row per line, comma separated reals in [0, 1].
Image read_csv_image(const std::filesystem::path& path);
/// Dispatches on extension: .csv, otherwise PGM.
Image read_image(const std::filesystem::path& path);

/// {"bins": 10, "p_obj": [...], "p_bkg": [...], "lambda": 1.0, "sigma": 0.1}
/// with lambda and sigma optional.
TerminalModel parse_terminal_model(const std::string& json_text);
TerminalModel read_terminal_model(const std::filesystem::path& path);

struct SidecarMeta {
  std::string id;
  Mask mask;
  double noise_max = 0.0;
  std::uint64_t seed = 0;
};

SidecarMeta read_sidecar(const std::filesystem::path& path);
void write_sidecar(const std::filesystem::path& path, const SidecarMeta& meta);

/// `<id>.pgm` plus `<id>.json` per item.
void write_corpus(const std::filesystem::path& dir, const std::vector<LabeledImage>& items, double noise_max,
                  std::uint64_t seed);
/// Every PGM in `dir` with its sidecar, ordered by file name.
std::vector<LabeledImage> read_corpus(const std::filesystem::path& dir);

void write_dot(std::ostream& out, const SegGraph& g);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qseg

#endif  // QSEG_IO_HPP_
