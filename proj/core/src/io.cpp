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

#include "qseg/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qseg/datasets.hpp"

namespace qseg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Whitespace and '#' comments between PGM header tokens.
void skip_pgm_space(std::istream& in) {
  while (true) {
    const int c = in.peek();
    if (c == '#') {
      std::string discard;
      std::getline(in, discard);
    } else if (c != EOF && std::isspace(c)) {
      in.get();
    } else {
      return;
    }
  }
}

long read_pgm_int(std::istream& in, const fs::path& path) {
  skip_pgm_space(in);
  long v = -1;
  if (!(in >> v) || v < 0) throw IoError(path.string() + ": malformed PGM header");
  return v;
}

}  // namespace

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

Image read_pgm(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  char magic[2] = {0, 0};
  in.read(magic, 2);
  if (!in || magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
    throw IoError(path.string() + ": not a grayscale PGM (expected P2 or P5)");
  }
  const long width = read_pgm_int(in, path);
  const long height = read_pgm_int(in, path);
  const long maxval = read_pgm_int(in, path);
  if (width < 1 || height < 1 || maxval < 1 || maxval > 65535 || width * height > (1L << 24)) {
    throw IoError(path.string() + ": unsupported PGM dimensions or maxval");
  }
  const auto n = static_cast<std::size_t>(width * height);
  std::vector<double> px(n);
  if (magic[1] == '2') {
    for (auto& v : px) v = static_cast<double>(read_pgm_int(in, path));
  } else {
    in.get();  // single whitespace byte before the raster
    const bool wide = maxval > 255;
    for (auto& v : px) {
      const int hi = in.get();
      const int lo = wide ? in.get() : 0;
      if (!in) throw IoError(path.string() + ": truncated PGM raster");
      v = wide ? static_cast<double>((hi << 8) | lo) : static_cast<double>(hi);
    }
  }
  for (auto& v : px) {
    if (v > static_cast<double>(maxval)) throw IoError(path.string() + ": sample exceeds maxval");
    v /= static_cast<double>(maxval);
  }
  return make_image(static_cast<int>(width), static_cast<int>(height), std::move(px));
}

void write_pgm(const fs::path& path, const Image& img) {
  img.validate();
  std::ostringstream out;
  out << "P5\n" << img.width << ' ' << img.height << "\n65535\n";
  for (double v : img.pixels) {
    const auto q = static_cast<unsigned>(std::lround(v * 65535.0));
    out.put(static_cast<char>((q >> 8) & 0xFF));
    out.put(static_cast<char>(q & 0xFF));
  }
  write_text_file(path, out.str());
}

Image read_csv_image(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<double> px;
  int width = -1;
  int height = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    std::string cell;
    int count = 0;
    while (std::getline(row, cell, ',')) {
      try {
        std::size_t used = 0;
        px.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw IoError(path.string() + ": bad value '" + cell + "'");
      }
      ++count;
    }
    if (width >= 0 && count != width) throw IoError(path.string() + ": ragged rows");
    width = count;
    ++height;
  }
  if (height == 0) throw IoError(path.string() + ": empty image");
  try {
    return make_image(width, height, std::move(px));
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

Image read_image(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".csv" ? read_csv_image(path) : read_pgm(path);
}

TerminalModel parse_terminal_model(const std::string& json_text) {
  try {
    const json doc = json::parse(json_text);
    const int bins = doc.value("bins", kHistogramBins);
    if (bins != kHistogramBins) throw IoError("histogram must have " + std::to_string(kHistogramBins) + " bins");
    const auto p_obj = doc.at("p_obj").get<std::vector<double>>();
    const auto p_bkg = doc.at("p_bkg").get<std::vector<double>>();
    if (p_obj.size() != kHistogramBins || p_bkg.size() != kHistogramBins) {
      throw IoError("p_obj and p_bkg must each list one value per bin");
    }
    return TerminalModel::histogram_posterior(p_obj, p_bkg, doc.value("lambda", kDefaultLambda),
                                              doc.value("sigma", kDefaultSigma));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed terminal model: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("invalid terminal model: ") + e.what());
  }
}

TerminalModel read_terminal_model(const fs::path& path) {
  try {
    return parse_terminal_model(read_text_file(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

SidecarMeta read_sidecar(const fs::path& path) {
  try {
    const json doc = json::parse(read_text_file(path));
    SidecarMeta meta;
    meta.id = doc.value("id", path.stem().string());
    if (doc.contains("mask")) meta.mask = mask_from_string(doc.at("mask").get<std::string>());
    meta.noise_max = doc.value("noise_max", 0.0);
    meta.seed = doc.value("seed", std::uint64_t{0});
    return meta;
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_sidecar(const fs::path& path, const SidecarMeta& meta) {
  const json doc = {{"id", meta.id}, {"mask", mask_to_string(meta.mask)}, {"noise_max", meta.noise_max},
                    {"seed", meta.seed}};
  write_text_file(path, doc.dump(2) + "\n");
}

void write_corpus(const fs::path& dir, const std::vector<LabeledImage>& items, double noise_max, std::uint64_t seed) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& item : items) {
    write_pgm(dir / (item.id + ".pgm"), item.image);
    write_sidecar(dir / (item.id + ".json"), {item.id, item.mask, noise_max, seed});
  }
}

std::vector<LabeledImage> read_corpus(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledImage> out;
  for (const auto& f : files) {
    LabeledImage item{read_pgm(f), {}, f.stem().string()};
    auto sidecar = f;
    sidecar.replace_extension(".json");
    if (fs::exists(sidecar)) {
      auto meta = read_sidecar(sidecar);
      item.id = meta.id;
      item.mask = std::move(meta.mask);
      if (!item.mask.empty() && item.mask.size() != static_cast<std::size_t>(item.image.size())) {
        throw IoError(sidecar.string() + ": mask length does not match the image");
      }
    }
    out.push_back(std::move(item));
  }
  if (out.empty()) throw IoError(dir.string() + " holds no PGM images");
  return out;
}

void write_dot(std::ostream& out, const SegGraph& g) {
  out << "graph seg {\n";
  const auto& t = g.terminals();
  for (int v = 0; v < g.n_vertices(); ++v) {
    out << "  v" << v << " [label=\"";
    if (t && v == t->source) {
      out << "s";
    } else if (t && v == t->sink) {
      out << "t";
    } else {
      out << v;
    }
    out << " (q" << g.qubit(v) << ")\"];\n";
  }
  for (const auto& e : g.edges()) out << "  v" << e.a << " -- v" << e.b << " [label=\"" << e.weight << "\"];\n";
  out << "}\n";
}

}  // namespace qseg
