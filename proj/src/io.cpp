// Copyright 2026 The geolgp Authors
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

#include "geolgp/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "geolgp/error.hpp"

namespace geolgp {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path + "'");
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void make_directories(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create '" + path + "': " + ec.message());
}

void write_csv(const std::string& path, const ScalarGrid& grid) {
  std::string text;
  text.reserve(grid.values.size() * 24);
  char buf[40];
  for (int j = 0; j < grid.spec.ny; ++j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", grid.at(i, j));
      if (i > 0) text += ',';
      text += buf;
    }
    text += '\n';
  }
  write_text(path, text);
}

ScalarGrid read_csv_values(const std::string& path, const GridSpec& spec) {
  ScalarGrid g(spec);
  std::stringstream in(read_text(path));
  std::string line;
  int j = 0;
  while (std::getline(in, line) && j < spec.ny) {
    std::stringstream row(line);
    std::string cell;
    for (int i = 0; i < spec.nx && std::getline(row, cell, ','); ++i) {
      g.at(i, j) = std::strtod(cell.c_str(), nullptr);
    }
    ++j;
  }
  if (j != spec.ny) fail(ErrorCode::kIo, "'" + path + "' has too few rows");
  return g;
}

void write_pgm(const std::string& path, const ScalarGrid& grid) {
  double lo = INFINITY, hi = -INFINITY;
  for (double v : grid.values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) lo = hi = 0.0;
  std::string data = "P5\n" + std::to_string(grid.spec.nx) + " " +
                     std::to_string(grid.spec.ny) + "\n65535\n";
  for (int j = 0; j < grid.spec.ny; ++j) {
    for (int i = 0; i < grid.spec.nx; ++i) {
      const double v = grid.at(i, j);
      unsigned level = 0;
      if (std::isfinite(v) && hi > lo) {
        level = static_cast<unsigned>(std::lround((v - lo) / (hi - lo) * 65535.0));
      }
      data += static_cast<char>((level >> 8) & 0xff);
      data += static_cast<char>(level & 0xff);
    }
  }
  write_text(path, data);
  char buf[128];
  std::snprintf(buf, sizeof buf, "{\"min\": %.17g, \"max\": %.17g, \"maxval\": 65535}\n", lo, hi);
  write_text(path + ".json", buf);
}

}  // namespace geolgp
