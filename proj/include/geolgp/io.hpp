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

#ifndef GEOLGP_IO_HPP_
#define GEOLGP_IO_HPP_

#include <string>

#include "geolgp/grid.hpp"

namespace geolgp {

// One grid row per line starting at the origin row, %.17g, LF.
void write_csv(const std::string& path, const ScalarGrid& grid);
ScalarGrid read_csv_values(const std::string& path, const GridSpec& spec);

// Binary 16-bit PGM (P5, big-endian samples), first row at the grid origin.
// Finite values map linearly from [min, max] onto [0, 65535]; others to 0.
// The scale goes to path + ".json".
void write_pgm(const std::string& path, const ScalarGrid& grid);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void make_directories(const std::string& path);

}  // namespace geolgp

#endif  // GEOLGP_IO_HPP_
