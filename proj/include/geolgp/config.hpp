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

#ifndef GEOLGP_CONFIG_HPP_
#define GEOLGP_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "geolgp/boundary.hpp"
#include "geolgp/problem.hpp"
#include "geolgp/verify.hpp"
#include "geolgp/weight.hpp"

namespace geolgp {

struct DomainConfig {
  std::string kind = "circle";  // circle | ellipse | polar
  double radius = 1.0;
  double a = 1.0;
  double b = 1.0;
  std::vector<double> radii;
};

struct WeightConfig {
  std::string family = "constant";  // constant | radial_bump | bilinear_grid
  double a = 1.0;
  double b = 0.0;
  Vec2 center;
  double width = 1.0;
  std::string csv;          // bilinear_grid from a file
  WeightSamples samples;    // bilinear_grid given inline
};

struct CheckConfig {
  std::string name;
  double alpha = 1.0;                  // holder
  int levels = 3;                      // lp_ladder, holder
  std::vector<int> n{16, 32, 64, 128};  // stability
};

struct Config {
  DomainConfig domain;
  WeightConfig weight;
  std::vector<DatumPiece> pieces;
  int grid_n = 0;       // one of grid_n, grid_h is set
  double grid_h = 0.0;
  int n_source = 64;
  int n_target = 64;
  double tau_split = 0.5;
  std::vector<double> p_values{1.0, 2.0};
  std::vector<CheckConfig> checks;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  SolverKind solver = SolverKind::kNoncrossing;

  std::string base_dir = ".";  // relative weight csv paths resolve here
  std::string canonical;       // sorted-key JSON of the input
  std::uint64_t hash = 0;      // FNV-1a of canonical
};

// Checks run when the config has no "checks" key.
const std::vector<std::string>& default_checks();

// Every schema problem found, each prefixed with the offending field path.
std::vector<std::string> validate_config(const std::string& json_text,
                                         const std::string& base_dir = ".");
// Raises kSchema listing the problems when the text is invalid.
Config parse_config(const std::string& json_text, const std::string& base_dir = ".");
// Raises kIo when the file cannot be read.
Config load_config(const std::string& path);

Problem make_problem(const Config& config);
GridSpec make_grid(const Config& config, const DomainBoundary& domain);
CheckOptions make_check_options(const Config& config, const CheckConfig& check);

std::string hash_hex(std::uint64_t hash);

}  // namespace geolgp

#endif  // GEOLGP_CONFIG_HPP_
