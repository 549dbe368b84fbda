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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "geolgp/geolgp.h"

namespace fs = std::filesystem;

namespace {

const char* kSmall = R"({
  "domain": {"kind": "circle", "radius": 1.0},
  "weight": {"family": "constant", "a": 1.0},
  "boundary_datum": {"pieces": [
    {"from": 0, "to": "pi", "kind": "constant", "params": [1]},
    {"from": "pi", "to": "2*pi", "kind": "constant", "params": [0]}]},
  "grid": {"n": 48},
  "atoms": {"n_source": 8, "n_target": 8},
  "checks": ["duality", "crossings", "density"],
  "out_dir": "unused"
})";

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(geolgp_version()).size() > 0);
  CHECK(std::string(geolgp_status_name(GEOLGP_OK)) != "");
  CHECK(std::string(geolgp_status_name(GEOLGP_ERR_SCHEMA)) !=
        std::string(geolgp_status_name(GEOLGP_OK)));
}

TEST_CASE("null arguments") {
  CHECK(geolgp_domain_circle(1.0, nullptr) == GEOLGP_ERR_INVALID_ARGUMENT);
  CHECK(std::string(geolgp_last_error()).find("null") != std::string::npos);
  CHECK(geolgp_config_parse(nullptr, nullptr, nullptr) == GEOLGP_ERR_INVALID_ARGUMENT);
  double v = 0;
  CHECK(geolgp_weight_eval(nullptr, 0, 0, &v, nullptr, nullptr) == GEOLGP_ERR_INVALID_ARGUMENT);
}

TEST_CASE("schema errors") {
  geolgp_config* c = nullptr;
  CHECK(geolgp_config_parse("{\"domain\": 1}", nullptr, &c) == GEOLGP_ERR_SCHEMA);
  CHECK(c == nullptr);
  CHECK(std::string(geolgp_last_error()).find("domain") != std::string::npos);
  CHECK(geolgp_config_load("/nonexistent/x.json", &c) == GEOLGP_ERR_IO);
  char* report = nullptr;
  CHECK(geolgp_config_validate_file("/nonexistent/x.json", &report) == GEOLGP_ERR_IO);
}

TEST_CASE("validate file") {
  const fs::path p = fs::current_path() / "capi_validate.json";
  std::ofstream(p) << kSmall;
  char* report = nullptr;
  REQUIRE(geolgp_config_validate_file(p.string().c_str(), &report) == GEOLGP_OK);
  CHECK(std::string(report) == "[]");
  geolgp_string_free(report);
  std::string bad = kSmall;
  bad.replace(bad.find("constant"), 8, "constnt");
  std::ofstream(p) << bad;
  REQUIRE(geolgp_config_validate_file(p.string().c_str(), &report) == GEOLGP_ERR_SCHEMA);
  CHECK(std::string(report).find("weight.family") != std::string::npos);
  geolgp_string_free(report);
}

TEST_CASE("domains") {
  geolgp_domain* d = nullptr;
  REQUIRE(geolgp_domain_ellipse(2.0, 1.0, &d) == GEOLGP_OK);
  double x = 0, y = 0;
  REQUIRE(geolgp_domain_point(d, 1.5707963267948966, &x, &y) == GEOLGP_OK);
  CHECK(x == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(y == doctest::Approx(1.0));
  geolgp_domain_free(d);
  CHECK(geolgp_domain_circle(-1.0, &d) != GEOLGP_OK);
  const double radii[3] = {1, -1, 1};
  CHECK(geolgp_domain_polar(radii, 3, &d) != GEOLGP_OK);
  geolgp_domain_free(nullptr);
}

TEST_CASE("weights and distance") {
  geolgp_weight* w = nullptr;
  geolgp_domain* d = nullptr;
  REQUIRE(geolgp_weight_constant(2.0, &w) == GEOLGP_OK);
  REQUIRE(geolgp_domain_circle(1.0, &d) == GEOLGP_OK);
  double v = 0, gx = 1, gy = 1;
  REQUIRE(geolgp_weight_eval(w, 0.3, 0.1, &v, &gx, &gy) == GEOLGP_OK);
  CHECK(v == 2.0);
  CHECK(gx == 0.0);
  CHECK(gy == 0.0);
  double dist = 0;
  REQUIRE(geolgp_distance(w, d, -0.5, 0.0, 0.5, 0.0, &dist) == GEOLGP_OK);
  CHECK(dist == doctest::Approx(2.0).epsilon(1e-6));
  geolgp_weight_free(w);

  REQUIRE(geolgp_weight_radial_bump(1.0, 1.0, 0.0, 0.0, 0.3, &w) == GEOLGP_OK);
  REQUIRE(geolgp_weight_eval(w, 0.0, 0.0, &v, nullptr, nullptr) == GEOLGP_OK);
  CHECK(v > 1.5);
  REQUIRE(geolgp_distance(w, d, -0.9, 0.0, 0.9, 0.0, &dist) == GEOLGP_OK);
  CHECK(dist > 1.8);
  CHECK(dist < 1.8 * v);
  CHECK(geolgp_distance(w, d, 3.0, 0.0, 0.0, 0.0, &dist) != GEOLGP_OK);
  geolgp_weight_free(w);
  geolgp_domain_free(d);
  CHECK(geolgp_weight_constant(-1.0, &w) != GEOLGP_OK);
  CHECK(geolgp_weight_load_csv("/nonexistent/w.csv", &w) != GEOLGP_OK);
}

TEST_CASE("run writes identical artifacts twice") {
  geolgp_config* c = nullptr;
  REQUIRE(geolgp_config_parse(kSmall, nullptr, &c) == GEOLGP_OK);
  uint64_t h1 = 0, h2 = 0;
  REQUIRE(geolgp_config_hash(c, &h1) == GEOLGP_OK);
  const fs::path a = fs::current_path() / "capi_run_a";
  const fs::path b = fs::current_path() / "capi_run_b";
  fs::remove_all(a);
  fs::remove_all(b);
  int passed = 0;
  REQUIRE(geolgp_config_set_out_dir(c, a.string().c_str()) == GEOLGP_OK);
  REQUIRE(geolgp_run(c, &passed) == GEOLGP_OK);
  CHECK(passed == 1);
  REQUIRE(geolgp_config_set_out_dir(c, b.string().c_str()) == GEOLGP_OK);
  REQUIRE(geolgp_run(c, &passed) == GEOLGP_OK);
  REQUIRE(geolgp_config_hash(c, &h2) == GEOLGP_OK);
  CHECK(h1 == h2);
  geolgp_config_free(c);
  for (const char* f : {"plan.json", "rays.json", "sigma.csv", "sigma.pgm", "sigma_plus.csv",
                        "sigma_minus.csv", "u.csv", "u.pgm", "psi.csv", "report.json"}) {
    INFO(f);
    REQUIRE(fs::exists(a / f));
    CHECK(slurp(a / f) == slurp(b / f));
  }
  CHECK(slurp(a / "report.json").find("config_hash") != std::string::npos);
}
