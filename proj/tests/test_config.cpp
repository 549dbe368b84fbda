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

#include <string>

#include "geolgp/config.hpp"
#include "json.hpp"

using namespace geolgp;
using nlohmann::json;

namespace {

json base() {
  return json::parse(R"({
    "domain": {"kind": "circle", "radius": 1.0},
    "weight": {"family": "constant", "a": 1.0},
    "boundary_datum": {"pieces": [
      {"from": 0, "to": "pi", "kind": "constant", "params": [1]},
      {"from": "pi", "to": "2*pi", "kind": "constant", "params": [0]}]},
    "grid": {"n": 64},
    "atoms": {"n_source": 16, "n_target": 16},
    "seed": 3,
    "out_dir": "out/t"
  })");
}

bool mentions(const std::vector<std::string>& errors, const std::string& what) {
  for (const auto& e : errors) {
    if (e.find(what) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("valid config has no problems") {
  CHECK(validate_config(base().dump()).empty());
  const Config c = parse_config(base().dump());
  CHECK(c.grid_n == 64);
  CHECK(c.n_source == 16);
  CHECK(c.seed == 3);
  CHECK(c.checks.size() == default_checks().size());
}

TEST_CASE("weight family typo names the field") {
  json j = base();
  j["weight"]["family"] = "constnt";
  const auto errors = validate_config(j.dump());
  REQUIRE(!errors.empty());
  CHECK(mentions(errors, "weight.family"));
  CHECK_THROWS_AS(parse_config(j.dump()), Error);
}

TEST_CASE("negative grid spacing is rejected") {
  json j = base();
  j["grid"] = {{"h", -0.01}};
  const auto errors = validate_config(j.dump());
  REQUIRE(!errors.empty());
  CHECK(mentions(errors, "grid.h"));
}

TEST_CASE("unknown keys are rejected") {
  json j = base();
  j["grid"]["spacing"] = 0.1;
  CHECK(mentions(validate_config(j.dump()), "grid.spacing"));
  j = base();
  j["extra"] = 1;
  CHECK(mentions(validate_config(j.dump()), "extra"));
}

TEST_CASE("grid needs exactly one of n, h") {
  json j = base();
  j["grid"] = {{"n", 64}, {"h", 0.1}};
  CHECK(mentions(validate_config(j.dump()), "grid"));
  j["grid"] = json::object();
  CHECK(mentions(validate_config(j.dump()), "grid"));
}

TEST_CASE("missing sections and bad values") {
  json j = base();
  j.erase("domain");
  CHECK(mentions(validate_config(j.dump()), "domain"));
  j = base();
  j["tau_split"] = 1.5;
  CHECK(mentions(validate_config(j.dump()), "tau_split"));
  j = base();
  j["p_values"] = {1, 0.5};
  CHECK(mentions(validate_config(j.dump()), "p_values[1]"));
  j = base();
  j["checks"] = {"duality", "nonsense"};
  CHECK(mentions(validate_config(j.dump()), "checks[1]"));
  CHECK(mentions(validate_config("{not json"), "invalid JSON"));
}

TEST_CASE("unbalanced datum is an instance error") {
  json j = base();
  j["boundary_datum"]["pieces"][1]["to"] = "3*pi/2";
  CHECK(!validate_config(j.dump()).empty());
}

TEST_CASE("angles accept pi expressions") {
  json j = base();
  j["p_values"] = {1, 2, "inf"};
  const Config c = parse_config(j.dump());
  REQUIRE(c.pieces.size() == 2);
  CHECK(c.pieces[0].to == doctest::Approx(kPi));
  CHECK(c.pieces[1].to == doctest::Approx(kTwoPi));
  CHECK(std::isinf(c.p_values.back()));
}

TEST_CASE("hash is deterministic and sensitive") {
  const Config a = parse_config(base().dump());
  const Config b = parse_config(base().dump(2));
  CHECK(a.hash == b.hash);
  CHECK(hash_hex(a.hash).size() == 16);
  json j = base();
  j["seed"] = 4;
  CHECK(parse_config(j.dump()).hash != a.hash);
}

TEST_CASE("empty checks list is allowed") {
  json j = base();
  j["checks"] = json::array();
  CHECK(parse_config(j.dump()).checks.empty());
}

TEST_CASE("missing file raises io") {
  try {
    load_config("/nonexistent/geolgp.json");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}
