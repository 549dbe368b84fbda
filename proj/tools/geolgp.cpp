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

// geolgp command line: run / validate / report.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "geolgp/geolgp.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitChecksFailed = 1;
constexpr int kExitSchema = 2;
constexpr int kExitSolver = 3;

int do_run(const std::string& path, const std::string& out_dir) {
  geolgp_config* config = nullptr;
  geolgp_status st = geolgp_config_load(path.c_str(), &config);
  if (st != GEOLGP_OK) {
    std::fprintf(stderr, "geolgp: %s: %s\n", path.c_str(), geolgp_last_error());
    return kExitSchema;
  }
  if (!out_dir.empty() && geolgp_config_set_out_dir(config, out_dir.c_str()) != GEOLGP_OK) {
    std::fprintf(stderr, "geolgp: %s\n", geolgp_last_error());
    geolgp_config_free(config);
    return kExitSchema;
  }
  int passed = 0;
  st = geolgp_run(config, &passed);
  geolgp_config_free(config);
  if (st == GEOLGP_ERR_IO) {
    std::fprintf(stderr, "geolgp: %s\n", geolgp_last_error());
    return kExitSolver;
  }
  if (st != GEOLGP_OK) {
    std::fprintf(stderr, "geolgp: solver failure (%s): %s\n", geolgp_status_name(st),
                 geolgp_last_error());
    return kExitSolver;
  }
  return passed ? kExitOk : kExitChecksFailed;
}

int do_validate(const std::string& path) {
  char* report = nullptr;
  const geolgp_status st = geolgp_config_validate_file(path.c_str(), &report);
  if (st == GEOLGP_ERR_IO || report == nullptr) {
    std::fprintf(stderr, "geolgp: %s\n", geolgp_last_error());
    return kExitSchema;
  }
  const auto errors = nlohmann::json::parse(report);
  geolgp_string_free(report);
  if (errors.empty()) {
    std::printf("%s: ok\n", path.c_str());
    return kExitOk;
  }
  for (const auto& e : errors) std::printf("%s: %s\n", path.c_str(), e.get<std::string>().c_str());
  return kExitSchema;
}

int do_report(const std::string& dir) {
  std::ifstream in(dir + "/report.json");
  if (!in) {
    std::fprintf(stderr, "geolgp: no report.json in %s\n", dir.c_str());
    return kExitSchema;
  }
  nlohmann::ordered_json r;
  try {
    r = nlohmann::ordered_json::parse(in);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "geolgp: %s/report.json: %s\n", dir.c_str(), e.what());
    return kExitSchema;
  }
  std::printf("config   %s\n", r.value("config_hash", "?").c_str());
  std::printf("status   %s\n", r.value("status", "?").c_str());
  if (r.contains("grid")) {
    std::printf("grid     %d x %d, h = %.6g\n", r["grid"].value("nx", 0), r["grid"].value("ny", 0),
                r["grid"].value("h", 0.0));
  }
  if (r.contains("plan")) {
    std::printf("cost     %.12g (%d flows)\n", r["plan"].value("total_cost", 0.0),
                r["plan"].value("flows", 0));
  }
  if (r.contains("error")) {
    std::printf("error    [%s] %s: %s\n", r["error"].value("stage", "").c_str(),
                r["error"].value("code", "").c_str(), r["error"].value("message", "").c_str());
  }
  bool all = true;
  for (const auto& c : r.value("checks", nlohmann::ordered_json::array())) {
    const bool pass = c.value("pass", false);
    all = all && pass;
    std::printf("\n%s %s%s\n", pass ? "PASS" : "FAIL", c.value("name", "?").c_str(),
                c.value("inconclusive", false) ? " (inconclusive)" : "");
    for (const auto& [k, v] : c["metrics"].items()) {
      if (v.is_null()) {
        std::printf("    %-28s null\n", k.c_str());
      } else {
        std::printf("    %-28s %.10g\n", k.c_str(), v.get<double>());
      }
    }
    for (const auto& n : c.value("notes", nlohmann::ordered_json::array())) {
      std::printf("    note: %s\n", n.get<std::string>().c_str());
    }
  }
  return all && r.value("status", "") == "ok" ? kExitOk : kExitChecksFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted least gradient solver via boundary optimal transport"};
  app.require_subcommand(1);
  app.set_version_flag("--version", geolgp_version());

  std::string run_config, run_out;
  auto* run = app.add_subcommand("run", "solve a config and write artifacts");
  run->add_option("config", run_config, "config JSON")->required();
  run->add_option("-o,--out-dir", run_out, "override out_dir");

  std::string validate_config;
  auto* validate = app.add_subcommand("validate", "check a config against the schema");
  validate->add_option("config", validate_config, "config JSON")->required();

  std::string report_dir;
  auto* report = app.add_subcommand("report", "print report.json of an output directory");
  report->add_option("out_dir", report_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSchema;
  }
  if (*run) return do_run(run_config, run_out);
  if (*validate) return do_validate(validate_config);
  return do_report(report_dir);
}
