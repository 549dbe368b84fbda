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

#include "geolgp/geolgp.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "geolgp/config.hpp"
#include "geolgp/domain.hpp"
#include "geolgp/io.hpp"
#include "geolgp/metric.hpp"
#include "geolgp/run.hpp"
#include "geolgp/weight.hpp"
#include "json.hpp"

struct geolgp_config {
  geolgp::Config config;
};
struct geolgp_weight {
  geolgp::ConformalWeight weight;
};
struct geolgp_domain {
  geolgp::DomainBoundary domain;
};

namespace {

thread_local std::string last_error;

geolgp_status to_status(geolgp::ErrorCode code) {
  return static_cast<geolgp_status>(static_cast<int>(code));
}

template <typename Fn>
geolgp_status guard(Fn&& fn) {
  try {
    fn();
    return GEOLGP_OK;
  } catch (const geolgp::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return GEOLGP_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) geolgp::fail(geolgp::ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* geolgp_version(void) { return "1.0.0"; }

const char* geolgp_status_name(geolgp_status status) {
  if (status == GEOLGP_OK) return "ok";
  if (status == GEOLGP_ERR_INTERNAL) return "internal";
  if (status >= GEOLGP_ERR_INVALID_ARGUMENT && status <= GEOLGP_ERR_IO) {
    return geolgp::error_code_name(static_cast<geolgp::ErrorCode>(status));
  }
  return "unknown";
}

const char* geolgp_last_error(void) { return last_error.c_str(); }

void geolgp_string_free(char* s) { delete[] s; }

geolgp_status geolgp_config_load(const char* path, geolgp_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new geolgp_config{geolgp::load_config(path)};
  });
}

geolgp_status geolgp_config_parse(const char* json_text, const char* base_dir,
                                  geolgp_config** out) {
  return guard([&] {
    need(json_text, "json_text");
    need(out, "out");
    *out = new geolgp_config{geolgp::parse_config(json_text, base_dir ? base_dir : ".")};
  });
}

void geolgp_config_free(geolgp_config* config) { delete config; }

geolgp_status geolgp_config_set_out_dir(geolgp_config* config, const char* dir) {
  return guard([&] {
    need(config, "config");
    need(dir, "dir");
    if (*dir == '\0') geolgp::fail(geolgp::ErrorCode::kInvalidArgument, "empty out_dir");
    config->config.out_dir = dir;
  });
}

geolgp_status geolgp_config_hash(const geolgp_config* config, uint64_t* hash) {
  return guard([&] {
    need(config, "config");
    need(hash, "hash");
    *hash = config->config.hash;
  });
}

geolgp_status geolgp_config_validate_file(const char* path, char** report) {
  bool problems = false;
  const geolgp_status st = guard([&] {
    need(path, "path");
    need(report, "report");
    const std::string p(path);
    const auto slash = p.find_last_of('/');
    const auto errors = geolgp::validate_config(geolgp::read_text(p),
                                                slash == std::string::npos ? "." : p.substr(0, slash));
    problems = !errors.empty();
    *report = copy_string(nlohmann::json(errors).dump());
  });
  if (st != GEOLGP_OK) return st;
  if (problems) {
    last_error = "schema validation failed";
    return GEOLGP_ERR_SCHEMA;
  }
  return GEOLGP_OK;
}

geolgp_status geolgp_run(const geolgp_config* config, int* checks_passed) {
  geolgp::RunResult result;
  const geolgp_status st = guard([&] {
    need(config, "config");
    need(checks_passed, "checks_passed");
    result = geolgp::run(config->config);
    *checks_passed = result.checks_passed() ? 1 : 0;
  });
  if (st != GEOLGP_OK) return st;
  if (result.failed) {
    last_error = result.error;
    *checks_passed = 0;
    return to_status(result.error_code);
  }
  return GEOLGP_OK;
}

geolgp_status geolgp_domain_circle(double radius, geolgp_domain** out) {
  return guard([&] {
    need(out, "out");
    *out = new geolgp_domain{geolgp::DomainBoundary::circle(radius)};
  });
}

geolgp_status geolgp_domain_ellipse(double a, double b, geolgp_domain** out) {
  return guard([&] {
    need(out, "out");
    *out = new geolgp_domain{geolgp::DomainBoundary::ellipse(a, b)};
  });
}

geolgp_status geolgp_domain_polar(const double* radii, size_t count, geolgp_domain** out) {
  return guard([&] {
    need(radii, "radii");
    need(out, "out");
    *out = new geolgp_domain{geolgp::DomainBoundary::polar(std::vector<double>(radii, radii + count))};
  });
}

void geolgp_domain_free(geolgp_domain* domain) { delete domain; }

geolgp_status geolgp_domain_point(const geolgp_domain* domain, double theta, double* x,
                                  double* y) {
  return guard([&] {
    need(domain, "domain");
    need(x, "x");
    need(y, "y");
    const geolgp::Vec2 p = domain->domain.point(theta);
    *x = p.x;
    *y = p.y;
  });
}

geolgp_status geolgp_weight_constant(double a, geolgp_weight** out) {
  return guard([&] {
    need(out, "out");
    *out = new geolgp_weight{geolgp::ConformalWeight::constant(a)};
  });
}

geolgp_status geolgp_weight_radial_bump(double a, double b, double cx, double cy, double width,
                                        geolgp_weight** out) {
  return guard([&] {
    need(out, "out");
    *out = new geolgp_weight{geolgp::ConformalWeight::radial_bump(a, b, {cx, cy}, width)};
  });
}

geolgp_status geolgp_weight_load_csv(const char* path, geolgp_weight** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new geolgp_weight{geolgp::ConformalWeight::load_csv(path)};
  });
}

void geolgp_weight_free(geolgp_weight* weight) { delete weight; }

geolgp_status geolgp_weight_eval(const geolgp_weight* weight, double x, double y, double* value,
                                 double* grad_x, double* grad_y) {
  return guard([&] {
    need(weight, "weight");
    const geolgp::WeightSample s = weight->weight.eval({x, y});
    if (value) *value = s.value;
    if (grad_x) *grad_x = s.gradient.x;
    if (grad_y) *grad_y = s.gradient.y;
  });
}

geolgp_status geolgp_distance(const geolgp_weight* weight, const geolgp_domain* domain,
                              double x0, double y0, double x1, double y1, double* out) {
  return guard([&] {
    need(weight, "weight");
    need(domain, "domain");
    need(out, "out");
    const geolgp::Metric metric(weight->weight, domain->domain);
    *out = metric.distance({x0, y0}, {x1, y1});
  });
}

}  // extern "C"
