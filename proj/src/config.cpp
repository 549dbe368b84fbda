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

#include "geolgp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <regex>
#include <sstream>

#include "json.hpp"

namespace geolgp {
namespace {

using json = nlohmann::json;

// "pi", "-pi/2", "3*pi/4", "1.5pi"
std::optional<double> parse_angle(const std::string& text) {
  static const std::regex re(
      R"(^\s*([+-])?\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) return std::nullopt;
  double v = kPi;
  if (m[2].matched) v *= std::stod(m[2].str());
  if (m[3].matched) {
    const double d = std::stod(m[3].str());
    if (d == 0.0) return std::nullopt;
    v /= d;
  }
  if (m[1].matched && m[1].str() == "-") v = -v;
  return v;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

class Reader {
 public:
  std::vector<std::string> errors;

  void error(const std::string& path, const std::string& msg) {
    errors.push_back(path + ": " + msg);
  }

  bool object(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    if (!j.is_object()) {
      error(path, "expected an object");
      return false;
    }
    for (const auto& item : j.items()) {
      bool known = false;
      for (const char* k : keys) known = known || item.key() == k;
      if (!known) error(join(path, item.key()), "unknown key");
    }
    return true;
  }

  std::optional<double> value(const json& v, const std::string& path, bool angle) {
    if (v.is_number()) return v.get<double>();
    if (angle && v.is_string()) {
      if (auto a = parse_angle(v.get<std::string>())) return a;
      error(path, "cannot read angle '" + v.get<std::string>() + "'");
      return std::nullopt;
    }
    error(path, angle ? "expected a number or an angle such as \"pi/2\"" : "expected a number");
    return std::nullopt;
  }

  double number(const json& obj, const std::string& path, const char* key, double def,
                bool required = false, bool angle = false) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
      if (required) error(p, "missing");
      return def;
    }
    return value(obj[key], p, angle).value_or(def);
  }

  int integer(const json& obj, const std::string& path, const char* key, int def,
              bool required = false) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
      if (required) error(p, "missing");
      return def;
    }
    const json& v = obj[key];
    if (!v.is_number_integer()) {
      error(p, "expected an integer");
      return def;
    }
    return v.get<int>();
  }

  std::string string(const json& obj, const std::string& path, const char* key,
                     const std::string& def, bool required = false) {
    const std::string p = join(path, key);
    if (!obj.contains(key)) {
      if (required) error(p, "missing");
      return def;
    }
    if (!obj[key].is_string()) {
      error(p, "expected a string");
      return def;
    }
    return obj[key].get<std::string>();
  }

  std::string choice(const json& obj, const std::string& path, const char* key,
                     const std::string& def, std::initializer_list<const char*> options,
                     bool required = false) {
    const std::string v = string(obj, path, key, def, required);
    for (const char* o : options) {
      if (v == o) return v;
    }
    std::string list;
    for (const char* o : options) list += std::string(list.empty() ? "" : ", ") + o;
    error(join(path, key), "unknown value '" + v + "' (expected one of " + list + ")");
    return def;
  }

  std::vector<double> numbers(const json& v, const std::string& path, bool angle) {
    std::vector<double> out;
    if (!v.is_array()) {
      error(path, "expected an array");
      return out;
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
      out.push_back(value(v[i], path + "[" + std::to_string(i) + "]", angle).value_or(0.0));
    }
    return out;
  }

  void positive(double v, const std::string& path) {
    if (!(v > 0.0) || !std::isfinite(v)) error(path, "must be positive");
  }
};

void read_domain(Reader& r, const json& j, DomainConfig& d) {
  const std::string path = "domain";
  if (!r.object(j, path, {"kind", "radius", "a", "b", "radii"})) return;
  d.kind = r.choice(j, path, "kind", "circle", {"circle", "ellipse", "polar"}, true);
  if (d.kind == "circle") {
    d.radius = r.number(j, path, "radius", 1.0);
    r.positive(d.radius, "domain.radius");
  } else if (d.kind == "ellipse") {
    d.a = r.number(j, path, "a", 1.0, true);
    d.b = r.number(j, path, "b", 1.0, true);
    r.positive(d.a, "domain.a");
    r.positive(d.b, "domain.b");
  } else {
    if (!j.contains("radii")) {
      r.error("domain.radii", "missing");
    } else {
      d.radii = r.numbers(j["radii"], "domain.radii", false);
      if (d.radii.size() < 3) r.error("domain.radii", "need at least 3 samples");
      for (double v : d.radii) r.positive(v, "domain.radii");
    }
  }
}

void read_weight(Reader& r, const json& j, WeightConfig& w, const std::string& base_dir) {
  const std::string path = "weight";
  if (!r.object(j, path, {"family", "a", "b", "center", "width", "csv", "samples"})) return;
  w.family = r.choice(j, path, "family", "constant",
                      {"constant", "radial_bump", "bilinear_grid"}, true);
  if (w.family == "constant" || w.family == "radial_bump") {
    w.a = r.number(j, path, "a", 1.0, true);
  }
  if (w.family == "constant") {
    r.positive(w.a, "weight.a");
  } else if (w.family == "radial_bump") {
    w.b = r.number(j, path, "b", 0.0, true);
    w.width = r.number(j, path, "width", 1.0, true);
    r.positive(w.width, "weight.width");
    if (j.contains("center")) {
      const auto c = r.numbers(j["center"], "weight.center", false);
      if (c.size() != 2) {
        r.error("weight.center", "expected [x, y]");
      } else {
        w.center = {c[0], c[1]};
      }
    }
    if (!(w.a > 0.0) || !(w.a + std::min(w.b, 0.0) > 0.0)) {
      r.error("weight", "radial_bump must stay positive (a > 0 and a + b > 0)");
    }
  } else {
    const bool has_csv = j.contains("csv"), has_samples = j.contains("samples");
    if (has_csv == has_samples) {
      r.error("weight", "bilinear_grid needs exactly one of csv, samples");
    } else if (has_csv) {
      w.csv = r.string(j, path, "csv", "");
      if (!w.csv.empty() && w.csv.front() != '/') w.csv = base_dir + "/" + w.csv;
    } else {
      const json& s = j["samples"];
      const std::string sp = "weight.samples";
      if (r.object(s, sp, {"nx", "ny", "x0", "y0", "h", "values"})) {
        w.samples.nx = r.integer(s, sp, "nx", 0, true);
        w.samples.ny = r.integer(s, sp, "ny", 0, true);
        w.samples.x0 = r.number(s, sp, "x0", 0.0, true);
        w.samples.y0 = r.number(s, sp, "y0", 0.0, true);
        w.samples.h = r.number(s, sp, "h", 0.0, true);
        r.positive(w.samples.h, sp + ".h");
        if (s.contains("values")) w.samples.values = r.numbers(s["values"], sp + ".values", false);
        if (w.samples.nx < 2 || w.samples.ny < 2) r.error(sp, "need nx, ny >= 2");
        if (w.samples.values.size() !=
            static_cast<std::size_t>(std::max(w.samples.nx, 0)) * std::max(w.samples.ny, 0)) {
          r.error(sp + ".values", "expected nx * ny values");
        }
        for (double v : w.samples.values) r.positive(v, sp + ".values");
      }
    }
  }
}

DatumPiece::Kind piece_kind(const std::string& s) {
  if (s == "affine") return DatumPiece::Kind::kAffine;
  if (s == "sinusoid") return DatumPiece::Kind::kSinusoid;
  if (s == "sinusoid_power") return DatumPiece::Kind::kSinusoidPower;
  if (s == "power") return DatumPiece::Kind::kPower;
  return DatumPiece::Kind::kConstant;
}

std::size_t piece_arity(DatumPiece::Kind k) {
  switch (k) {
    case DatumPiece::Kind::kConstant: return 1;
    case DatumPiece::Kind::kAffine: return 2;
    case DatumPiece::Kind::kSinusoid: return 4;
    case DatumPiece::Kind::kSinusoidPower: return 5;
    case DatumPiece::Kind::kPower: return 4;
  }
  return 0;
}

void read_datum(Reader& r, const json& j, std::vector<DatumPiece>& pieces) {
  const std::string path = "boundary_datum";
  if (!r.object(j, path, {"pieces"})) return;
  if (!j.contains("pieces") || !j["pieces"].is_array() || j["pieces"].empty()) {
    r.error(path + ".pieces", "expected a non-empty array");
    return;
  }
  for (std::size_t i = 0; i < j["pieces"].size(); ++i) {
    const json& p = j["pieces"][i];
    const std::string pp = path + ".pieces[" + std::to_string(i) + "]";
    if (!r.object(p, pp, {"from", "to", "kind", "params"})) continue;
    DatumPiece piece;
    piece.from = r.number(p, pp, "from", 0.0, true, true);
    piece.to = r.number(p, pp, "to", 0.0, true, true);
    piece.kind = piece_kind(r.choice(p, pp, "kind", "constant",
                                     {"constant", "affine", "sinusoid", "sinusoid_power", "power"},
                                     true));
    if (!p.contains("params")) {
      r.error(pp + ".params", "missing");
    } else {
      piece.params = r.numbers(p["params"], pp + ".params", true);
      if (piece.params.size() != piece_arity(piece.kind)) {
        r.error(pp + ".params", "expected " + std::to_string(piece_arity(piece.kind)) + " values");
      }
    }
    if (!(piece.to > piece.from)) r.error(pp, "'to' must exceed 'from'");
    pieces.push_back(piece);
  }
}

void read_checks(Reader& r, const json& j, std::vector<CheckConfig>& checks) {
  if (!j.is_array()) {
    r.error("checks", "expected an array");
    return;
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string path = "checks[" + std::to_string(i) + "]";
    CheckConfig c;
    if (j[i].is_string()) {
      c.name = j[i].get<std::string>();
    } else if (r.object(j[i], path, {"name", "alpha", "levels", "n"})) {
      c.name = r.string(j[i], path, "name", "", true);
      c.alpha = r.number(j[i], path, "alpha", 1.0);
      c.levels = r.integer(j[i], path, "levels", 3);
      if (j[i].contains("n")) {
        c.n.clear();
        for (double v : r.numbers(j[i]["n"], path + ".n", false)) c.n.push_back(static_cast<int>(v));
      }
      if (!(c.alpha > 0.0 && c.alpha <= 1.0)) r.error(path + ".alpha", "must be in (0, 1]");
      if (c.levels < 2) r.error(path + ".levels", "must be at least 2");
      for (int v : c.n) {
        if (v < 1) r.error(path + ".n", "atom counts must be positive");
      }
    } else {
      continue;
    }
    const auto& names = known_checks();
    if (std::find(names.begin(), names.end(), c.name) == names.end()) {
      r.error(path, "unknown check '" + c.name + "'");
    }
    checks.push_back(c);
  }
}

Config read(const std::string& text, const std::string& base_dir, Reader& r) {
  Config c;
  c.base_dir = base_dir;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    r.error("(document)", std::string("invalid JSON: ") + e.what());
    return c;
  }
  if (!r.object(j, "(document)", {"domain", "weight", "boundary_datum", "grid", "atoms",
                                  "tau_split", "p_values", "checks", "seed", "out_dir",
                                  "solver"})) {
    return c;
  }
  for (const char* k : {"domain", "weight", "boundary_datum", "grid"}) {
    if (!j.contains(k)) r.error(k, "missing");
  }
  if (j.contains("domain")) read_domain(r, j["domain"], c.domain);
  if (j.contains("weight")) read_weight(r, j["weight"], c.weight, base_dir);
  if (j.contains("boundary_datum")) read_datum(r, j["boundary_datum"], c.pieces);
  if (j.contains("grid") && r.object(j["grid"], "grid", {"n", "h"})) {
    const json& g = j["grid"];
    if (g.contains("n") == g.contains("h")) {
      r.error("grid", "give exactly one of n, h");
    } else if (g.contains("n")) {
      c.grid_n = r.integer(g, "grid", "n", 0);
      if (c.grid_n < 8 || c.grid_n > 8192) r.error("grid.n", "must be in [8, 8192]");
    } else {
      c.grid_h = r.number(g, "grid", "h", 0.0);
      r.positive(c.grid_h, "grid.h");
    }
  }
  if (j.contains("atoms") && r.object(j["atoms"], "atoms", {"n_source", "n_target"})) {
    c.n_source = r.integer(j["atoms"], "atoms", "n_source", c.n_source);
    c.n_target = r.integer(j["atoms"], "atoms", "n_target", c.n_target);
    if (c.n_source < 1) r.error("atoms.n_source", "must be positive");
    if (c.n_target < 1) r.error("atoms.n_target", "must be positive");
  }
  c.tau_split = r.number(j, "", "tau_split", 0.5);
  if (!(c.tau_split >= 0.0 && c.tau_split <= 1.0)) r.error("tau_split", "must be in [0, 1]");
  if (j.contains("p_values")) {
    c.p_values.clear();
    if (!j["p_values"].is_array()) {
      r.error("p_values", "expected an array");
    } else {
      for (std::size_t i = 0; i < j["p_values"].size(); ++i) {
        const json& v = j["p_values"][i];
        const std::string path = "p_values[" + std::to_string(i) + "]";
        if (v.is_string() && v.get<std::string>() == "inf") {
          c.p_values.push_back(INFINITY);
        } else if (auto p = r.value(v, path, false)) {
          if (*p < 1.0) r.error(path, "must be >= 1");
          c.p_values.push_back(*p);
        }
      }
    }
  }
  if (j.contains("checks")) {
    read_checks(r, j["checks"], c.checks);
  } else {
    for (const auto& n : default_checks()) c.checks.push_back({n});
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      r.error("seed", "expected a non-negative integer");
    } else {
      c.seed = j["seed"].get<std::uint64_t>();
    }
  }
  c.out_dir = r.string(j, "", "out_dir", c.out_dir);
  if (c.out_dir.empty()) r.error("out_dir", "must not be empty");
  c.solver = r.choice(j, "", "solver", "noncrossing", {"noncrossing", "lp"}) == "lp"
                 ? SolverKind::kLp
                 : SolverKind::kNoncrossing;

  c.canonical = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : c.canonical) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  c.hash = h;

  // Semantic checks that need the assembled objects.
  if (r.errors.empty()) {
    try {
      Problem p = make_problem(c);
      const GridSpec g = make_grid(c, p.domain);
      if (g.nx > 8192 || g.ny > 8192) r.error("grid.h", "grid would exceed 8192 cells across");
    } catch (const Error& e) {
      r.error(e.code() == ErrorCode::kIo ? "weight.csv" : "(instance)", e.what());
    }
  }
  return c;
}

}  // namespace

const std::vector<std::string>& default_checks() {
  static const std::vector<std::string> names{
      "convexity", "duality",          "crossings",      "divergence", "density",
      "lp",        "dual_equivalence", "reconstruction", "level_sets"};
  return names;
}

std::vector<std::string> validate_config(const std::string& json_text,
                                         const std::string& base_dir) {
  Reader r;
  read(json_text, base_dir, r);
  return r.errors;
}

Config parse_config(const std::string& json_text, const std::string& base_dir) {
  Reader r;
  Config c = read(json_text, base_dir, r);
  if (!r.errors.empty()) {
    std::string msg;
    for (const auto& e : r.errors) msg += (msg.empty() ? "" : "; ") + e;
    fail(ErrorCode::kSchema, msg);
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  const auto slash = path.find_last_of('/');
  return parse_config(ss.str(), slash == std::string::npos ? "." : path.substr(0, slash));
}

Problem make_problem(const Config& c) {
  DomainBoundary domain = c.domain.kind == "ellipse" ? DomainBoundary::ellipse(c.domain.a, c.domain.b)
                          : c.domain.kind == "polar" ? DomainBoundary::polar(c.domain.radii)
                                                     : DomainBoundary::circle(c.domain.radius);
  ConformalWeight weight = ConformalWeight::constant(1.0);
  if (c.weight.family == "constant") {
    weight = ConformalWeight::constant(c.weight.a);
  } else if (c.weight.family == "radial_bump") {
    weight = ConformalWeight::radial_bump(c.weight.a, c.weight.b, c.weight.center, c.weight.width);
  } else if (!c.weight.csv.empty()) {
    weight = ConformalWeight::load_csv(c.weight.csv);
  } else {
    weight = ConformalWeight::bilinear_grid(c.weight.samples);
  }
  const Box& vb = weight.valid_box();
  const Box bb = domain.bbox();
  if (!vb.contains(bb.lo) || !vb.contains(bb.hi)) {
    fail(ErrorCode::kDomain, "weight samples do not cover the domain");
  }
  BoundaryDatum datum(c.pieces, domain);
  Problem p(std::move(domain), std::move(weight), std::move(datum));
  p.n_source = c.n_source;
  p.n_target = c.n_target;
  p.tau_split = c.tau_split;
  p.solver = c.solver;
  return p;
}

GridSpec make_grid(const Config& c, const DomainBoundary& domain) {
  return c.grid_n > 0 ? grid_for_domain(domain, c.grid_n) : grid_for_domain_h(domain, c.grid_h);
}

CheckOptions make_check_options(const Config& c, const CheckConfig& check) {
  CheckOptions o;
  o.p_values = c.p_values;
  o.seed = c.seed;
  o.holder_alpha = check.alpha;
  o.ladder_levels = check.levels;
  o.stability_n = check.n;
  return o;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace geolgp
