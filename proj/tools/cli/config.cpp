// Copyright 2026 The fkpressure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <string_view>

#include "fkp/errors.hpp"

namespace fkp::cli {
namespace {

enum class KeyType { text, size, size_list, number, number_list, text_list, matrix };

const std::map<std::string, KeyType>& key_types() {
  static const std::map<std::string, KeyType> types = {
      {"route", KeyType::text},
      {"seed", KeyType::size},
      {"system.kind", KeyType::text},
      {"system.theta", KeyType::number},
      {"system.slope", KeyType::number},
      {"system.r", KeyType::number},
      {"system.symbols", KeyType::size},
      {"system.matrix", KeyType::matrix},
      {"system.distances", KeyType::matrix},
      {"system.map", KeyType::size_list},
      {"potential.kind", KeyType::text},
      {"potential.values", KeyType::number_list},
      {"grid.n", KeyType::size_list},
      {"grid.epsilon", KeyType::number_list},
      {"grid.alpha", KeyType::number_list},
      {"grid.delta", KeyType::number_list},
      {"grid.n_delta", KeyType::size_list},
      {"grid.scale", KeyType::text_list},
      {"grid.mode", KeyType::text},
      {"grid.net", KeyType::number_list},
      {"grid.partition", KeyType::number},
      {"grid.eps_sep", KeyType::number_list},
      {"grid.tail", KeyType::size},
      {"grid.tail_fraction", KeyType::number},
      {"grid.reference", KeyType::number},
      {"states.x", KeyType::text},
      {"states.y", KeyType::text},
      {"verify.suite", KeyType::text},
      {"output.csv", KeyType::text},
      {"output.json", KeyType::text},
      {"output.plot_dir", KeyType::text},
      {"output.edges_dir", KeyType::text},
      {"caps.net", KeyType::size},
      {"caps.states", KeyType::size},
      {"caps.enumeration", KeyType::size},
  };
  return types;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::string format_number(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::size_t parse_size(const std::string& text) {
  const std::string t = trim(text);
  std::size_t v = 0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size()) {
    throw UsageError("expected a non-negative integer, got '" + t + "'");
  }
  return v;
}

std::vector<std::string> split_items(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), '\t', ' ');
  std::vector<std::string> out;
  for (const std::string& part : split(t, ',')) {
    std::istringstream words(part);
    std::string w;
    bool any = false;
    while (words >> w) {
      out.push_back(w);
      any = true;
    }
    if (!any) throw UsageError("empty list item in '" + trim(text) + "'");
  }
  return out;
}

std::vector<std::vector<double>> parse_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  for (const std::string& row : split(text, ';')) {
    std::vector<double> values;
    for (const std::string& item : split_items(row)) values.push_back(parse_number(item));
    rows.push_back(std::move(values));
  }
  return rows;
}

std::string canonical(KeyType type, const std::string& raw) {
  std::ostringstream out;
  switch (type) {
    case KeyType::text:
      return trim(raw);
    case KeyType::size:
      return std::to_string(parse_size(raw));
    case KeyType::number:
      return format_number(parse_number(raw));
    case KeyType::size_list:
      for (std::size_t v : parse_size_list(raw)) out << v << ',';
      return out.str();
    case KeyType::number_list:
      for (double v : parse_number_list(raw)) out << format_number(v) << ',';
      return out.str();
    case KeyType::text_list:
      for (const std::string& v : split_items(raw)) out << v << ',';
      return out.str();
    case KeyType::matrix:
      for (const auto& row : parse_matrix(raw)) {
        for (double v : row) out << format_number(v) << ',';
        out << ';';
      }
      return out.str();
  }
  return raw;
}

std::string normalize_kind(const std::string& kind) {
  std::string k = kind;
  std::replace(k.begin(), k.end(), '-', '_');
  return k;
}

std::size_t line_of(const std::string& text, std::size_t pos) {
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + pos, '\n')) + 1;
}

std::string json_scalar(const nlohmann::json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) return format_number(v.get<double>());
  throw UsageError(where + ": unsupported JSON value " + v.dump());
}

std::string json_value(const nlohmann::json& v, const std::string& where) {
  if (!v.is_array()) return json_scalar(v, where);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += v[i].is_array() ? "; " : ", ";
    if (v[i].is_array()) {
      for (std::size_t j = 0; j < v[i].size(); ++j) {
        if (j > 0) out += ", ";
        out += json_scalar(v[i][j], where);
      }
    } else {
      out += json_scalar(v[i], where);
    }
  }
  return out;
}

void flatten_object(const nlohmann::json& obj, const std::string& prefix,
                    const std::string& text, std::size_t search_from,
                    const std::string& origin, EntryMap& out) {
  for (const auto& [key, value] : obj.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    const std::size_t pos = text.find("\"" + key + "\"", search_from);
    const std::string where =
        pos == std::string::npos ? origin : origin + ":" + std::to_string(line_of(text, pos));
    if (value.is_object()) {
      flatten_object(value, full, text, pos == std::string::npos ? search_from : pos, origin,
                     out);
      continue;
    }
    out[full] = Entry{json_value(value, where), where};
  }
}

// Typed access to one entry with the source attached to every error.
class Reader {
 public:
  explicit Reader(const EntryMap& entries) : entries_(entries) {}

  bool has(const std::string& key) const { return entries_.contains(key); }

  const Entry& entry(const std::string& key) const { return entries_.at(key); }

  template <typename F>
  auto get(const std::string& key, F parse) const -> decltype(parse(std::string())) {
    const Entry& e = entries_.at(key);
    try {
      return parse(e.value);
    } catch (const UsageError& err) {
      throw UsageError(e.source + ": " + key + ": " + err.what());
    } catch (const DomainError& err) {
      throw UsageError(e.source + ": " + key + ": " + err.what());
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    const auto it = entries_.find(key);
    const std::string where = it == entries_.end() ? "config" : it->second.source;
    throw UsageError(where + ": " + key + ": " + message);
  }

  void require(const std::string& key, const std::string& why) const {
    if (!has(key)) throw UsageError("missing key '" + key + "' (" + why + ")");
  }

 private:
  const EntryMap& entries_;
};

template <typename T>
void require_nonempty(const std::vector<T>& v, const std::string& key, const std::string& route) {
  if (v.empty()) throw UsageError("missing key '" + key + "' (needed by route " + route + ")");
}

}  // namespace

std::string to_string(RouteKind r) {
  switch (r) {
    case RouteKind::bowen: return "bowen";
    case RouteKind::fk: return "fk";
    case RouteKind::po: return "po";
    case RouteKind::fkpo: return "fkpo";
    case RouteKind::scaled: return "scaled";
    case RouteKind::fkdist: return "fkdist";
    case RouteKind::verify: return "verify";
    case RouteKind::report: return "report";
  }
  return "unknown";
}

RouteKind parse_route(const std::string& text) {
  for (RouteKind r : {RouteKind::bowen, RouteKind::fk, RouteKind::po, RouteKind::fkpo,
                      RouteKind::scaled, RouteKind::fkdist, RouteKind::verify,
                      RouteKind::report}) {
    if (to_string(r) == trim(text)) return r;
  }
  throw UsageError("unknown route '" + trim(text) + "'");
}

double parse_number(const std::string& text) {
  const std::string t = trim(text);
  const auto slash = t.find('/');
  if (slash != std::string::npos) {
    const double num = parse_number(t.substr(0, slash));
    const double den = parse_number(t.substr(slash + 1));
    if (den == 0.0) throw UsageError("division by zero in '" + t + "'");
    return num / den;
  }
  double v = 0.0;
  const auto r = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || r.ec != std::errc() || r.ptr != t.data() + t.size() || !std::isfinite(v)) {
    throw UsageError("expected a finite number, got '" + t + "'");
  }
  return v;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& item : split_items(text)) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_size(item));
      continue;
    }
    const std::size_t lo = parse_size(item.substr(0, dots));
    const std::size_t hi = parse_size(item.substr(dots + 2));
    if (lo > hi) throw UsageError("empty range '" + item + "'");
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& item : split_items(text)) out.push_back(parse_number(item));
  return out;
}

EntryMap flatten_text(const std::string& text, const std::string& origin) {
  EntryMap out;
  std::vector<std::pair<std::string, std::size_t>> blocks;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  auto where = [&](std::size_t l) { return origin + ":" + std::to_string(l); };
  auto valid_name = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' || c == '.';
    });
  };
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) continue;
    if (s == "}") {
      if (blocks.empty()) throw UsageError(where(line) + ": unmatched '}'");
      blocks.pop_back();
      continue;
    }
    if (s.back() == '{') {
      const std::string name = trim(s.substr(0, s.size() - 1));
      if (!valid_name(name)) throw UsageError(where(line) + ": bad block name '" + name + "'");
      blocks.emplace_back(name, line);
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw UsageError(where(line) + ": expected 'key = value', '<block> {' or '}'");
    }
    const std::string key = trim(s.substr(0, eq));
    if (!valid_name(key)) throw UsageError(where(line) + ": bad key '" + key + "'");
    std::string full;
    for (const auto& b : blocks) full += b.first + ".";
    full += key;
    if (const auto it = out.find(full); it != out.end()) {
      throw UsageError(where(line) + ": duplicate key '" + full + "' (first set at " +
                       it->second.source + ")");
    }
    out[full] = Entry{trim(s.substr(eq + 1)), where(line)};
  }
  if (!blocks.empty()) {
    throw UsageError(where(blocks.back().second) + ": block '" + blocks.back().first +
                     "' is never closed");
  }
  return out;
}

EntryMap flatten_json(const std::string& text, const std::string& origin) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    throw UsageError(origin + ":" + std::to_string(line_of(text, pos)) + ": invalid JSON: " +
                     e.what());
  }
  if (!doc.is_object()) throw UsageError(origin + ":1: JSON config must be an object");
  EntryMap out;
  flatten_object(doc, "", text, 0, origin, out);
  return out;
}

EntryMap flatten_config(const std::string& text, const std::string& origin) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return flatten_json(text, origin);
  return flatten_text(text, origin);
}

EntryMap read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return flatten_config(buf.str(), path);
}

EntryMap merge_flags(const EntryMap& config, const EntryMap& flags) {
  EntryMap out = config;
  for (const auto& [key, flag] : flags) {
    const auto it = config.find(key);
    if (it != config.end()) {
      const auto type = key_types().find(key);
      std::string a = it->second.value;
      std::string b = flag.value;
      if (type != key_types().end()) {
        try {
          a = canonical(type->second, a);
          b = canonical(type->second, b);
        } catch (const UsageError&) {
        }
        if (key == "system.kind") {
          a = normalize_kind(a);
          b = normalize_kind(b);
        }
      }
      if (a != b) {
        throw UsageError(flag.source + " sets " + key + " = '" + flag.value +
                         "' but " + it->second.source + " sets it to '" + it->second.value +
                         "'");
      }
    }
    out[key] = flag;
  }
  return out;
}

ExperimentConfig build_config(const EntryMap& entries) {
  for (const auto& [key, e] : entries) {
    if (!key_types().contains(key)) throw UsageError(e.source + ": unknown key '" + key + "'");
  }
  const Reader r(entries);
  ExperimentConfig c;
  auto text = [](const std::string& s) { return trim(s); };
  auto text_list = [](const std::string& s) { return split_items(s); };
  auto positive_size = [](const std::string& s) {
    const std::size_t v = parse_size(s);
    if (v == 0) throw UsageError("must be positive");
    return v;
  };

  if (r.has("route")) c.route = r.get("route", parse_route);
  if (r.has("seed")) c.seed = r.get("seed", parse_size);

  // System.
  if (r.has("system.kind")) c.system.kind = normalize_kind(r.get("system.kind", text));
  SystemConfig& sys = c.system;
  const std::map<std::string, std::string> parameter_key = {
      {"rotation", "system.theta"}, {"tent", "system.slope"}, {"logistic", "system.r"}};
  const std::set<std::string> kinds = {"doubling", "rotation", "tent", "logistic",
                                       "full_shift", "sft", "golden", "finite"};
  if (!kinds.contains(sys.kind)) r.fail("system.kind", "unknown system kind '" + sys.kind + "'");
  for (const auto& [kind, key] : parameter_key) {
    if (r.has(key) && sys.kind != kind) r.fail(key, "does not apply to system kind " + sys.kind);
  }
  auto only_for = [&](const std::string& key, std::initializer_list<const char*> allowed) {
    if (!r.has(key)) return;
    for (const char* k : allowed) {
      if (sys.kind == k) return;
    }
    r.fail(key, "does not apply to system kind " + sys.kind);
  };
  only_for("system.symbols", {"full_shift"});
  only_for("system.matrix", {"sft"});
  only_for("system.distances", {"finite"});
  only_for("system.map", {"finite"});
  if (const auto it = parameter_key.find(sys.kind); it != parameter_key.end()) {
    r.require(it->second, "system kind " + sys.kind);
    sys.parameter = r.get(it->second, parse_number);
  }
  if (sys.kind == "golden") {
    sys.kind = "sft";
    sys.matrix = {{1, 1}, {1, 0}};
  } else if (sys.kind == "full_shift") {
    r.require("system.symbols", "system kind full_shift");
    sys.symbols = static_cast<int>(r.get("system.symbols", parse_size));
  } else if (sys.kind == "sft") {
    r.require("system.matrix", "system kind sft");
    for (const auto& row : r.get("system.matrix", parse_matrix)) {
      std::vector<int> ints;
      for (double v : row) {
        if (v != 0.0 && v != 1.0) r.fail("system.matrix", "entries must be 0 or 1");
        ints.push_back(static_cast<int>(v));
      }
      sys.matrix.push_back(std::move(ints));
    }
  } else if (sys.kind == "finite") {
    r.require("system.distances", "system kind finite");
    r.require("system.map", "system kind finite");
    sys.distances = r.get("system.distances", parse_matrix);
    sys.map = r.get("system.map", parse_size_list);
  }
  SystemSpec spec = SystemSpec::doubling();
  try {
    spec = make_system(sys);
  } catch (const std::exception& e) {
    r.fail(r.has("system.kind") ? "system.kind" : "system", e.what());
  }

  // Potential.
  if (r.has("potential.kind")) c.potential.kind = r.get("potential.kind", text);
  const std::set<std::string> pkinds = {"zero", "symbols", "polynomial"};
  if (!pkinds.contains(c.potential.kind)) {
    r.fail("potential.kind", "unknown potential kind '" + c.potential.kind + "'");
  }
  if (c.potential.kind == "zero") {
    if (r.has("potential.values")) r.fail("potential.values", "the zero potential takes no values");
  } else {
    r.require("potential.values", "potential kind " + c.potential.kind);
    c.potential.values = r.get("potential.values", parse_number_list);
  }
  try {
    make_potential(c.potential).check_compatible(spec);
  } catch (const std::exception& e) {
    r.fail(r.has("potential.kind") ? "potential.kind" : "potential", e.what());
  }

  // Grids.
  GridConfig& g = c.grid;
  auto positive_list = [&](const std::string& key, std::vector<double>& dst, double upper) {
    if (!r.has(key)) return;
    dst = r.get(key, parse_number_list);
    for (double v : dst) {
      if (!(v > 0.0) || v > upper) {
        r.fail(key, "values must lie in (0, " + format_number(upper) + "]");
      }
    }
  };
  const double inf = std::numeric_limits<double>::max();
  if (r.has("grid.n")) {
    g.n = r.get("grid.n", parse_size_list);
    if (std::find(g.n.begin(), g.n.end(), std::size_t{0}) != g.n.end()) {
      r.fail("grid.n", "n must be positive");
    }
  }
  positive_list("grid.epsilon", g.epsilon, inf);
  positive_list("grid.alpha", g.alpha, inf);
  positive_list("grid.delta", g.delta, 1.0);
  positive_list("grid.net", g.net, inf);
  positive_list("grid.eps_sep", g.eps_sep, inf);
  if (r.has("grid.n_delta")) {
    g.n_delta = r.get("grid.n_delta", parse_size_list);
    if (std::find(g.n_delta.begin(), g.n_delta.end(), std::size_t{0}) != g.n_delta.end()) {
      r.fail("grid.n_delta", "N_delta must be positive");
    }
  }
  if (r.has("grid.scale")) {
    g.scale = r.get("grid.scale", text_list);
    for (const std::string& s : g.scale) {
      try {
        ScaleFunction::parse(s);
      } catch (const std::exception& e) {
        r.fail("grid.scale", e.what());
      }
    }
  }
  if (r.has("grid.mode")) {
    g.mode = r.get("grid.mode", text);
    if (g.mode != "direct" && g.mode != "po" && g.mode != "ppo") {
      r.fail("grid.mode", "expected direct, po or ppo");
    }
  }
  if (r.has("grid.partition")) {
    g.partition = r.get("grid.partition", parse_number);
    if (!(g.partition > 0.0)) r.fail("grid.partition", "must be positive");
  }
  if (r.has("grid.tail")) g.tail = r.get("grid.tail", parse_size);
  if (r.has("grid.tail_fraction")) {
    g.tail_fraction = r.get("grid.tail_fraction", parse_number);
    if (!(g.tail_fraction > 0.0 && g.tail_fraction <= 1.0)) {
      r.fail("grid.tail_fraction", "must lie in (0, 1]");
    }
  }
  if (r.has("grid.reference")) g.reference = r.get("grid.reference", parse_number);

  if (r.has("states.x")) c.x = r.get("states.x", text);
  if (r.has("states.y")) c.y = r.get("states.y", text);
  if (r.has("verify.suite")) {
    c.suite = r.get("verify.suite", text);
    const std::set<std::string> suites = {"all", "dynamics", "bowen", "fk",
                                          "po", "fkpo", "analysis"};
    if (!suites.contains(c.suite)) r.fail("verify.suite", "unknown suite '" + c.suite + "'");
  }
  if (r.has("output.csv")) c.output.csv = r.get("output.csv", text);
  if (r.has("output.json")) c.output.json = r.get("output.json", text);
  if (r.has("output.plot_dir")) c.output.plot_dir = r.get("output.plot_dir", text);
  if (r.has("output.edges_dir")) c.output.edges_dir = r.get("output.edges_dir", text);
  if (r.has("caps.net")) c.caps.net = r.get("caps.net", positive_size);
  if (r.has("caps.states")) c.caps.states = r.get("caps.states", positive_size);
  if (r.has("caps.enumeration")) c.caps.enumeration = r.get("caps.enumeration", positive_size);

  // Route requirements.
  const std::string route = to_string(c.route);
  switch (c.route) {
    case RouteKind::bowen:
    case RouteKind::fk:
    case RouteKind::report:
      require_nonempty(g.n, "grid.n", route);
      require_nonempty(g.epsilon, "grid.epsilon", route);
      break;
    case RouteKind::po:
      require_nonempty(g.n, "grid.n", route);
      require_nonempty(g.alpha, "grid.alpha", route);
      require_nonempty(g.net, "grid.net", route);
      if (g.partition == 0.0) require_nonempty(g.epsilon, "grid.epsilon", route);
      break;
    case RouteKind::fkpo:
      if (!spec.is_finite()) r.fail("route", "route fkpo needs a finite system");
      require_nonempty(g.n, "grid.n", route);
      require_nonempty(g.alpha, "grid.alpha", route);
      require_nonempty(g.delta, "grid.delta", route);
      if (g.eps_sep.empty()) require_nonempty(g.epsilon, "grid.epsilon", route);
      break;
    case RouteKind::scaled:
      require_nonempty(g.n, "grid.n", route);
      require_nonempty(g.epsilon, "grid.epsilon", route);
      require_nonempty(g.scale, "grid.scale", route);
      if (g.mode != "direct") {
        require_nonempty(g.alpha, "grid.alpha", route);
        require_nonempty(g.net, "grid.net", route);
      }
      break;
    case RouteKind::fkdist:
      require_nonempty(g.n, "grid.n", route);
      r.require("states.x", "route fkdist");
      r.require("states.y", "route fkdist");
      break;
    case RouteKind::verify:
      break;
  }
  if (c.route == RouteKind::report && !g.reference && !reference_pressure(spec, make_potential(c.potential))) {
    throw UsageError("route report needs grid.reference: no closed-form value for " +
                     spec.name());
  }
  for (const char* key : {"states.x", "states.y"}) {
    if (!r.has(key)) continue;
    r.get(key, [&](const std::string& s) { return parse_state(spec, s); });
  }
  return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
  using nlohmann::json;
  json out = json::object();
  out["route"] = to_string(c.route);
  out["seed"] = c.seed;

  json sys = json::object();
  sys["kind"] = c.system.kind;
  if (c.system.parameter) {
    const std::string key = c.system.kind == "rotation" ? "theta"
                            : c.system.kind == "tent"   ? "slope"
                                                        : "r";
    sys[key] = *c.system.parameter;
  }
  if (c.system.kind == "full_shift") sys["symbols"] = c.system.symbols;
  if (!c.system.matrix.empty()) sys["matrix"] = c.system.matrix;
  if (!c.system.distances.empty()) sys["distances"] = c.system.distances;
  if (!c.system.map.empty()) sys["map"] = c.system.map;
  out["system"] = sys;

  json pot = json::object();
  pot["kind"] = c.potential.kind;
  if (!c.potential.values.empty()) pot["values"] = c.potential.values;
  out["potential"] = pot;

  const GridConfig& g = c.grid;
  json grid = json::object();
  if (!g.n.empty()) grid["n"] = g.n;
  if (!g.epsilon.empty()) grid["epsilon"] = g.epsilon;
  if (!g.alpha.empty()) grid["alpha"] = g.alpha;
  if (!g.delta.empty()) grid["delta"] = g.delta;
  if (!g.n_delta.empty()) grid["n_delta"] = g.n_delta;
  if (!g.scale.empty()) grid["scale"] = g.scale;
  grid["mode"] = g.mode;
  if (!g.net.empty()) grid["net"] = g.net;
  if (g.partition > 0.0) grid["partition"] = g.partition;
  if (!g.eps_sep.empty()) grid["eps_sep"] = g.eps_sep;
  grid["tail"] = g.tail;
  grid["tail_fraction"] = g.tail_fraction;
  if (g.reference) grid["reference"] = *g.reference;
  out["grid"] = grid;

  if (!c.x.empty() || !c.y.empty()) {
    json states = json::object();
    if (!c.x.empty()) states["x"] = c.x;
    if (!c.y.empty()) states["y"] = c.y;
    out["states"] = states;
  }
  out["verify"] = json{{"suite", c.suite}};

  json output = json::object();
  if (!c.output.csv.empty()) output["csv"] = c.output.csv;
  if (!c.output.json.empty()) output["json"] = c.output.json;
  if (!c.output.plot_dir.empty()) output["plot_dir"] = c.output.plot_dir;
  if (!c.output.edges_dir.empty()) output["edges_dir"] = c.output.edges_dir;
  if (!output.empty()) out["output"] = output;

  out["caps"] = json{{"net", c.caps.net},
                     {"states", c.caps.states},
                     {"enumeration", c.caps.enumeration}};
  return out;
}

SystemSpec make_system(const SystemConfig& c) {
  if (c.kind == "doubling") return SystemSpec::doubling();
  if (c.kind == "rotation") return SystemSpec::rotation(c.parameter.value_or(0.0));
  if (c.kind == "tent") return SystemSpec::tent(c.parameter.value_or(0.0));
  if (c.kind == "logistic") return SystemSpec::logistic(c.parameter.value_or(0.0));
  if (c.kind == "full_shift") return SystemSpec::full_shift(c.symbols);
  if (c.kind == "sft") return SystemSpec::sft(c.matrix);
  if (c.kind == "finite") return SystemSpec::finite(c.distances, c.map);
  throw UsageError("unknown system kind '" + c.kind + "'");
}

Potential make_potential(const PotentialConfig& c) {
  if (c.kind == "zero") return Potential::zero();
  if (c.kind == "symbols") return Potential::symbol_table(c.values);
  if (c.kind == "polynomial") return Potential::polynomial(c.values);
  throw UsageError("unknown potential kind '" + c.kind + "'");
}

State parse_state(const SystemSpec& sys, const std::string& text) {
  const std::string t = trim(text);
  State x;
  if (sys.is_real()) {
    x = parse_number(t);
  } else if (sys.is_finite()) {
    x = FinitePoint{parse_size(t)};
  } else {
    std::vector<Symbol> symbols;
    if (t.find(',') != std::string::npos) {
      for (std::size_t v : parse_size_list(t)) {
        if (v > 255) throw UsageError("symbol " + std::to_string(v) + " out of range");
        symbols.push_back(static_cast<Symbol>(v));
      }
    } else {
      for (char ch : t) {
        if (ch < '0' || ch > '9') throw UsageError("expected a symbol string, got '" + t + "'");
        symbols.push_back(static_cast<Symbol>(ch - '0'));
      }
    }
    x = Word(std::move(symbols));
  }
  check_state(sys, x);
  return x;
}

}  // namespace fkp::cli
