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

#include "runner.hpp"

#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "fkp/fkp.hpp"

namespace fkp::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

nlohmann::json estimate_json(const PressureSeries& s, double tail_fraction) {
  try {
    const LimitEstimate e = extrapolate(s, tail_fraction);
    return {{"tail_mean", e.tail_mean},
            {"tail_max", e.tail_max},
            {"difference", e.difference},
            {"linear_fit_slope", e.linear_fit_slope},
            {"dispersion", e.dispersion},
            {"window", e.window}};
  } catch (const std::exception& e) {
    return {{"unavailable", e.what()}};
  }
}

Record from_series(const PressureSeries& s, const std::string& route,
                   std::optional<double> oracle, double tail_fraction) {
  Record r;
  r.route = route;
  r.epsilon = s.params.epsilon;
  r.alpha = s.params.alpha;
  r.delta = s.params.delta;
  r.n_delta = s.params.n_delta;
  r.scale = s.params.scale.value_or("");
  for (const PressureSample& p : s.samples) {
    r.values.emplace_back(p.n, p.per_n);
    r.oracles.push_back(oracle);
  }
  r.truncated = s.truncated;
  r.extra["estimate"] = estimate_json(s, tail_fraction);
  if (s.params.net_resolution) r.extra["net_resolution"] = *s.params.net_resolution;
  if (s.params.partition_resolution) {
    r.extra["partition_resolution"] = *s.params.partition_resolution;
  }
  if (s.params.scale_value) r.extra["scale_value"] = *s.params.scale_value;
  return r;
}

class Executor {
 public:
  explicit Executor(const ExperimentConfig& c)
      : c_(c), sys_(make_system(c.system)), f_(make_potential(c.potential)) {
    oracle_ = c.grid.reference ? c.grid.reference : reference_pressure(sys_, f_);
  }

  RunResult run() {
    const auto start = Clock::now();
    switch (c_.route) {
      case RouteKind::bowen: bowen(false); break;
      case RouteKind::fk: bowen(true); break;
      case RouteKind::po: po(); break;
      case RouteKind::fkpo: fkpo(); break;
      case RouteKind::scaled: scaled(); break;
      case RouteKind::fkdist: fkdist(); break;
      case RouteKind::report: report(); break;
      case RouteKind::verify: out_.checks = run_suite(c_.suite, c_.seed); break;
    }
    for (const Record& r : out_.records) out_.truncated = out_.truncated || r.truncated;
    out_.seconds = seconds_since(start);
    return std::move(out_);
  }

 private:
  // Runs one grid cell; a resource cap marks the record truncated and keeps
  // whatever it already holds.
  template <typename F>
  void cell(Record base, F body) {
    const auto start = Clock::now();
    try {
      body(base);
    } catch (const ResourceError& e) {
      base.truncated = true;
      base.extra["truncated_reason"] = e.what();
      out_.diagnostics.push_back(base.route + ": " + e.what());
    } catch (const ConvergenceError& e) {
      base.truncated = true;
      base.extra["truncated_reason"] = e.what();
      out_.diagnostics.push_back(base.route + ": " + e.what());
    }
    base.seconds = seconds_since(start);
    out_.records.push_back(std::move(base));
  }

  void bowen(bool fk) {
    const std::string route = fk ? "fk" : "bowen";
    for (double eps : c_.grid.epsilon) {
      Record base;
      base.route = route;
      base.epsilon = eps;
      cell(base, [&](Record& r) {
        const PressureSeries s = fk ? pfk_series(sys_, f_, c_.grid.n, eps, default_pool(c_.caps.net))
                                    : pressure_series(sys_, f_, c_.grid.n, eps,
                                                      default_pool(c_.caps.net));
        r = from_series(s, route, oracle_, c_.grid.tail_fraction);
      });
    }
  }

  std::vector<double> partitions() const {
    if (c_.grid.partition > 0.0) return {c_.grid.partition};
    return c_.grid.epsilon;
  }

  void dump_graph(const EpsilonNet& net, double alpha, const std::string& tag,
                  nlohmann::json& extra) {
    const TransitionGraph g = build_po_graph(sys_, net, alpha, f_);
    extra["vertices"] = g.vertex_count();
    extra["edges"] = g.edge_count();
    try {
      extra["spectral_log_growth"] = spectral_log_growth(g);
    } catch (const ConvergenceError& e) {
      extra["spectral_log_growth"] = e.what();
    }
    if (c_.output.edges_dir.empty()) return;
    std::filesystem::create_directories(c_.output.edges_dir);
    const std::string path =
        (std::filesystem::path(c_.output.edges_dir) / (tag + ".edges")).string();
    std::ofstream file(path);
    write_edge_list(file, g);
    extra["edge_list"] = path;
  }

  void pseudo_orbit_cells(const ScaleFunction& scale, ScaledMode mode, double eps,
                          const std::string& route) {
    for (double res : c_.grid.net) {
      for (double alpha : c_.grid.alpha) {
        const bool plain = route == "po";
        const std::vector<double> parts =
            plain ? partitions()
                  : std::vector<double>{c_.grid.partition > 0.0 ? c_.grid.partition : eps};
        for (double part : parts) {
          Record base;
          base.route = route;
          base.epsilon = plain ? part : eps;
          base.alpha = alpha;
          base.scale = plain ? "" : scale.name();
          const std::string tag = route + "_" + std::to_string(out_.records.size());
          cell(base, [&](Record& r) {
            const EpsilonNet net = build_net(sys_, res, c_.caps.net);
            ScaledGrid grid;
            grid.n_values = c_.grid.n;
            grid.epsilon = eps;
            grid.alpha = alpha;
            grid.net_resolution = res;
            grid.partition_resolution = part;
            grid.state_cap = c_.caps.states;
            const PressureSeries s = scaled_pressure_series(sys_, f_, scale, mode, grid);
            nlohmann::json extra;
            dump_graph(net, alpha, tag, extra);
            r = from_series(s, base.route, oracle_, c_.grid.tail_fraction);
            r.epsilon = base.epsilon;
            r.scale = base.scale;
            r.extra.update(extra);
            r.extra["net_resolution"] = res;
            if (s.truncated) r.extra["truncated_reason"] = "determinization state cap";
          });
        }
      }
    }
  }

  void po() {
    const double eps = c_.grid.epsilon.empty() ? c_.grid.partition : c_.grid.epsilon.front();
    pseudo_orbit_cells(ScaleFunction::constant_one(), ScaledMode::po, eps, "po");
  }

  void scaled() {
    const ScaledMode mode = c_.grid.mode == "po"    ? ScaledMode::po
                            : c_.grid.mode == "ppo" ? ScaledMode::ppo
                                                    : ScaledMode::direct;
    const std::string route = "scaled-" + c_.grid.mode;
    for (const std::string& name : c_.grid.scale) {
      const ScaleFunction scale = ScaleFunction::parse(name);
      for (double eps : c_.grid.epsilon) {
        if (mode != ScaledMode::direct) {
          pseudo_orbit_cells(scale, mode, eps, route);
          continue;
        }
        Record base;
        base.route = route;
        base.epsilon = eps;
        base.scale = scale.name();
        cell(base, [&](Record& r) {
          ScaledGrid grid;
          grid.n_values = c_.grid.n;
          grid.epsilon = eps;
          grid.pool = default_pool(c_.caps.net);
          const PressureSeries s = scaled_pressure_series(sys_, f_, scale, mode, grid);
          r = from_series(s, route, oracle_, c_.grid.tail_fraction);
          r.scale = scale.name();
        });
      }
    }
  }

  void fkpo() {
    const std::vector<double>& seps = c_.grid.eps_sep.empty() ? c_.grid.epsilon : c_.grid.eps_sep;
    for (double eps : seps) {
      for (double alpha : c_.grid.alpha) {
        for (double delta : c_.grid.delta) {
          std::vector<std::size_t> nds = c_.grid.n_delta;
          if (nds.empty()) nds.push_back(default_n_delta(delta));
          for (std::size_t nd : nds) {
            Record base;
            base.route = "fkpo";
            base.epsilon = eps;
            base.alpha = alpha;
            base.delta = delta;
            base.n_delta = nd;
            cell(base, [&](Record& r) {
              const FkpoParams params{alpha, delta, nd};
              nlohmann::json per_n = nlohmann::json::array();
              for (std::size_t n : c_.grid.n) {
                const FkpoBruteForce b =
                    fkpo_sr_bruteforce(sys_, f_, n, eps, params, c_.grid.tail, c_.caps.enumeration);
                r.values.emplace_back(n, b.log_sum / static_cast<double>(n));
                r.oracles.push_back(oracle_);
                per_n.push_back({{"n", n},
                                 {"enumerated", b.enumerated},
                                 {"members", b.members.size()},
                                 {"prefixes", b.prefixes.size()},
                                 {"selected", b.selected.size()}});
                if (!b.members.empty() && !r.extra.contains("witness")) {
                  std::vector<State> seq;
                  for (std::size_t i : b.members.front()) seq.push_back(FinitePoint{i});
                  const FkpoResult m = is_fkpo_prefix(sys_, seq, params);
                  if (m.witness) r.extra["witness"] = witness_report(sys_, seq, params, *m.witness);
                }
              }
              r.extra["enumeration"] = per_n;
              r.extra["tail"] = c_.grid.tail;
            });
          }
        }
      }
    }
  }

  void fkdist() {
    const State x = parse_state(sys_, c_.x);
    const State y = parse_state(sys_, c_.y);
    Record base;
    base.route = "fkdist";
    cell(base, [&](Record& r) {
      bool below = true;
      for (std::size_t n : c_.grid.n) {
        const double fk = fk_distance(sys_, x, y, n).value;
        const double bowen = bowen_distance(sys_, x, y, n);
        r.values.emplace_back(n, fk);
        r.oracles.emplace_back(bowen);
        below = below && fk <= bowen;
      }
      r.extra["oracle_column"] = "bowen distance";
      r.extra["fk_below_bowen"] = below;
    });
  }

  void report() {
    ReportGrids grids;
    grids.n_values = c_.grid.n;
    grids.epsilons = c_.grid.epsilon;
    if (!c_.grid.net.empty()) {
      grids.alphas = c_.grid.alpha;
      grids.net_resolution = c_.grid.net.front();
    }
    grids.partition_resolution = c_.grid.partition;
    grids.state_cap = c_.caps.states;
    for (const std::string& s : c_.grid.scale) grids.scales.push_back(ScaleFunction::parse(s));
    grids.tail_fraction = c_.grid.tail_fraction;
    grids.pool = default_pool(c_.caps.net);
    grids.reference = c_.grid.reference;
    const auto start = Clock::now();
    const TheoremReport rep = theorem_report(sys_, f_, grids);
    for (const ReportRow& row : rep.rows) {
      std::string route = to_string(row.series.route);
      Record r = from_series(row.series, route, rep.oracle, c_.grid.tail_fraction);
      if (row.gap) r.extra["estimate_gap"] = *row.gap;
      r.extra["estimate_value"] = row.estimate.value;
      if (row.fk_below_bowen) r.extra["fk_below_bowen"] = *row.fk_below_bowen;
      if (row.fk_from_below) r.extra["fk_from_below"] = *row.fk_from_below;
      if (row.po_from_above) r.extra["po_from_above"] = *row.po_from_above;
      out_.records.push_back(std::move(r));
    }
    for (const std::string& note : rep.notes) out_.diagnostics.push_back(note);
    if (!out_.records.empty()) out_.records.front().seconds = seconds_since(start);
  }

  const ExperimentConfig& c_;
  SystemSpec sys_;
  Potential f_;
  std::optional<double> oracle_;
  RunResult out_;
};

std::string optional_cell(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string();
}

std::string plot_name(const Record& r, std::size_t index) {
  std::ostringstream name;
  name << index << "_" << r.route;
  if (r.epsilon) name << "_eps" << format_value(*r.epsilon);
  if (r.alpha) name << "_alpha" << format_value(*r.alpha);
  if (r.delta) name << "_delta" << format_value(*r.delta);
  if (r.n_delta) name << "_N" << *r.n_delta;
  if (!r.scale.empty()) name << "_" << r.scale;
  std::string s = name.str();
  for (char& ch : s) {
    if (ch == ':' || ch == '/') ch = '-';
  }
  return s + ".dat";
}

}  // namespace

int RunResult::exit_code() const {
  for (const CheckResult& c : checks) {
    if (!c.passed()) return kExitInvariant;
  }
  return truncated ? kExitResource : kExitOk;
}

RunResult execute(const ExperimentConfig& config) { return Executor(config).run(); }

std::string format_value(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, r.ptr);
}

void write_csv(std::ostream& out, const RunResult& result) {
  out << "route,n,epsilon,alpha,delta,N_delta,scale,value,oracle,gap\n";
  for (const Record& r : result.records) {
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      const auto& [n, value] = r.values[i];
      const std::optional<double>& oracle = r.oracles.at(i);
      out << r.route << ',' << n << ',' << optional_cell(r.epsilon) << ','
          << optional_cell(r.alpha) << ',' << optional_cell(r.delta) << ','
          << (r.n_delta ? std::to_string(*r.n_delta) : std::string()) << ',' << r.scale << ','
          << format_value(value) << ',' << optional_cell(oracle) << ','
          << (oracle ? format_value(value - *oracle) : std::string()) << '\n';
    }
  }
  for (const CheckResult& c : result.checks) {
    out << "verify:" << c.suite << '.' << c.name << ',' << c.trials << ",,,,,,"
        << c.failures << ",0," << c.failures << '\n';
  }
}

nlohmann::json report_json(const ExperimentConfig& config, const RunResult& result) {
  using nlohmann::json;
  json doc;
  doc["versions"] = {{"fkp", kVersion},
                     {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                           std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
#if defined(__VERSION__)
                     {"compiler", __VERSION__},
#endif
                     {"cplusplus", __cplusplus}};
  doc["config"] = to_json(config);
  json series = json::array();
  for (const Record& r : result.records) {
    json s;
    s["route"] = r.route;
    if (r.epsilon) s["epsilon"] = *r.epsilon;
    if (r.alpha) s["alpha"] = *r.alpha;
    if (r.delta) s["delta"] = *r.delta;
    if (r.n_delta) s["n_delta"] = *r.n_delta;
    if (!r.scale.empty()) s["scale"] = r.scale;
    json samples = json::array();
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      json p = {{"n", r.values[i].first}, {"value", r.values[i].second}};
      if (i < r.oracles.size() && r.oracles[i]) p["oracle"] = *r.oracles[i];
      samples.push_back(p);
    }
    s["samples"] = samples;
    s["truncated"] = r.truncated;
    s["diagnostics"] = r.extra;
    s["timing_seconds"] = r.seconds;
    series.push_back(s);
  }
  doc["series"] = series;
  json checks = json::array();
  for (const CheckResult& c : result.checks) {
    checks.push_back({{"suite", c.suite},
                      {"check", c.name},
                      {"trials", c.trials},
                      {"failures", c.failures},
                      {"passed", c.passed()},
                      {"detail", c.detail}});
  }
  if (!result.checks.empty()) doc["checks"] = checks;
  doc["diagnostics"] = result.diagnostics;
  doc["truncated"] = result.truncated;
  doc["exit_code"] = result.exit_code();
  doc["timing_seconds"] = result.seconds;
  return doc;
}

int run(const ExperimentConfig& config, std::ostream& stdout_sink, std::ostream& log) {
  const RunResult result = execute(config);
  if (config.output.csv.empty()) {
    write_csv(stdout_sink, result);
  } else {
    std::ofstream file(config.output.csv, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + config.output.csv + "'");
    write_csv(file, result);
  }
  if (!config.output.json.empty()) {
    std::ofstream file(config.output.json, std::ios::binary);
    if (!file) throw UsageError("cannot write '" + config.output.json + "'");
    file << report_json(config, result).dump(2) << '\n';
  }
  if (!config.output.plot_dir.empty()) {
    std::filesystem::create_directories(config.output.plot_dir);
    for (std::size_t i = 0; i < result.records.size(); ++i) {
      const Record& r = result.records[i];
      std::ofstream file(std::filesystem::path(config.output.plot_dir) / plot_name(r, i),
                         std::ios::binary);
      file << "# n per_n (" << r.route << ")\n";
      for (const auto& [n, v] : r.values) file << n << ' ' << format_value(v) << '\n';
    }
  }
  for (const CheckResult& c : result.checks) {
    log << (c.passed() ? "PASS " : "FAIL ") << c.suite << '.' << c.name << ": " << c.failures
        << '/' << c.trials << " failures" << (c.detail.empty() ? "" : " (" + c.detail + ")")
        << '\n';
  }
  for (const std::string& d : result.diagnostics) log << "note: " << d << '\n';
  if (result.truncated) log << "truncated: a resource cap stopped at least one grid cell\n";
  return result.exit_code();
}

}  // namespace fkp::cli
