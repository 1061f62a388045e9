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

#include "verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <sstream>

#include "fkp/fkp.hpp"

namespace fkp::cli {
namespace {

using Rng = std::mt19937_64;

constexpr double kSlack = 1e-12;

SystemSpec three_cycle() {
  return SystemSpec::finite({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {1, 2, 0});
}

std::vector<SystemSpec> suite_systems() {
  return {SystemSpec::doubling(),    SystemSpec::tent(2.0),
          SystemSpec::tent(1.5),     SystemSpec::logistic(3.9),
          SystemSpec::rotation(0.6180339887),
          SystemSpec::full_shift(2), SystemSpec::full_shift(3),
          SystemSpec::sft({{1, 1}, {1, 0}}), three_cycle()};
}

State random_state(const SystemSpec& sys, Rng& rng) {
  if (sys.is_real()) return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (sys.is_finite()) {
    return FinitePoint{std::uniform_int_distribution<std::size_t>(0, static_cast<std::size_t>(sys.symbols()) - 1)(rng)};
  }
  // Admissible word of length 12 built symbol by symbol.
  std::vector<Symbol> w;
  const int k = sys.symbols();
  for (int i = 0; i < 12; ++i) {
    std::vector<Symbol> options;
    for (int s = 0; s < k; ++s) {
      if (w.empty() || sys.space() != SpaceKind::sft || sys.transitions()[w.back()][s] != 0) {
        options.push_back(static_cast<Symbol>(s));
      }
    }
    w.push_back(options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
  }
  if (sys.space() == SpaceKind::sft) {
    // The implicit zero tail must follow the last explicit symbol.
    while (!w.empty() && sys.transitions()[w.back()][0] == 0) w.pop_back();
  }
  return Word(std::move(w));
}

class Suite {
 public:
  Suite(std::string name, std::vector<CheckResult>& out) : name_(std::move(name)), out_(out) {}

  void check(const std::string& name, std::size_t trials,
             const std::function<bool(std::size_t)>& trial, std::string detail = {}) {
    CheckResult r{name_, name, trials, 0, std::move(detail)};
    for (std::size_t t = 0; t < trials; ++t) {
      try {
        if (!trial(t)) ++r.failures;
      } catch (const std::exception& e) {
        ++r.failures;
        r.detail = e.what();
      }
    }
    out_.push_back(std::move(r));
  }

 private:
  std::string name_;
  std::vector<CheckResult>& out_;
};

void dynamics_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("dynamics", out);
  const auto systems = suite_systems();
  s.check("metric_axioms", 2000, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const State x = random_state(sys, rng);
    const State y = random_state(sys, rng);
    const State z = random_state(sys, rng);
    const double dxy = distance(sys, x, y);
    return distance(sys, x, x) == 0.0 && dxy >= 0.0 && dxy == distance(sys, y, x) &&
           distance(sys, x, z) <= dxy + distance(sys, y, z) + kSlack;
  });
  s.check("map_stays_in_space", 2000, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    check_state(sys, evaluate_map(sys, random_state(sys, rng)));
    return true;
  });
  s.check("orbit_segment_is_genuine", 200, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const OrbitSegment o = orbit_segment(sys, random_state(sys, rng), 1 + t % 16);
    return o.genuine && make_segment(sys, o.points).genuine;
  });
}

void bowen_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("bowen", out);
  const auto systems = suite_systems();
  s.check("monotone_in_n", 1000, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const State x = random_state(sys, rng);
    const State y = random_state(sys, rng);
    const std::size_t n = 1 + t % 12;
    return bowen_distance(sys, x, y, n) <= bowen_distance(sys, x, y, n + 1);
  });
  const std::vector<std::size_t> ns = {4, 5, 6, 7, 8, 9, 10};
  s.check("full_shift_exact", 1, [&](std::size_t) {
    const PressureSeries p = pressure_series(SystemSpec::full_shift(2), Potential::zero(), ns,
                                             0.5, default_pool());
    for (const PressureSample& q : p.samples) {
      if (std::abs(q.per_n - std::log(2.0)) > 1e-9) return false;
    }
    return true;
  });
  s.check("greedy_separated_and_spanning", 60, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    std::vector<State> pool;
    for (int i = 0; i < 40; ++i) pool.push_back(random_state(sys, rng));
    const SeparatedSet set = max_separated_set(sys, pool, 1 + t % 6, 0.2);
    return is_separated(sys, set) && spans(sys, set, pool);
  });
}

void fk_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("fk", out);
  const auto systems = suite_systems();
  const std::size_t ns[] = {2, 4, 8, 16};
  s.check("fk_below_bowen", 1000, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const State x = random_state(sys, rng);
    const State y = random_state(sys, rng);
    const std::size_t n = ns[t % 4];
    return fk_distance(sys, x, y, n).value <= bowen_distance(sys, x, y, n);
  });
  s.check("defect_on_lattice", 500, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const std::size_t n = 1 + t % 10;
    const double delta = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    const double v = fbar(sys, random_state(sys, rng), random_state(sys, rng), n, delta);
    const double k = v * static_cast<double>(n);
    return v >= 0.0 && v <= 1.0 && std::abs(k - std::round(k)) < 1e-9;
  });
  s.check("within_matches_distance", 500, [&](std::size_t t) {
    const SystemSpec& sys = systems[t % systems.size()];
    const std::size_t n = 1 + t % 10;
    const OrbitSegment ox = orbit_segment(sys, random_state(sys, rng), n);
    const OrbitSegment oy = orbit_segment(sys, random_state(sys, rng), n);
    const double d = fk_distance(sys, ox, oy).value;
    const double eps = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    return fk_within(sys, ox, oy, eps) == (d <= eps) && fk_within(sys, ox, oy, d);
  });
}

void po_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("po", out);
  const SystemSpec doubling = SystemSpec::doubling();
  s.check("word_count_monotone_in_alpha", 1, [&](std::size_t) {
    const EpsilonNet net = build_net(doubling, 1.0 / 128);
    const EpsilonNet cells = partition_net(doubling, 0.5);
    double prev = std::numeric_limits<double>::infinity();
    for (double alpha : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
      const TransitionGraph g = build_po_graph(doubling, net, alpha, Potential::zero());
      const double v = count_coarse_words(doubling, g, cells, 8, Potential::zero()).log_count;
      if (v > prev + kSlack) return false;
      prev = v;
    }
    return true;
  });
  s.check("genuine_orbits_are_paths", 1, [&](std::size_t) {
    const double res = 1.0 / 64;
    const EpsilonNet net = build_net(doubling, res);
    const double alpha = 2.0 * res * (1.0 + doubling.expansion_bound());
    const TransitionGraph g = build_po_graph(doubling, net, alpha, Potential::zero());
    for (std::size_t u = 0; u < net.size(); ++u) {
      State x = net.points[u];
      std::size_t prev = nearest_point(doubling, net, x);
      for (int i = 0; i < 8; ++i) {
        x = evaluate_map(doubling, x);
        const std::size_t next = nearest_point(doubling, net, x);
        if (!g.has_edge(prev, next)) return false;
        prev = next;
      }
    }
    return true;
  });
  s.check("trace_matches_closed_paths", 40, [&](std::size_t) {
    const std::size_t v = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    std::bernoulli_distribution edge(0.3);
    Matrix01 a(v, std::vector<int>(v, 0));
    for (auto& row : a) {
      for (int& e : row) e = edge(rng) ? 1 : 0;
    }
    const TransitionGraph g = TransitionGraph::from_adjacency(a);
    for (std::size_t n = 1; n <= 8; ++n) {
      const std::uint64_t walks = closed_path_count(g, n);
      const double lg = count_periodic_po(g, n);
      if (walks == 0 ? std::isfinite(lg)
                     : std::abs(lg - std::log(static_cast<double>(walks))) > 1e-9) {
        return false;
      }
    }
    return true;
  });
}

std::vector<State> points(const std::vector<std::size_t>& idx) {
  std::vector<State> out;
  for (std::size_t i : idx) out.push_back(FinitePoint{i});
  return out;
}

void fkpo_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("fkpo", out);
  const SystemSpec sys = three_cycle();
  const FkpoParams params{0.5, 0.4, 5};
  const std::size_t len = 10;
  std::vector<std::vector<std::size_t>> sequences;
  std::uniform_int_distribution<std::size_t> pick(0, 2);
  for (int t = 0; t < 300; ++t) {
    std::vector<std::size_t> idx = {pick(rng)};
    while (idx.size() < len) {
      idx.push_back(pick(rng) == 0 ? pick(rng) : sys.map_table()[idx.back()]);
    }
    sequences.push_back(std::move(idx));
  }
  s.check("pseudo_orbits_are_members", sequences.size(), [&](std::size_t t) {
    const std::vector<State> seq = points(sequences[t]);
    return !is_pseudo_chain(sys, seq, params.alpha) || is_fkpo_prefix(sys, seq, params).member;
  });
  s.check("monotone_in_alpha", sequences.size(), [&](std::size_t t) {
    const std::vector<State> seq = points(sequences[t]);
    const bool small = is_fkpo_prefix(sys, seq, params, false).member;
    const FkpoParams larger{1.5, params.delta, params.n_delta};
    return !small || is_fkpo_prefix(sys, seq, larger, false).member;
  });
  s.check("witnesses_verify", sequences.size(), [&](std::size_t t) {
    const std::vector<State> seq = points(sequences[t]);
    const FkpoResult r = is_fkpo_prefix(sys, seq, params);
    return !r.member || verify_fkpo_witness(sys, seq, params, *r.witness);
  });
  s.check("shift_stable", sequences.size(), [&](std::size_t t) {
    const std::vector<State> seq = points(sequences[t]);
    if (!is_fkpo_prefix(sys, seq, params, false).member) return true;
    return is_fkpo_prefix(sys, shift_sequence(seq), params, false).member;
  });
  s.check("interleaved_doubling_sequence", 1, [&](std::size_t) {
    const SystemSpec d = SystemSpec::doubling();
    std::vector<State> seq;
    State x = 0.1;
    for (std::size_t i = 0; i < 12; ++i) {
      seq.push_back(i % 2 == 1 ? State{0.9} : x);
      x = evaluate_map(d, evaluate_map(d, x));
    }
    const FkpoParams p{0.01, 0.6, 4};
    return is_fkpo_prefix(d, seq, p, false).member && !is_pseudo_chain(d, seq, p.alpha);
  });
}

void analysis_suite(Rng& rng, std::vector<CheckResult>& out) {
  Suite s("analysis", out);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  s.check("difference_exact_on_c_plus_a_over_n", 100, [&](std::size_t) {
    const double c = u(rng);
    const double a = u(rng);
    PressureSeries series;
    for (std::size_t n = 4; n <= 12; ++n) {
      const double v = c + a / static_cast<double>(n);
      series.samples.push_back({n, 0.0, v * static_cast<double>(n), v});
    }
    return std::abs(extrapolate(series, 0.5, LimitMethod::difference).value - c) < 1e-9;
  });
  s.check("sft_all_ones_matches_full_shift", 100, [&](std::size_t t) {
    const std::size_t k = 2 + t % 3;
    std::vector<double> f(k);
    for (double& v : f) v = u(rng);
    const Matrix01 ones(k, std::vector<int>(k, 1));
    return std::abs(exact_pressure_sft(ones, f) - exact_pressure_full_shift(f)) < 1e-12;
  });
  s.check("oracles_increase_with_f", 100, [&](std::size_t t) {
    std::vector<double> f = {u(rng), u(rng)};
    const Matrix01 golden = {{1, 1}, {1, 0}};
    const double full = exact_pressure_full_shift(f);
    const double sft = exact_pressure_sft(golden, f);
    f[t % 2] += 0.1;
    return exact_pressure_full_shift(f) > full && exact_pressure_sft(golden, f) > sft;
  });
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"dynamics", "bowen", "fk",
                                                 "po",       "fkpo",  "analysis"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CheckResult> out;
  const std::map<std::string, std::function<void(Rng&, std::vector<CheckResult>&)>> suites = {
      {"dynamics", dynamics_suite}, {"bowen", bowen_suite}, {"fk", fk_suite},
      {"po", po_suite},             {"fkpo", fkpo_suite},   {"analysis", analysis_suite}};
  for (const std::string& name : suite_names()) {
    if (suite == "all" || suite == name) suites.at(name)(rng, out);
  }
  if (out.empty()) throw UsageError("unknown suite '" + suite + "'");
  return out;
}

}  // namespace fkp::cli
