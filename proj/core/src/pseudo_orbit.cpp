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

#include "fkp/pseudo_orbit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "fkp/errors.hpp"
#include "fkp/log_space.hpp"

namespace fkp {

std::size_t TransitionGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& s : successors) total += s.size();
  return total;
}

bool TransitionGraph::has_edge(std::size_t u, std::size_t v) const {
  const auto& s = successors.at(u);
  return std::binary_search(s.begin(), s.end(), v);
}

TransitionGraph TransitionGraph::from_adjacency(const Matrix01& adjacency,
                                                std::vector<double> log_weights) {
  const std::size_t n = adjacency.size();
  if (n == 0) throw UsageError("adjacency matrix is empty");
  if (log_weights.empty()) log_weights.assign(n, 0.0);
  if (log_weights.size() != n) throw UsageError("need one weight per vertex");
  TransitionGraph g;
  g.successors.resize(n);
  g.log_weight = std::move(log_weights);
  for (std::size_t u = 0; u < n; ++u) {
    if (adjacency[u].size() != n) throw UsageError("adjacency matrix must be square");
    for (std::size_t v = 0; v < n; ++v) {
      if (adjacency[u][v] != 0) g.successors[u].push_back(v);
    }
  }
  return g;
}

TransitionGraph build_po_graph(const SystemSpec& sys, const EpsilonNet& net,
                               double alpha, const Potential& f, double scale) {
  if (net.points.empty()) throw UsageError("pseudo-orbit graph needs a nonempty net");
  if (!(alpha > 0.0)) throw UsageError("pseudo-orbit graph needs alpha > 0");
  f.check_compatible(sys);
  for (const State& x : net.points) check_state(sys, x);

  TransitionGraph g;
  g.vertices = net.points;
  g.alpha = alpha;
  g.scale = scale;
  const std::size_t n = net.points.size();
  g.successors.resize(n);
  g.log_weight.resize(n);
  for (std::size_t u = 0; u < n; ++u) {
    const State image = evaluate_map_unchecked(sys, net.points[u]);
    for (std::size_t v = 0; v < n; ++v) {
      if (distance_unchecked(sys, image, net.points[v]) <= alpha) {
        g.successors[u].push_back(v);
      }
    }
    g.log_weight[u] = scale * f(sys, net.points[u]);
  }
  return g;
}

namespace {

// Strongly connected components (Kosaraju, iterative).
std::vector<std::vector<std::size_t>> components(const TransitionGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::size_t>> reverse(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v : g.successors[u]) reverse[v].push_back(u);
  }
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next < g.successors[u].size()) {
        const std::size_t v = g.successors[u][next++];
        if (!seen[v]) {
          seen[v] = 1;
          stack.emplace_back(v, 0);
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{*it};
    comp[*it] = id;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      out.back().push_back(u);
      for (std::size_t v : reverse[u]) {
        if (comp[v] < 0) {
          comp[v] = id;
          stack.push_back(v);
        }
      }
    }
  }
  return out;
}

double component_log_radius(const TransitionGraph& g,
                            const std::vector<std::size_t>& members) {
  if (members.size() == 1) {
    const std::size_t u = members[0];
    return g.has_edge(u, u) ? g.log_weight[u] : kNegInf;
  }
  const std::size_t m = members.size();
  std::unordered_map<std::size_t, std::size_t> local;
  for (std::size_t a = 0; a < m; ++a) local.emplace(members[a], a);
  double top = kNegInf;
  for (std::size_t u : members) top = std::max(top, g.log_weight[u]);

  std::vector<std::vector<std::size_t>> succ(m);
  std::vector<double> w(m);
  double shift = 0.0;
  for (std::size_t a = 0; a < m; ++a) {
    w[a] = std::exp(g.log_weight[members[a]] - top);
    for (std::size_t v : g.successors[members[a]]) {
      if (auto it = local.find(v); it != local.end()) succ[a].push_back(it->second);
    }
    shift = std::max(shift, w[a] * static_cast<double>(succ[a].size()));
  }

  // B + shift I is primitive on an irreducible block; the Collatz-Wielandt
  // ratios (B v)_i / v_i bracket its Perron root.
  std::vector<double> v(m, 1.0), next(m);
  double lower = 0.0;
  double upper = 0.0;
  for (int it = 0; it < kSpectralMaxIterations; ++it) {
    double total = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      double acc = 0.0;
      for (std::size_t b : succ[a]) acc += v[b];
      next[a] = w[a] * acc + shift * v[a];
      total += next[a];
    }
    lower = next[0] / v[0];
    upper = lower;
    for (std::size_t a = 1; a < m; ++a) {
      const double r = next[a] / v[a];
      lower = std::min(lower, r);
      upper = std::max(upper, r);
    }
    for (std::size_t a = 0; a < m; ++a) v[a] = next[a] / total;
    if (std::log(upper) - std::log(lower) < kSpectralTolerance) {
      return top + std::log(0.5 * (lower + upper) - shift);
    }
  }
  throw ConvergenceError("power iteration did not converge",
                         top + std::log(lower - shift), top + std::log(upper - shift));
}

using Bits = std::vector<std::uint64_t>;

struct BitsHash {
  std::size_t operator()(const Bits& b) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : b) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

bool any_bit(const Bits& b) {
  return std::any_of(b.begin(), b.end(), [](std::uint64_t w) { return w != 0; });
}

// Dense square matrix of log entries.
struct LogMatrix {
  std::size_t n = 0;
  std::vector<double> a;

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

LogMatrix log_multiply(const LogMatrix& x, const LogMatrix& y) {
  const std::size_t n = x.n;
  LogMatrix out{n, std::vector<double>(n * n, kNegInf)};
  std::vector<double> terms(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) terms[k] = x.at(i, k) + y.at(k, j);
      out.at(i, j) = log_sum_exp(terms);
    }
  }
  return out;
}

}  // namespace

double spectral_log_growth(const TransitionGraph& g) {
  if (g.vertex_count() == 0) throw UsageError("spectral growth of an empty graph");
  double best = kNegInf;
  for (const auto& c : components(g)) best = std::max(best, component_log_radius(g, c));
  return best;
}

EpsilonNet partition_net(const SystemSpec& sys, double resolution) {
  if (!(resolution > 0.0)) throw UsageError("partition resolution must be positive");
  if (!sys.is_real()) return build_net(sys, resolution);
  EpsilonNet net;
  net.resolution = resolution;
  const auto cells = static_cast<std::size_t>(std::ceil(1.0 / resolution));
  for (std::size_t i = 0; i < cells; ++i) {
    net.points.emplace_back((static_cast<double>(i) + 0.5) / static_cast<double>(cells));
  }
  return net;
}

CoarseWordCount count_coarse_words(const SystemSpec& sys, const TransitionGraph& g,
                                   const EpsilonNet& partition, std::size_t n,
                                   const Potential& f, double scale,
                                   std::size_t state_cap) {
  if (n == 0) throw UsageError("coarse word count needs n >= 1");
  if (g.vertices.size() != g.vertex_count() || g.vertices.empty()) {
    throw UsageError("coarse word count needs a graph built on net points");
  }
  if (partition.points.empty()) throw UsageError("partition is empty");
  f.check_compatible(sys);

  const std::size_t verts = g.vertex_count();
  const std::size_t words = (verts + 63) / 64;
  const std::size_t cells = partition.points.size();

  std::vector<Bits> cell_mask(cells, Bits(words, 0));
  for (std::size_t v = 0; v < verts; ++v) {
    const std::size_t c = nearest_point(sys, partition, g.vertices[v]);
    cell_mask[c][v / 64] |= std::uint64_t{1} << (v % 64);
  }
  std::vector<Bits> succ_mask(verts, Bits(words, 0));
  for (std::size_t u = 0; u < verts; ++u) {
    for (std::size_t v : g.successors[u]) {
      succ_mask[u][v / 64] |= std::uint64_t{1} << (v % 64);
    }
  }
  std::vector<double> center_weight(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    center_weight[c] = scale * f(sys, partition.points[c]);
  }

  std::unordered_map<Bits, std::size_t, BitsHash> ids;
  std::vector<Bits> subsets;
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> moves;  // (cell, state)
  std::vector<char> expanded;
  std::size_t depth = 0;
  auto intern = [&](Bits b) {
    auto [it, inserted] = ids.emplace(b, subsets.size());
    if (inserted) {
      if (subsets.size() >= state_cap) {
        throw ResourceError("coarse automaton exceeded " + std::to_string(state_cap) +
                                " subset states at depth " + std::to_string(depth),
                            depth);
      }
      subsets.push_back(std::move(b));
      moves.emplace_back();
      expanded.push_back(0);
    }
    return it->second;
  };

  struct Mass {
    double count = kNegInf;
    double weighted = kNegInf;
  };
  std::unordered_map<std::size_t, Mass> layer;
  depth = 1;
  for (std::size_t c = 0; c < cells; ++c) {
    if (!any_bit(cell_mask[c])) continue;
    auto& m = layer[intern(cell_mask[c])];
    m.count = log_add(m.count, 0.0);
    m.weighted = log_add(m.weighted, center_weight[c]);
  }

  for (depth = 2; depth <= n; ++depth) {
    std::vector<std::pair<std::size_t, Mass>> current(layer.begin(), layer.end());
    std::sort(current.begin(), current.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::unordered_map<std::size_t, Mass> next;
    for (const auto& [state, mass] : current) {
      if (!expanded[state]) {
        Bits reach(words, 0);
        const Bits members = subsets[state];
        for (std::size_t w = 0; w < words; ++w) {
          for (std::uint64_t r = members[w]; r != 0; r &= r - 1) {
            const auto& s = succ_mask[w * 64 + static_cast<std::size_t>(std::countr_zero(r))];
            for (std::size_t k = 0; k < words; ++k) reach[k] |= s[k];
          }
        }
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t c = 0; c < cells; ++c) {
          Bits target(words);
          for (std::size_t k = 0; k < words; ++k) target[k] = reach[k] & cell_mask[c][k];
          if (any_bit(target)) out.emplace_back(c, intern(std::move(target)));
        }
        moves[state] = std::move(out);
        expanded[state] = 1;
      }
      for (const auto& [c, to] : moves[state]) {
        auto& m = next[to];
        m.count = log_add(m.count, mass.count);
        m.weighted = log_add(m.weighted, mass.weighted + center_weight[c]);
      }
    }
    layer = std::move(next);
  }

  CoarseWordCount out;
  LogAccumulator count;
  LogAccumulator weighted;
  for (const auto& [state, mass] : layer) {
    count.add(mass.count);
    weighted.add(mass.weighted);
  }
  out.log_count = count.value();
  out.log_weighted = weighted.value();
  out.states = subsets.size();
  out.center_error = std::abs(scale) * f.modulus(sys, partition.resolution);
  return out;
}

double count_periodic_po(const TransitionGraph& g, std::size_t n) {
  if (n == 0) throw UsageError("periodic count needs n >= 1");
  const std::size_t v = g.vertex_count();
  if (v == 0) throw UsageError("periodic count of an empty graph");
  LogMatrix base{v, std::vector<double>(v * v, kNegInf)};
  for (std::size_t u = 0; u < v; ++u) {
    for (std::size_t w : g.successors[u]) base.at(u, w) = g.log_weight[u];
  }
  LogMatrix result{v, std::vector<double>(v * v, kNegInf)};
  for (std::size_t u = 0; u < v; ++u) result.at(u, u) = 0.0;
  for (std::size_t e = n; e != 0; e >>= 1) {
    if (e & 1U) result = log_multiply(result, base);
    if (e > 1) base = log_multiply(base, base);
  }
  LogAccumulator trace;
  for (std::size_t u = 0; u < v; ++u) trace.add(result.at(u, u));
  return trace.value();
}

std::uint64_t closed_path_count(const TransitionGraph& g, std::size_t n) {
  if (n == 0) throw UsageError("periodic count needs n >= 1");
  const std::size_t v = g.vertex_count();
  using Mat = std::vector<std::uint64_t>;
  auto multiply = [v](const Mat& x, const Mat& y) {
    Mat out(v * v, 0);
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t k = 0; k < v; ++k) {
        if (x[i * v + k] == 0) continue;
        for (std::size_t j = 0; j < v; ++j) {
          std::uint64_t term = 0;
          if (__builtin_mul_overflow(x[i * v + k], y[k * v + j], &term) ||
              __builtin_add_overflow(out[i * v + j], term, &out[i * v + j])) {
            throw ResourceError("closed path count overflows 64 bits", 0);
          }
        }
      }
    }
    return out;
  };
  Mat base(v * v, 0);
  for (std::size_t u = 0; u < v; ++u) {
    for (std::size_t w : g.successors[u]) base[u * v + w] = 1;
  }
  Mat result(v * v, 0);
  for (std::size_t u = 0; u < v; ++u) result[u * v + u] = 1;
  for (std::size_t e = n; e != 0; e >>= 1) {
    if (e & 1U) result = multiply(result, base);
    if (e > 1) base = multiply(base, base);
  }
  std::uint64_t trace = 0;
  for (std::size_t u = 0; u < v; ++u) {
    if (__builtin_add_overflow(trace, result[u * v + u], &trace)) {
      throw ResourceError("closed path count overflows 64 bits", 0);
    }
  }
  return trace;
}

void write_edge_list(std::ostream& out, const TransitionGraph& g) {
  for (std::size_t u = 0; u < g.vertex_count(); ++u) {
    for (std::size_t v : g.successors[u]) out << u << ' ' << v << '\n';
  }
}

ScaleFunction ScaleFunction::constant_one() { return ScaleFunction{}; }

ScaleFunction ScaleFunction::log_reciprocal() {
  ScaleFunction s;
  s.kind_ = Kind::log_reciprocal;
  return s;
}

ScaleFunction ScaleFunction::power_log(double power) {
  if (!(power > 0.0) || !std::isfinite(power)) {
    throw UsageError("power-log scale needs a positive finite power");
  }
  ScaleFunction s;
  s.kind_ = Kind::power_log;
  s.power_ = power;
  return s;
}

ScaleFunction ScaleFunction::parse(const std::string& text) {
  if (text == "one") return constant_one();
  if (text == "log") return log_reciprocal();
  if (text.rfind("powlog:", 0) == 0) {
    const std::string p = text.substr(7);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(p, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != p.size()) {
      throw UsageError("bad power in scale function '" + text + "'");
    }
    return power_log(value);
  }
  throw UsageError("unknown scale function '" + text + "' (one, log, powlog:<p>)");
}

double ScaleFunction::operator()(double x) const {
  if (!(x > 0.0)) throw DomainError("scale function needs x > 0");
  switch (kind_) {
    case Kind::constant_one:
      return 1.0;
    case Kind::log_reciprocal:
      return std::log(1.0 / x) + 1.0;
    case Kind::power_log:
      return std::pow(std::log(1.0 / x) + 1.0, power_);
  }
  return 1.0;
}

std::string ScaleFunction::name() const {
  switch (kind_) {
    case Kind::constant_one:
      return "one";
    case Kind::log_reciprocal:
      return "log";
    case Kind::power_log: {
      std::ostringstream s;
      s << "powlog:" << power_;
      return s.str();
    }
  }
  return "one";
}

std::string to_string(ScaledMode m) {
  switch (m) {
    case ScaledMode::direct:
      return "direct";
    case ScaledMode::po:
      return "po";
    case ScaledMode::ppo:
      return "ppo";
  }
  return "unknown";
}

PressureSeries scaled_pressure_series(const SystemSpec& sys, const Potential& f,
                                      const ScaleFunction& s, ScaledMode mode,
                                      const ScaledGrid& grid) {
  if (grid.n_values.empty()) throw UsageError("scaled series needs a nonempty n grid");
  if (!(grid.epsilon > 0.0)) throw UsageError("scaled series needs epsilon > 0");
  f.check_compatible(sys);
  const double scale = s(grid.epsilon);

  PressureSeries series;
  series.route = Route::scaled;
  series.params.epsilon = grid.epsilon;
  series.params.scale = s.name();
  series.params.scale_value = scale;

  if (mode == ScaledMode::direct) {
    for (std::size_t n : grid.n_values) {
      const std::vector<State> pool = grid.pool(sys, n, grid.epsilon);
      const SeparatedSet set = max_separated_set(sys, pool, n, grid.epsilon);
      PressureSample p;
      p.n = n;
      p.epsilon = grid.epsilon;
      p.log_sum = log_sr_sum(sys, f, set, scale);
      p.per_n = p.log_sum / static_cast<double>(n) / scale;
      series.samples.push_back(p);
    }
    series.validate();
    return series;
  }

  if (!(grid.alpha > 0.0)) throw UsageError("pseudo-orbit modes need alpha > 0");
  if (!(grid.net_resolution > 0.0)) {
    throw UsageError("pseudo-orbit modes need a net resolution");
  }
  series.params.alpha = grid.alpha;
  series.params.net_resolution = grid.net_resolution;
  const EpsilonNet net = build_net(sys, grid.net_resolution);
  const TransitionGraph g = build_po_graph(sys, net, grid.alpha, f, scale);
  const double pres =
      grid.partition_resolution > 0.0 ? grid.partition_resolution : grid.epsilon;
  const EpsilonNet partition = partition_net(sys, pres);
  if (mode == ScaledMode::po) series.params.partition_resolution = pres;

  for (std::size_t n : grid.n_values) {
    PressureSample p;
    p.n = n;
    p.epsilon = grid.epsilon;
    if (mode == ScaledMode::po) {
      try {
        p.log_sum =
            count_coarse_words(sys, g, partition, n, f, scale, grid.state_cap).log_weighted;
      } catch (const ResourceError&) {
        series.truncated = true;
        break;
      }
    } else {
      p.log_sum = count_periodic_po(g, n);
      if (p.log_sum == kNegInf) continue;
    }
    p.per_n = p.log_sum / static_cast<double>(n) / scale;
    series.samples.push_back(p);
  }
  series.validate();
  return series;
}

}  // namespace fkp
