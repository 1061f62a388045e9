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

#include "fkp/fk_pseudo_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <map>
#include <sstream>

#include "fkp/errors.hpp"
#include "fkp/independent_set.hpp"
#include "fkp/log_space.hpp"

namespace fkp {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// gap[p * L + q] = smallest D in [1, L-1] with d(T^D x_p, x_q) <= alpha,
// kNone if there is none.
struct GapTable {
  std::size_t len = 0;
  std::vector<std::size_t> gap;

  std::size_t at(std::size_t p, std::size_t q) const { return gap[p * len + q]; }
};

GapTable build_gaps(const SystemSpec& sys, std::span<const State> seq, double alpha) {
  GapTable t;
  t.len = seq.size();
  t.gap.assign(t.len * t.len, kNone);
  for (std::size_t p = 0; p < t.len; ++p) {
    State y = seq[p];
    for (std::size_t d = 1; d < t.len; ++d) {
      y = evaluate_map_unchecked(sys, y);
      for (std::size_t q = p + 1; q < t.len; ++q) {
        if (t.gap[p * t.len + q] == kNone && distance_unchecked(sys, y, seq[q]) <= alpha) {
          t.gap[p * t.len + q] = d;
        }
      }
    }
  }
  return t;
}

// For chains inside windows starting at `a`: best[b - a] is the longest chain
// of the window [a, b), for every b in (a, len].
std::vector<std::size_t> best_chains_from(const GapTable& t, std::size_t a) {
  const std::size_t len = t.len;
  const std::size_t span = len - a;
  // total[r][k]: smallest total gap of a k-element chain ending at a + r.
  std::vector<std::vector<std::size_t>> total(span);
  std::vector<std::size_t> best_total(span + 1, kNone);
  std::vector<std::size_t> best(span + 1, 0);
  std::size_t longest = 0;
  for (std::size_t r = 0; r < span; ++r) {
    auto& row = total[r];
    row.assign(r + 2, kNone);
    row[1] = 0;
    for (std::size_t p = 0; p < r; ++p) {
      const std::size_t g = t.at(a + p, a + r);
      if (g == kNone) continue;
      const auto& prev = total[p];
      for (std::size_t k = 1; k < prev.size(); ++k) {
        if (prev[k] != kNone) row[k + 1] = std::min(row[k + 1], prev[k] + g);
      }
    }
    for (std::size_t k = 1; k < row.size(); ++k) {
      best_total[k] = std::min(best_total[k], row[k]);
    }
    // Window [a, a + r + 1) has length r + 1 and gap budget r.
    while (longest + 1 <= span && best_total[longest + 1] <= r) ++longest;
    best[r + 1] = longest;
  }
  return best;
}

ChainWitness chain_with_witness(const GapTable& t) {
  const std::size_t len = t.len;
  ChainWitness w;
  if (len == 0) return w;
  std::vector<std::vector<std::size_t>> total(len), parent(len);
  for (std::size_t r = 0; r < len; ++r) {
    total[r].assign(r + 2, kNone);
    parent[r].assign(r + 2, kNone);
    total[r][1] = 0;
    for (std::size_t p = 0; p < r; ++p) {
      const std::size_t g = t.at(p, r);
      if (g == kNone) continue;
      for (std::size_t k = 1; k < total[p].size(); ++k) {
        if (total[p][k] != kNone && total[p][k] + g < total[r][k + 1]) {
          total[r][k + 1] = total[p][k] + g;
          parent[r][k + 1] = p;
        }
      }
    }
  }
  std::size_t end = 0;
  for (std::size_t r = 0; r < len; ++r) {
    for (std::size_t k = w.k + 1; k < total[r].size(); ++k) {
      if (total[r][k] <= len - 1) {
        w.k = k;
        end = r;
      }
    }
  }
  std::vector<std::size_t> path;
  for (std::size_t r = end, k = w.k; k >= 1; --k) {
    path.push_back(r);
    if (k > 1) r = parent[r][k];
  }
  std::reverse(path.begin(), path.end());
  w.i_indices = path;
  std::size_t j = 0;
  for (std::size_t s = 0; s < path.size(); ++s) {
    if (s > 0) j += t.at(path[s - 1], path[s]);
    w.j_indices.push_back(j);
  }
  return w;
}

std::string real_text(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s.precision(12);
  s << v;
  return s.str();
}

}  // namespace

std::size_t default_n_delta(double delta) {
  if (!(delta > 0.0)) throw UsageError("delta must be positive");
  return std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(2.0 / delta)));
}

FkpoParams FkpoParams::with_default(double alpha, double delta) {
  FkpoParams p{alpha, delta, default_n_delta(delta)};
  p.validate();
  return p;
}

void FkpoParams::validate() const {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("delta must lie in (0, 1]");
  if (n_delta == 0) throw UsageError("N_delta must be at least 1");
}

bool dense_enough(std::size_t k, std::size_t n, double delta) {
  return static_cast<double>(k) > (1.0 - delta) * static_cast<double>(n);
}

ChainWitness longest_chain(const SystemSpec& sys, std::span<const State> seq,
                           double alpha) {
  if (seq.empty()) throw UsageError("chain needs a nonempty sequence");
  for (const State& x : seq) check_state(sys, x);
  return chain_with_witness(build_gaps(sys, seq, alpha));
}

bool is_fk_pseudo_chain(const SystemSpec& sys, std::span<const State> seq,
                        double alpha, double delta) {
  return dense_enough(longest_chain(sys, seq, alpha).k, seq.size(), delta);
}

bool is_pseudo_chain(const SystemSpec& sys, std::span<const State> seq, double alpha) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (distance(sys, evaluate_map(sys, seq[i]), seq[i + 1]) > alpha) return false;
  }
  return true;
}

bool verify_chain(const SystemSpec& sys, std::span<const State> seq, double alpha,
                  const ChainWitness& w) {
  const std::size_t n = seq.size();
  if (w.i_indices.size() != w.k || w.j_indices.size() != w.k) return false;
  if (w.k > n) return false;
  for (std::size_t t = 0; t < w.k; ++t) {
    if (w.i_indices[t] >= n || w.j_indices[t] >= n) return false;
    if (t > 0 && (w.i_indices[t] <= w.i_indices[t - 1] ||
                  w.j_indices[t] <= w.j_indices[t - 1])) {
      return false;
    }
  }
  for (std::size_t t = 0; t + 1 < w.k; ++t) {
    State y = seq[w.i_indices[t]];
    for (std::size_t d = w.j_indices[t]; d < w.j_indices[t + 1]; ++d) {
      y = evaluate_map(sys, y);
    }
    if (distance(sys, y, seq[w.i_indices[t + 1]]) > alpha) return false;
  }
  return true;
}

FkpoResult is_fkpo_prefix(const SystemSpec& sys, std::span<const State> seq,
                          const FkpoParams& params, bool with_witness) {
  params.validate();
  const std::size_t len = seq.size();
  const std::size_t cap = params.n_delta;
  if (len < cap + 1) {
    throw UsageError("membership horizon " + std::to_string(len) +
                     " is shorter than N_delta + 1 = " + std::to_string(cap + 1));
  }
  for (const State& x : seq) check_state(sys, x);
  const GapTable table = build_gaps(sys, seq, params.alpha);

  std::vector<std::vector<std::size_t>> chains(len + 1);
  auto window_ok = [&](std::size_t a, std::size_t b) {
    if (chains[a].empty()) chains[a] = best_chains_from(table, a);
    return dense_enough(chains[a][b - a], b - a, params.delta);
  };

  std::vector<std::size_t> s;
  auto extend = [&](auto&& self) -> bool {
    const std::size_t last = s.back();
    if (last + cap > len) return true;
    for (std::size_t next = last + 1; next <= std::min(last + cap, len); ++next) {
      const bool ok = std::all_of(s.begin(), s.end(),
                                  [&](std::size_t a) { return window_ok(a, next); });
      if (!ok) continue;
      s.push_back(next);
      if (self(self)) return true;
      s.pop_back();
    }
    return false;
  };

  FkpoResult out;
  for (std::size_t s0 = 0; s0 <= std::min(cap, len); ++s0) {
    s.assign(1, s0);
    if (extend(extend)) {
      out.member = true;
      break;
    }
  }
  if (!out.member || !with_witness) return out;

  FkpoWitness w;
  w.s_sequence = s;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      WindowWitness win;
      win.begin = s[a];
      win.end = s[b];
      win.chain = longest_chain(sys, seq.subspan(s[a], s[b] - s[a]), params.alpha);
      w.windows.push_back(std::move(win));
    }
  }
  out.witness = std::move(w);
  return out;
}

bool verify_fkpo_witness(const SystemSpec& sys, std::span<const State> seq,
                         const FkpoParams& params, const FkpoWitness& w) {
  const std::size_t len = seq.size();
  const std::size_t cap = params.n_delta;
  const auto& s = w.s_sequence;
  if (s.empty() || s[0] > cap || s.back() > len || s.back() + cap <= len) return false;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] <= s[i - 1] || s[i] - s[i - 1] > cap) return false;
  }
  std::map<std::pair<std::size_t, std::size_t>, const WindowWitness*> by_pair;
  for (const auto& win : w.windows) by_pair[{win.begin, win.end}] = &win;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      const auto it = by_pair.find({s[a], s[b]});
      if (it == by_pair.end()) return false;
      const auto window = seq.subspan(s[a], s[b] - s[a]);
      const ChainWitness& c = it->second->chain;
      if (!verify_chain(sys, window, params.alpha, c)) return false;
      if (!dense_enough(c.k, window.size(), params.delta)) return false;
    }
  }
  return true;
}

std::string witness_report(const SystemSpec& sys, std::span<const State> seq,
                           const FkpoParams& params, const FkpoWitness& w) {
  std::ostringstream out;
  out << "fkpo-witness system=" << sys.name() << " alpha=" << real_text(params.alpha)
      << " delta=" << real_text(params.delta) << " N_delta=" << params.n_delta
      << " horizon=" << seq.size() << " semantics=finite-horizon\n";
  out << "checkpoints:";
  for (std::size_t v : w.s_sequence) out << ' ' << v;
  out << '\n';
  for (const auto& win : w.windows) {
    const std::size_t len = win.end - win.begin;
    const auto window = seq.subspan(win.begin, len);
    const auto& c = win.chain;
    out << "window [" << win.begin << ", " << win.end << ") k=" << c.k << " > "
        << real_text((1.0 - params.delta) * static_cast<double>(len)) << " "
        << (dense_enough(c.k, len, params.delta) ? "ok" : "FAIL") << "\n  i:";
    for (std::size_t v : c.i_indices) out << ' ' << v;
    out << "\n  j:";
    for (std::size_t v : c.j_indices) out << ' ' << v;
    out << '\n';
    for (std::size_t t = 0; t + 1 < c.k; ++t) {
      State y = window[c.i_indices[t]];
      const std::size_t gap = c.j_indices[t + 1] - c.j_indices[t];
      for (std::size_t d = 0; d < gap; ++d) y = evaluate_map(sys, y);
      const double dist = distance(sys, y, window[c.i_indices[t + 1]]);
      out << "  d(T^" << gap << " x_" << c.i_indices[t] << ", x_" << c.i_indices[t + 1]
          << ") = " << real_text(dist) << (dist <= params.alpha ? " <= " : " > ")
          << "alpha\n";
    }
  }
  return out.str();
}

std::vector<State> shift_sequence(std::span<const State> seq) {
  if (seq.size() < 2) throw UsageError("shift_sequence needs length >= 2");
  return {seq.begin() + 1, seq.end()};
}

FkpoBruteForce fkpo_sr_bruteforce(const SystemSpec& sys, const Potential& f,
                                  std::size_t n, double epsilon,
                                  const FkpoParams& params, std::size_t tail_length,
                                  std::size_t cap) {
  if (!sys.is_finite()) throw UsageError("FKPO brute force needs a finite system");
  if (n == 0) throw UsageError("FKPO brute force needs n >= 1");
  if (!(epsilon > 0.0)) throw UsageError("FKPO brute force needs epsilon > 0");
  params.validate();
  f.check_compatible(sys);
  const auto points = static_cast<std::size_t>(sys.symbols());
  if (points > 6 || n > 6 || tail_length > 6) {
    throw ResourceError("FKPO brute force is limited to 6 points, n <= 6, tail <= 6", 0);
  }
  const std::size_t len = n + tail_length;
  double total = std::pow(static_cast<double>(points), static_cast<double>(len));
  if (total > static_cast<double>(cap)) {
    throw ResourceError("FKPO brute force would enumerate " + real_text(total) +
                            " sequences, cap is " + std::to_string(cap),
                        0);
  }

  FkpoBruteForce out;
  std::vector<std::size_t> digits(len, 0);
  std::vector<State> seq(len, FinitePoint{0});
  std::map<std::vector<std::size_t>, std::size_t> prefix_ids;
  while (true) {
    for (std::size_t i = 0; i < len; ++i) seq[i] = FinitePoint{digits[i]};
    ++out.enumerated;
    if (is_fkpo_prefix(sys, seq, params, false).member) {
      out.members.push_back(digits);
      prefix_ids.emplace(std::vector<std::size_t>(digits.begin(), digits.begin() + n), 0);
    }
    std::size_t pos = len;
    while (pos > 0) {
      --pos;
      if (++digits[pos] < points) break;
      digits[pos] = 0;
    }
    if (pos == 0 && digits[0] == 0) break;
  }

  for (auto& [prefix, id] : prefix_ids) {
    id = out.prefixes.size();
    out.prefixes.push_back(prefix);
  }
  const std::size_t m = out.prefixes.size();
  std::vector<double> weights(m, 0.0);
  std::vector<std::vector<std::size_t>> adjacency(m);
  const auto& d = sys.distances();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      weights[a] += f(sys, FinitePoint{out.prefixes[a][i]});
    }
    for (std::size_t b = a + 1; b < m; ++b) {
      bool separated = false;
      for (std::size_t i = 0; i < n && !separated; ++i) {
        separated = d[out.prefixes[a][i]][out.prefixes[b][i]] > epsilon;
      }
      if (!separated) {
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
      }
    }
  }
  out.selected = exact_max_weight_independent_set(weights, adjacency);
  LogAccumulator acc;
  for (std::size_t a : out.selected) acc.add(weights[a]);
  out.log_sum = acc.value();
  return out;
}

}  // namespace fkp
