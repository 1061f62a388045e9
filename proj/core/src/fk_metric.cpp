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

#include "fkp/fk_metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "fkp/errors.hpp"
#include "fkp/independent_set.hpp"

namespace fkp {

MatchMatrix::MatchMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows),
      cols_(cols),
      words_(std::max<std::size_t>(1, (cols + 63) / 64)),
      bits_(rows * words_, 0) {}

namespace {

// Hyyro's bit-vector LCS: V holds zeros at columns that end a longer common
// subsequence; per row U = V & PM, V = (V + U) | (V - U).
std::size_t lcs_rows(std::span<const std::uint64_t> rows, std::size_t row_count,
                     std::size_t words, std::size_t cols) {
  if (cols == 0 || row_count == 0) return 0;
  const std::size_t tail = cols % 64;
  const std::uint64_t last_mask =
      tail == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << tail) - 1;
  if (words == 1) {
    std::uint64_t v = last_mask;
    for (std::size_t i = 0; i < row_count; ++i) {
      const std::uint64_t u = v & rows[i];
      v = ((v + u) | (v - u)) & last_mask;
    }
    return cols - static_cast<std::size_t>(std::popcount(v));
  }
  std::vector<std::uint64_t> v(words, ~std::uint64_t{0});
  v[words - 1] = last_mask;
  for (std::size_t i = 0; i < row_count; ++i) {
    const std::uint64_t* pm = rows.data() + i * words;
    std::uint64_t carry = 0;
    for (std::size_t w = 0; w < words; ++w) {
      const std::uint64_t u = v[w] & pm[w];
      const std::uint64_t s = v[w] + u;
      const std::uint64_t c1 = s < v[w] ? 1 : 0;
      const std::uint64_t s2 = s + carry;
      const std::uint64_t c2 = s2 < s ? 1 : 0;
      v[w] = s2 | (v[w] & ~u);
      carry = c1 | c2;
    }
    v[words - 1] &= last_mask;
  }
  std::size_t zeros = cols;
  for (std::uint64_t w : v) zeros -= static_cast<std::size_t>(std::popcount(w));
  return zeros;
}

void check_pair(const OrbitSegment& ox, const OrbitSegment& oy) {
  if (ox.size() != oy.size()) {
    throw UsageError("match needs sequences of equal length (" +
                     std::to_string(ox.size()) + " vs " + std::to_string(oy.size()) +
                     ")");
  }
  if (ox.size() == 0) throw UsageError("match needs n >= 1");
}

std::vector<double> distance_table(const SystemSpec& sys, const OrbitSegment& ox,
                                   const OrbitSegment& oy) {
  const std::size_t n = ox.size();
  std::vector<double> d(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i * n + j] = distance_unchecked(sys, ox[i], oy[j]);
    }
  }
  return d;
}

// Smallest match size M with defect_level(n - M, n) <= eps.
std::size_t required_match(std::size_t n, double eps) {
  std::size_t need = n;
  while (need > 0 && defect_level(n - (need - 1), n) <= eps) --need;
  return need;
}

// d_FKn(x, y) <= eps iff fbar computed with closeness d <= eps is <= eps.
bool within_from_table(std::span<const double> d, std::size_t n, double eps,
                       std::size_t need) {
  MatchMatrix m(n, n);
  std::size_t matched_rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (d[i * n + j] <= eps) {
        m.set(i, j);
        any = true;
      }
    }
    if (any) ++matched_rows;
  }
  if (matched_rows < need) return false;
  return lcs_length(m) >= need;
}

// Orbits of circle/interval points as plain doubles.
struct RealOrbits {
  std::vector<double> x;
  std::size_t n = 0;
  bool circle = false;

  double d(std::size_t a, std::size_t i, std::size_t b, std::size_t j) const {
    const double t = std::abs(x[a * n + i] - x[b * n + j]);
    return circle ? std::min(t, 1.0 - t) : t;
  }
};

// m-gram profile of a shift point: for each distinct code of the symbols
// [i, i+m), the set of start positions i < n as a bit mask.
struct GramProfile {
  std::vector<std::uint64_t> codes;
  std::vector<std::uint64_t> rows;
};

class Within {
 public:
  Within(const SystemSpec& sys, std::span<const State> pool, std::size_t n, double eps)
      : sys_(sys), n_(n), eps_(eps), need_(required_match(n, eps)) {
    if (sys.is_shift()) {
      const std::size_t m = agreement_length(eps);
      const unsigned bits = std::max(
          1U, static_cast<unsigned>(std::bit_width(static_cast<unsigned>(sys.symbols() - 1))));
      if (n <= 64 && m * bits <= 64) {
        mode_ = Mode::shift;
        gram_ = m;
        profiles_.reserve(pool.size());
        for (const State& s : pool) profiles_.push_back(profile(std::get<Word>(s), bits));
        return;
      }
    }
    if (sys.is_real()) {
      mode_ = Mode::real;
      real_.n = n;
      real_.circle = sys.space() == SpaceKind::circle;
      real_.x.reserve(pool.size() * n);
      for (const State& s : pool) {
        double x = std::get<double>(s);
        for (std::size_t i = 0; i < n; ++i) {
          real_.x.push_back(x);
          x = std::get<double>(evaluate_map_unchecked(sys, x));
        }
      }
      return;
    }
    orbits_.reserve(pool.size());
    for (const State& s : pool) orbits_.push_back(orbit_segment(sys, s, n));
  }

  bool operator()(std::size_t a, std::size_t b) const {
    switch (mode_) {
      case Mode::shift:
        return shift_within(profiles_[a], profiles_[b]);
      case Mode::real:
        return real_within(a, b);
      case Mode::generic:
        break;
    }
    return within_from_table(distance_table(sys_, orbits_[a], orbits_[b]), n_, eps_,
                             need_);
  }

 private:
  enum class Mode { shift, real, generic };

  GramProfile profile(const Word& w, unsigned bits) const {
    std::vector<std::pair<std::uint64_t, std::size_t>> grams(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      std::uint64_t code = 0;
      for (std::size_t t = 0; t < gram_; ++t) code = (code << bits) | w.at(i + t);
      grams[i] = {code, i};
    }
    std::sort(grams.begin(), grams.end());
    GramProfile p;
    for (const auto& [code, i] : grams) {
      if (p.codes.empty() || p.codes.back() != code) {
        p.codes.push_back(code);
        p.rows.push_back(0);
      }
      p.rows.back() |= std::uint64_t{1} << i;
    }
    return p;
  }

  bool shift_within(const GramProfile& a, const GramProfile& b) const {
    std::uint64_t pm[64] = {};
    std::uint64_t matched = 0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.codes.size() && ib < b.codes.size()) {
      if (a.codes[ia] < b.codes[ib]) {
        ++ia;
      } else if (b.codes[ib] < a.codes[ia]) {
        ++ib;
      } else {
        matched |= a.rows[ia];
        for (std::uint64_t r = a.rows[ia]; r != 0; r &= r - 1) {
          pm[std::countr_zero(r)] = b.rows[ib];
        }
        ++ia;
        ++ib;
      }
    }
    if (static_cast<std::size_t>(std::popcount(matched)) < need_) return false;
    return lcs_rows(pm, n_, 1, n_) >= need_;
  }

  bool real_within(std::size_t a, std::size_t b) const {
    // d_FKn <= d_n, so Bowen-close pairs are FK-close.
    bool bowen_close = true;
    for (std::size_t i = 0; i < n_ && bowen_close; ++i) {
      bowen_close = real_.d(a, i, b, i) <= eps_;
    }
    if (bowen_close) return true;
    MatchMatrix m(n_, n_);
    std::size_t matched_rows = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      bool any = false;
      for (std::size_t j = 0; j < n_; ++j) {
        if (real_.d(a, i, b, j) <= eps_) {
          m.set(i, j);
          any = true;
        }
      }
      if (any) ++matched_rows;
    }
    if (matched_rows < need_) return false;
    return lcs_length(m) >= need_;
  }

  const SystemSpec& sys_;
  std::size_t n_;
  double eps_;
  std::size_t need_;
  Mode mode_ = Mode::generic;
  std::size_t gram_ = 0;
  std::vector<GramProfile> profiles_;
  RealOrbits real_;
  std::vector<OrbitSegment> orbits_;
};

void check_pool(const SystemSpec& sys, std::span<const State> pool, std::size_t n,
                double epsilon) {
  if (pool.empty()) throw UsageError("separated set needs a nonempty pool");
  if (n == 0) throw UsageError("separated set needs n >= 1");
  if (!(epsilon > 0.0)) throw UsageError("separated set needs epsilon > 0");
  for (const State& x : pool) check_state(sys, x);
}

}  // namespace

std::size_t lcs_length(const MatchMatrix& m) {
  std::vector<std::uint64_t> all;
  all.reserve(m.rows() * m.words());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    all.insert(all.end(), r.begin(), r.end());
  }
  return lcs_rows(all, m.rows(), m.words(), m.cols());
}

MatchWitness lcs_witness(const MatchMatrix& m) {
  const std::size_t r = m.rows();
  const std::size_t c = m.cols();
  std::vector<std::size_t> table((r + 1) * (c + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::size_t& {
    return table[i * (c + 1) + j];
  };
  for (std::size_t i = 1; i <= r; ++i) {
    for (std::size_t j = 1; j <= c; ++j) {
      std::size_t best = std::max(at(i - 1, j), at(i, j - 1));
      if (m.test(i - 1, j - 1)) best = std::max(best, at(i - 1, j - 1) + 1);
      at(i, j) = best;
    }
  }
  MatchWitness w;
  w.size = at(r, c);
  std::size_t i = r;
  std::size_t j = c;
  while (i > 0 && j > 0) {
    if (m.test(i - 1, j - 1) && at(i, j) == at(i - 1, j - 1) + 1) {
      w.domain.push_back(i - 1);
      w.range.push_back(j - 1);
      --i;
      --j;
    } else if (at(i - 1, j) == at(i, j)) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(w.domain.begin(), w.domain.end());
  std::reverse(w.range.begin(), w.range.end());
  return w;
}

MatchWitness best_match_size(const SystemSpec& sys, const OrbitSegment& ox,
                             const OrbitSegment& oy, double delta, bool with_witness) {
  check_pair(ox, oy);
  if (!(delta > 0.0)) throw UsageError("match needs delta > 0");
  const std::size_t n = ox.size();
  MatchMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (distance(sys, ox[i], oy[j]) < delta) m.set(i, j);
    }
  }
  if (with_witness) return lcs_witness(m);
  MatchWitness w;
  w.size = lcs_length(m);
  return w;
}

double fbar(const SystemSpec& sys, const OrbitSegment& ox, const OrbitSegment& oy,
            double delta) {
  const std::size_t best = best_match_size(sys, ox, oy, delta, false).size;
  return defect_level(ox.size() - best, ox.size());
}

double fbar(const SystemSpec& sys, const State& x, const State& y, std::size_t n,
            double delta) {
  return fbar(sys, orbit_segment(sys, x, n), orbit_segment(sys, y, n), delta);
}

FkDistanceResult fk_distance(const SystemSpec& sys, const OrbitSegment& ox,
                             const OrbitSegment& oy) {
  check_pair(ox, oy);
  for (const State& s : ox.points) check_state(sys, s);
  for (const State& s : oy.points) check_state(sys, s);
  const std::size_t n = ox.size();
  const std::vector<double> d = distance_table(sys, ox, oy);

  FkDistanceResult out;
  out.breakpoints = d;
  for (std::size_t t = 0; t <= n; ++t) out.breakpoints.push_back(defect_level(t, n));
  std::sort(out.breakpoints.begin(), out.breakpoints.end());
  out.breakpoints.erase(std::unique(out.breakpoints.begin(), out.breakpoints.end()),
                        out.breakpoints.end());

  // For delta in (c_k, c_{k+1}] the strict closeness d < delta is d <= c_k.
  std::vector<std::size_t> order(n * n);
  for (std::size_t p = 0; p < order.size(); ++p) order[p] = p;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  MatchMatrix m(n, n);
  std::size_t next = 0;
  bool found = false;
  for (std::size_t k = 0; k < out.breakpoints.size(); ++k) {
    const double c = out.breakpoints[k];
    while (next < order.size() && d[order[next]] <= c) {
      m.set(order[next] / n, order[next] % n);
      ++next;
    }
    const std::size_t size = lcs_length(m);
    out.match_sizes.push_back(size);
    if (found) continue;
    const double v = defect_level(n - size, n);
    const bool last = k + 1 == out.breakpoints.size();
    if (last || v < out.breakpoints[k + 1]) {
      out.value = std::max(c, v);
      found = true;
    }
  }
  return out;
}

FkDistanceResult fk_distance(const SystemSpec& sys, const State& x, const State& y,
                             std::size_t n) {
  if (n == 0) throw UsageError("fk_distance needs n >= 1");
  return fk_distance(sys, orbit_segment(sys, x, n), orbit_segment(sys, y, n));
}

bool fk_within(const SystemSpec& sys, const OrbitSegment& ox, const OrbitSegment& oy,
               double eps) {
  check_pair(ox, oy);
  const std::size_t n = ox.size();
  return within_from_table(distance_table(sys, ox, oy), n, eps, required_match(n, eps));
}

SeparatedSet fk_max_separated_set(const SystemSpec& sys, std::span<const State> pool,
                                  std::size_t n, double epsilon, SetSearch search,
                                  const Potential& f, double scale) {
  check_pool(sys, pool, n, epsilon);
  const Within within(sys, pool, n, epsilon);

  std::vector<std::size_t> chosen;
  if (search == SetSearch::greedy) {
    chosen = greedy_separated(pool.size(), within);
  } else {
    std::vector<double> weights(pool.size());
    std::vector<std::vector<std::size_t>> adjacency(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
      weights[i] = scale * birkhoff_sum(sys, f, pool[i], n);
      for (std::size_t k = i + 1; k < pool.size(); ++k) {
        if (within(i, k)) {
          adjacency[i].push_back(k);
          adjacency[k].push_back(i);
        }
      }
    }
    chosen = exact_max_weight_independent_set(weights, adjacency);
  }
  SeparatedSet out;
  out.n = n;
  out.epsilon = epsilon;
  out.mode = SetMode::separated;
  for (std::size_t i : chosen) out.points.push_back(pool[i]);
  return out;
}

bool fk_is_separated(const SystemSpec& sys, const SeparatedSet& set) {
  std::vector<OrbitSegment> orbits;
  for (const State& x : set.points) orbits.push_back(orbit_segment(sys, x, set.n));
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    for (std::size_t k = i + 1; k < orbits.size(); ++k) {
      if (fk_within(sys, orbits[i], orbits[k], set.epsilon)) return false;
    }
  }
  return true;
}

bool fk_spans(const SystemSpec& sys, const SeparatedSet& set,
              std::span<const State> pool) {
  std::vector<OrbitSegment> members;
  for (const State& x : set.points) members.push_back(orbit_segment(sys, x, set.n));
  for (const State& x : pool) {
    const OrbitSegment orbit = orbit_segment(sys, x, set.n);
    const bool covered = std::any_of(members.begin(), members.end(), [&](const auto& m) {
      return fk_within(sys, orbit, m, set.epsilon);
    });
    if (!covered) return false;
  }
  return true;
}

double fk_sr_sum(const SystemSpec& sys, const Potential& f, std::span<const State> pool,
                 std::size_t n, double epsilon, SetSearch search) {
  f.check_compatible(sys);
  const SeparatedSet set = fk_max_separated_set(sys, pool, n, epsilon, search, f);
  return log_sr_sum(sys, f, set);
}

PressureSeries pfk_series(const SystemSpec& sys, const Potential& f,
                          std::span<const std::size_t> n_range, double epsilon,
                          const PoolBuilder& pool_builder) {
  if (n_range.empty()) throw UsageError("pfk_series needs a nonempty n range");
  f.check_compatible(sys);
  PressureSeries series;
  series.route = Route::fk;
  series.params.epsilon = epsilon;
  for (std::size_t n : n_range) {
    const std::vector<State> pool = pool_builder(sys, n, epsilon);
    PressureSample s;
    s.n = n;
    s.epsilon = epsilon;
    s.log_sum = fk_sr_sum(sys, f, pool, n, epsilon);
    s.per_n = s.log_sum / static_cast<double>(n);
    series.samples.push_back(s);
  }
  series.validate();
  return series;
}

}  // namespace fkp
