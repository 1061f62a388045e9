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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fkp/fkp.hpp"
#include "oracles/generators.hpp"
#include "oracles/oracles.hpp"

namespace {

using namespace fkp;

const double kLog2 = std::log(2.0);
const double kGolden = std::log((1.0 + std::sqrt(5.0)) / 2.0);

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;  // seconds, 0 = none
  std::function<void(Outcome&)> run;
};

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::vector<State> finite_points(const std::vector<std::size_t>& idx) {
  std::vector<State> out;
  for (std::size_t i : idx) out.push_back(FinitePoint{i});
  return out;
}

// log sum over all length-n binary words of exp(S_n f), by direct enumeration.
double word_enumeration_log_sum(std::size_t n, const std::vector<double>& f) {
  LogAccumulator acc;
  for (std::uint64_t w = 0; w < (std::uint64_t{1} << n); ++w) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f[(w >> i) & 1U];
    acc.add(s);
  }
  return acc.value();
}

void criterion1(Outcome& out) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  double worst = 0.0;
  for (const std::vector<double>& table :
       {std::vector<double>{0.0, 0.0}, std::vector<double>{0.0, 1.0}}) {
    const Potential f = table[1] == 0.0 ? Potential::zero() : Potential::symbol_table(table);
    const double exact = table[1] == 0.0 ? kLog2 : std::log(1.0 + std::exp(1.0));
    const PressureSeries s = pressure_series(sys, f, range(4, 12), 0.5, default_pool());
    for (const PressureSample& p : s.samples) {
      const double oracle = word_enumeration_log_sum(p.n, table) / static_cast<double>(p.n);
      worst = std::max({worst, std::abs(p.per_n - exact), std::abs(p.per_n - oracle)});
    }
  }
  out.detail << "max |per_n - oracle| = " << worst;
  out.check(worst < 1e-9, "error >= 1e-9");
}

void criterion2(Outcome& out) {
  const SystemSpec sys = SystemSpec::sft({{1, 1}, {1, 0}});
  const PressureSeries s = pressure_series(sys, Potential::zero(), range(8, 16), 0.5, default_pool());
  const double exact = exact_pressure_sft(sys.transitions(), std::vector<double>{0.0, 0.0});
  const LimitEstimate e = extrapolate(s, 0.5, LimitMethod::difference);
  out.detail << "estimate(" << to_string(e.method) << ") = " << e.value << ", exact = " << exact
             << ", gap = " << std::abs(e.value - exact) << " (tail-mean " << e.tail_mean
             << ", linear-fit " << e.linear_fit_slope << ")";
  out.check(std::abs(e.value - exact) < 1e-2, "gap >= 1e-2");
}

void criterion3(Outcome& out) {
  std::mt19937_64 rng(fkp::gen::kSeed);
  const std::vector<SystemSpec> systems = {SystemSpec::doubling(), SystemSpec::tent(2.0),
                                           SystemSpec::rotation(0.6180339887),
                                           SystemSpec::full_shift(2)};
  std::size_t violations = 0;
  std::size_t checks = 0;
  for (int pair = 0; pair < 1000; ++pair) {
    const SystemSpec& sys = systems[static_cast<std::size_t>(pair) % systems.size()];
    const State x = fkp::gen::random_state(sys, rng, 40);
    const State y = fkp::gen::random_state(sys, rng, 40);
    for (std::size_t n : {2U, 4U, 8U, 16U, 32U}) {
      ++checks;
      if (fk_distance(sys, x, y, n).value > bowen_distance(sys, x, y, n)) ++violations;
    }
  }
  // Separated sums: exact suprema over 16-point pools, and greedy on shift
  // cylinder pools (where the Bowen greedy set is already the maximum).
  std::size_t sum_violations = 0;
  std::size_t configs = 0;
  for (const SystemSpec& sys : systems) {
    const Potential f = sys.is_real() ? Potential::polynomial({0.0, 1.0})
                                      : Potential::symbol_table({0.0, 1.0});
    std::vector<State> pool;
    for (int i = 0; i < 16; ++i) pool.push_back(fkp::gen::random_state(sys, rng));
    for (std::size_t n : {2U, 4U, 8U}) {
      for (double eps : {0.5, 0.25, 0.1}) {
        ++configs;
        const double fk = fk_sr_sum(sys, f, pool, n, eps, SetSearch::exact);
        const double sr =
            log_sr_sum(sys, f, max_separated_set(sys, pool, n, eps, SetSearch::exact, f));
        if (fk > sr + 1e-12) ++sum_violations;
      }
    }
    if (!sys.is_shift()) continue;
    for (std::size_t n : {2U, 4U, 8U}) {
      for (double eps : {0.5, 0.25, 0.125}) {
        ++configs;
        const auto words = cylinder_words(sys, n);
        const std::vector<State> cyl(words.begin(), words.end());
        const double fk = fk_sr_sum(sys, f, cyl, n, eps);
        const double sr = log_sr_sum(sys, f, max_separated_set(sys, cyl, n, eps));
        if (fk > sr + 1e-12) ++sum_violations;
      }
    }
  }
  out.detail << checks << " metric checks, " << violations << " violations; " << configs
             << " sum configurations, " << sum_violations << " violations";
  out.check(violations == 0, "d_FKn > d_n");
  out.check(sum_violations == 0, "FKsr > sr");
}

void criterion4(Outcome& out) {
  std::mt19937_64 rng(fkp::gen::kSeed + 4);
  const std::vector<SystemSpec> systems = {SystemSpec::doubling(), SystemSpec::tent(1.5),
                                           SystemSpec::logistic(3.9), SystemSpec::full_shift(2)};
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::size_t mismatches = 0;
  std::size_t boundary_failures = 0;
  for (int pair = 0; pair < 200; ++pair) {
    const SystemSpec& sys = systems[static_cast<std::size_t>(pair) % systems.size()];
    const std::size_t n = len(rng);
    const OrbitSegment ox = orbit_segment(sys, fkp::gen::random_state(sys, rng), n);
    const OrbitSegment oy = orbit_segment(sys, fkp::gen::random_state(sys, rng), n);
    std::vector<double> ds;
    for (const State& a : ox.points) {
      for (const State& b : oy.points) ds.push_back(distance(sys, a, b));
    }
    std::uniform_int_distribution<std::size_t> pick(0, ds.size() - 1);
    for (double delta : {ds[pick(rng)], ds[pick(rng)] + 1e-9, 0.25}) {
      if (!(delta > 0.0)) continue;
      if (best_match_size(sys, ox, oy, delta, false).size !=
          fkp::oracle::max_match_bruteforce(sys, ox.points, oy.points, delta)) {
        ++mismatches;
      }
    }
    const double v = fk_distance(sys, ox, oy).value;
    const double above = v * (1 + 1e-9) + (v == 0.0 ? 1e-12 : 0.0);
    if (!(fbar(sys, ox, oy, above) < above)) ++boundary_failures;
    if (v > 0.0) {
      const double below = v * (1 - 1e-9);
      if (!(fbar(sys, ox, oy, below) >= below)) ++boundary_failures;
    }
  }
  out.detail << "200 pairs: " << mismatches << " match mismatches, " << boundary_failures
             << " boundary failures";
  out.check(mismatches == 0, "match size differs from enumeration");
  out.check(boundary_failures == 0, "feasibility boundary");
}

void criterion5(Outcome& out) {
  const SystemSpec sys = SystemSpec::full_shift(2);
  const std::vector<std::size_t> ns = {14};
  double prev = -1.0;
  bool monotone = true;
  double last = 0.0;
  for (int k = 3; k <= 6; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const PressureSeries s = pfk_series(sys, Potential::zero(), ns, eps, default_pool());
    last = s.samples[0].per_n;
    out.detail << "eps=2^-" << k << ": " << last << "; ";
    monotone = monotone && last >= prev - 1e-12;
    prev = last;
  }
  out.detail << "|per_n - log 2| = " << std::abs(last - kLog2);
  out.check(std::abs(last - kLog2) < 0.1, "not within 0.1 of log 2");
  out.check(monotone, "decreases as eps halves");
}

void criterion6(Outcome& out) {
  const SystemSpec sys = SystemSpec::doubling();
  const EpsilonNet net = build_net(sys, 1.0 / 256);
  const EpsilonNet cells = partition_net(sys, 0.5);
  const std::size_t n = 10;
  const double itinerary_rate =
      std::log(static_cast<double>(fkp::oracle::doubling_itineraries(n))) / static_cast<double>(n);
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    const TransitionGraph g = build_po_graph(sys, net, alpha, Potential::zero());
    const CoarseWordCount c = count_coarse_words(sys, g, cells, n, Potential::zero());
    const double rate = c.log_count / static_cast<double>(n);
    out.detail << "alpha=" << alpha << ": " << rate << " (spectral " << spectral_log_growth(g)
               << "); ";
    out.check(std::abs(rate - kLog2) <= 0.15, "not within 0.15 of log 2");
    out.check(rate <= prev + 1e-12, "increases as alpha halves");
    out.check(rate >= itinerary_rate - 1e-12, "below itinerary rate");
    prev = rate;
  }
  out.detail << "itinerary rate " << itinerary_rate;
}

void criterion7(Outcome& out) {
  std::mt19937_64 rng(fkp::gen::kSeed + 7);
  std::uniform_int_distribution<std::size_t> size(1, 12);
  std::uniform_real_distribution<double> density(0.1, 0.6);
  std::size_t mismatches = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix01 a = fkp::gen::random_adjacency(size(rng), density(rng), rng);
    const TransitionGraph g = TransitionGraph::from_adjacency(a);
    for (std::size_t n = 1; n <= 8; ++n) {
      const std::uint64_t walks = fkp::oracle::closed_walks_bruteforce(a, n);
      if (closed_path_count(g, n) != walks) ++mismatches;
      const double lg = count_periodic_po(g, n);
      const bool ok = walks == 0 ? lg == kNegInf
                                 : std::abs(lg - std::log(static_cast<double>(walks))) < 1e-9;
      if (!ok) ++mismatches;
    }
  }
  out.detail << "50 graphs x 8 lengths: " << mismatches << " mismatches";
  out.check(mismatches == 0, "trace differs from enumeration");
}

void criterion8(Outcome& out) {
  std::mt19937_64 rng(fkp::gen::kSeed + 8);
  std::size_t failures = 0;
  auto fail = [&](const std::string& what) {
    ++failures;
    out.check(false, what);
  };

  struct Instance {
    SystemSpec sys;
    std::size_t n;
    std::size_t tail;
    std::size_t n_delta;
  };
  std::vector<Instance> instances = {
      {SystemSpec::finite({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, {1, 2, 0}), 4, 6, 5}};
  for (std::size_t points : {4U, 5U}) {
    instances.push_back({fkp::gen::random_finite_system(points, rng), 3, 5, 4});
  }
  std::size_t members_checked = 0;
  for (const Instance& inst : instances) {
    const SystemSpec& sys = inst.sys;
    const std::size_t k = static_cast<std::size_t>(sys.symbols());
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> table(k);
    for (double& v : table) v = u(rng);
    const Potential f = Potential::symbol_table(table);
    const double eps = 0.5;
    std::vector<std::set<std::vector<std::size_t>>> by_alpha;
    const std::vector<double> alphas = {0.5, 1.3, 1.7};
    for (double alpha : alphas) {
      const FkpoParams p{alpha, 0.4, inst.n_delta};
      const FkpoBruteForce r = fkpo_sr_bruteforce(sys, f, inst.n, eps, p, inst.tail);
      by_alpha.emplace_back(r.members.begin(), r.members.end());
      // FKPOsr >= sr.
      std::vector<std::size_t> all(k);
      for (std::size_t i = 0; i < k; ++i) all[i] = i;
      const std::vector<State> pool = finite_points(all);
      const double sr = log_sr_sum(
          sys, f, max_separated_set(sys, pool, inst.n, eps, SetSearch::exact, f));
      if (r.log_sum < sr - 1e-12) fail("FKPOsr < sr");
      // Shift stability.
      for (const auto& m : r.members) {
        ++members_checked;
        const std::vector<State> shifted = shift_sequence(finite_points(m));
        if (!is_fkpo_prefix(sys, shifted, p, false).member) {
          fail("shifted member rejected");
          break;
        }
      }
      // PO within FKPO: every classical pseudo-orbit of the same length.
      const std::size_t len = inst.n + inst.tail;
      std::vector<std::size_t> idx(len, 0);
      bool done = false;
      while (!done) {
        const std::vector<State> seq = finite_points(idx);
        if (is_pseudo_chain(sys, seq, alpha) && !by_alpha.back().contains(idx)) {
          fail("pseudo-orbit not a member");
          break;
        }
        std::size_t pos = 0;
        while (pos < len && ++idx[pos] == k) idx[pos++] = 0;
        done = pos == len;
      }
    }
    for (std::size_t a = 0; a + 1 < by_alpha.size(); ++a) {
      for (const auto& m : by_alpha[a]) {
        if (!by_alpha[a + 1].contains(m)) {
          fail("membership not monotone in alpha");
          break;
        }
      }
    }
  }

  // The interleaved doubling sequence.
  {
    const SystemSpec sys = SystemSpec::doubling();
    std::vector<State> seq;
    for (std::size_t i = 0; i < 12; ++i) {
      seq.push_back(i % 2 == 1 ? State{0.9} : fkp::oracle::iterate(sys, 0.1, i));
    }
    const FkpoParams p{0.01, 0.6, 4};
    const FkpoResult r = is_fkpo_prefix(sys, seq, p);
    if (!r.member || !verify_fkpo_witness(sys, seq, p, *r.witness)) {
      fail("interleaved sequence rejected");
    }
    if (is_pseudo_chain(sys, seq, 0.01)) fail("interleaved sequence is a pseudo-orbit");
  }

  // Chain DP against exhaustive search.
  std::uniform_int_distribution<std::size_t> len(1, 6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t chain_mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const SystemSpec& sys = instances[static_cast<std::size_t>(trial) % instances.size()].sys;
    const std::size_t n = len(rng);
    std::vector<State> seq = orbit_segment(sys, fkp::gen::random_state(sys, rng), n).points;
    for (State& x : seq) {
      if (u(rng) < 0.4) x = fkp::gen::random_state(sys, rng);
    }
    const double alpha = 0.5 + 1.5 * u(rng);
    const ChainWitness w = longest_chain(sys, seq, alpha);
    if (w.k != fkp::oracle::longest_chain_bruteforce(sys, seq, alpha) ||
        !verify_chain(sys, seq, alpha, w)) {
      ++chain_mismatches;
    }
  }
  if (chain_mismatches > 0) fail("chain DP differs from enumeration");
  out.detail << instances.size() << " systems, " << members_checked
             << " member shifts checked, " << chain_mismatches << "/200 chain mismatches, "
             << failures << " failures";
}

void criterion9(Outcome& out) {
  // Constant-one scale reproduces the unscaled routes bitwise.
  std::size_t differences = 0;
  const std::vector<std::pair<SystemSpec, Potential>> cases = {
      {SystemSpec::sft({{1, 1}, {1, 0}}), Potential::zero()},
      {SystemSpec::full_shift(2), Potential::symbol_table({0.0, 1.0})},
      {SystemSpec::doubling(), Potential::polynomial({0.0, 1.0})}};
  for (const auto& [sys, f] : cases) {
    ScaledGrid grid;
    grid.n_values = {4, 6, 8, 10};
    grid.epsilon = 0.125;
    const PressureSeries scaled =
        scaled_pressure_series(sys, f, ScaleFunction::constant_one(), ScaledMode::direct, grid);
    const PressureSeries plain =
        pressure_series(sys, f, grid.n_values, grid.epsilon, default_pool());
    for (std::size_t i = 0; i < plain.samples.size(); ++i) {
      if (scaled.samples[i].per_n != plain.samples[i].per_n) ++differences;
    }
  }
  {
    const SystemSpec sys = SystemSpec::doubling();
    const Potential f = Potential::polynomial({0.0, 1.0});
    ScaledGrid grid;
    grid.n_values = {4, 6, 8};
    grid.epsilon = 0.25;
    grid.alpha = 1.0 / 32;
    grid.net_resolution = 1.0 / 64;
    const PressureSeries scaled =
        scaled_pressure_series(sys, f, ScaleFunction::constant_one(), ScaledMode::po, grid);
    const TransitionGraph g = build_po_graph(sys, build_net(sys, 1.0 / 64), 1.0 / 32, f);
    for (const PressureSample& p : scaled.samples) {
      const CoarseWordCount c = count_coarse_words(sys, g, partition_net(sys, 0.25), p.n, f);
      if (p.per_n != c.log_weighted / static_cast<double>(p.n)) ++differences;
    }
  }
  out.detail << "constant-one: " << differences << " non-identical samples; ";
  out.check(differences == 0, "constant-one differs from unscaled");

  const SystemSpec golden = SystemSpec::sft({{1, 1}, {1, 0}});
  ScaledGrid grid;
  grid.n_values = range(8, 16);
  grid.epsilon = std::ldexp(1.0, -8);
  const ScaleFunction s = ScaleFunction::log_reciprocal();
  const PressureSeries series =
      scaled_pressure_series(golden, Potential::zero(), s, ScaledMode::direct, grid);
  const LimitEstimate e = extrapolate(series, 0.5, LimitMethod::difference);
  const double at16 = series.samples.back().per_n;
  out.detail << "golden log-scale Sdim estimate(" << to_string(e.method) << ") = " << e.value
             << ", per_n(16) = " << at16 << ", S(eps) = " << s(grid.epsilon)
             << ", target " << kGolden << ", gap " << std::abs(e.value - kGolden);
  out.check(std::abs(e.value - kGolden) <= 0.05, "golden log-scale estimate not within 0.05");
}

void criterion10(Outcome& out) {
  const SystemSpec sys = SystemSpec::rotation(0.6180339887);
  const Potential f = Potential::zero();
  const std::vector<std::size_t> ns = {64, 96, 128, 192, 256};
  const double eps = 0.1;
  auto report = [&](const std::string& route, const PressureSeries& s) {
    const LimitEstimate e = extrapolate(s, 0.5);
    out.detail << route << "=" << e.value << "; ";
    out.check(std::abs(e.value) <= 0.05, route + " estimate above 0.05");
  };
  report("bowen", pressure_series(sys, f, ns, eps, default_pool()));
  report("fk", pfk_series(sys, f, ns, eps, default_pool()));

  ScaledGrid po;
  po.n_values = ns;
  po.epsilon = eps;
  po.alpha = 1.0 / 4096;
  po.net_resolution = 1.0 / 4096;
  po.partition_resolution = 0.5;
  report("po", scaled_pressure_series(sys, f, ScaleFunction::constant_one(), ScaledMode::po, po));

  ScaledGrid ppo;
  ppo.n_values = {128, 256, 384};
  ppo.epsilon = eps;
  ppo.alpha = 1.0 / 512;
  ppo.net_resolution = 1.0 / 512;
  const PressureSeries periodic =
      scaled_pressure_series(sys, f, ScaleFunction::constant_one(), ScaledMode::ppo, ppo);
  if (periodic.samples.size() >= 3) {
    report("ppo", periodic);
  } else {
    out.detail << "ppo: " << periodic.samples.size() << " samples; ";
    out.check(false, "ppo series too short");
  }

  ScaledGrid direct;
  direct.n_values = ns;
  direct.epsilon = eps;
  report("scaled-log",
         scaled_pressure_series(sys, f, ScaleFunction::log_reciprocal(), ScaledMode::direct, direct));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "bowen exactness on shifts", 5.0, criterion1},
      {2, "sft oracle agreement", 10.0, criterion2},
      {3, "fk below bowen", 0.0, criterion3},
      {4, "fk match dp oracle", 0.0, criterion4},
      {5, "fk pressure convergence", 60.0, criterion5},
      {6, "pseudo-orbit word counting", 0.0, criterion6},
      {7, "periodic pseudo-orbits", 0.0, criterion7},
      {8, "fkpo structure suite", 120.0, criterion8},
      {9, "scaled pressure reductions", 0.0, criterion9},
      {10, "zero-entropy control", 0.0, criterion10},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(out);
    } catch (const std::exception& e) {
      out.check(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit) {
      out.check(false, "runtime limit " + std::to_string(c.time_limit) + " s");
    }
    if (!out.pass) ++failed;
    std::printf("%s criterion %d (%s): %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), out.detail.str().c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("acceptance: %zu of %zu criteria passed\n", criteria.size() - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
