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

#include "fkp/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "fkp/errors.hpp"

namespace fkp {

namespace {

std::string format_real(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const double& as_real(const SystemSpec& sys, const State& x) {
  const auto* v = std::get_if<double>(&x);
  if (v == nullptr) {
    throw DomainError(sys.name() + ": expected a real coordinate, got " +
                      to_string(x));
  }
  return *v;
}

const Word& as_word(const SystemSpec& sys, const State& x) {
  const auto* w = std::get_if<Word>(&x);
  if (w == nullptr) {
    throw DomainError(sys.name() + ": expected a word, got " + to_string(x));
  }
  return *w;
}

std::size_t as_index(const SystemSpec& sys, const State& x) {
  const auto* p = std::get_if<FinitePoint>(&x);
  if (p == nullptr) {
    throw DomainError(sys.name() + ": expected a finite point, got " +
                      to_string(x));
  }
  return p->index;
}

}  // namespace

Word::Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  while (!symbols_.empty() && symbols_.back() == 0) symbols_.pop_back();
}

Word Word::shifted() const {
  if (symbols_.empty()) return Word{};
  return Word(std::vector<Symbol>(symbols_.begin() + 1, symbols_.end()));
}

std::string to_string(const State& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_real(v);
        } else if constexpr (std::is_same_v<T, Word>) {
          std::string out;
          for (Symbol c : v.symbols()) out += std::to_string(int{c});
          return out + "0...";
        } else {
          return "#" + std::to_string(v.index);
        }
      },
      s);
}

SystemSpec SystemSpec::doubling() {
  SystemSpec s;
  s.space_ = SpaceKind::circle;
  s.map_ = MapKind::doubling;
  return s;
}

SystemSpec SystemSpec::rotation(double theta) {
  if (!std::isfinite(theta)) throw UsageError("rotation angle must be finite");
  SystemSpec s;
  s.space_ = SpaceKind::circle;
  s.map_ = MapKind::rotation;
  s.parameter_ = theta - std::floor(theta);
  return s;
}

SystemSpec SystemSpec::tent(double slope) {
  if (!(slope > 0.0 && slope <= 2.0)) {
    throw UsageError("tent slope must lie in (0, 2]");
  }
  SystemSpec s;
  s.space_ = SpaceKind::interval;
  s.map_ = MapKind::tent;
  s.parameter_ = slope;
  return s;
}

SystemSpec SystemSpec::logistic(double r) {
  if (!(r > 0.0 && r <= 4.0)) {
    throw UsageError("logistic parameter must lie in (0, 4]");
  }
  SystemSpec s;
  s.space_ = SpaceKind::interval;
  s.map_ = MapKind::logistic;
  s.parameter_ = r;
  return s;
}

SystemSpec SystemSpec::full_shift(int symbols) {
  if (symbols < 1 || symbols > 255) {
    throw UsageError("full shift needs between 1 and 255 symbols");
  }
  SystemSpec s;
  s.space_ = SpaceKind::full_shift;
  s.map_ = MapKind::shift;
  s.symbols_ = symbols;
  s.transitions_.assign(static_cast<std::size_t>(symbols),
                        std::vector<int>(static_cast<std::size_t>(symbols), 1));
  return s;
}

SystemSpec SystemSpec::sft(Matrix01 transitions) {
  const std::size_t k = transitions.size();
  if (k == 0 || k > 255) throw UsageError("SFT matrix must be 1x1 .. 255x255");
  for (const auto& row : transitions) {
    if (row.size() != k) throw UsageError("SFT matrix must be square");
    for (int a : row) {
      if (a != 0 && a != 1) throw UsageError("SFT matrix entries must be 0/1");
    }
  }
  SystemSpec s;
  s.space_ = SpaceKind::sft;
  s.map_ = MapKind::shift;
  s.symbols_ = static_cast<int>(k);
  s.transitions_ = std::move(transitions);
  return s;
}

SystemSpec SystemSpec::finite(DistanceTable distances,
                              std::vector<std::size_t> map) {
  const std::size_t k = distances.size();
  if (k == 0) throw UsageError("finite space needs at least one point");
  if (map.size() != k) throw UsageError("map table size must match distances");
  for (const auto& row : distances) {
    if (row.size() != k) throw UsageError("distance table must be square");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (map[i] >= k) throw UsageError("map table entry out of range");
    if (distances[i][i] != 0.0) throw UsageError("distance table diagonal must be 0");
    for (std::size_t j = 0; j < k; ++j) {
      const double d = distances[i][j];
      if (!std::isfinite(d) || d < 0.0) {
        throw UsageError("distances must be finite and non-negative");
      }
      if (i != j && d == 0.0) {
        throw UsageError("distinct points must have positive distance");
      }
      if (d != distances[j][i]) throw UsageError("distance table must be symmetric");
      for (std::size_t m = 0; m < k; ++m) {
        if (d > distances[i][m] + distances[m][j] + 1e-12) {
          throw UsageError("distance table violates the triangle inequality");
        }
      }
    }
  }
  SystemSpec s;
  s.space_ = SpaceKind::finite;
  s.map_ = MapKind::table;
  s.symbols_ = static_cast<int>(k);
  s.distances_ = std::move(distances);
  s.map_table_ = std::move(map);
  return s;
}

double SystemSpec::diameter() const {
  switch (space_) {
    case SpaceKind::circle:
      return 0.5;
    case SpaceKind::interval:
      return 1.0;
    case SpaceKind::full_shift:
    case SpaceKind::sft:
      return symbols_ > 1 ? 1.0 : 0.0;
    case SpaceKind::finite: {
      double best = 0.0;
      for (const auto& row : distances_) {
        best = std::max(best, *std::max_element(row.begin(), row.end()));
      }
      return best;
    }
  }
  return 0.0;
}

double SystemSpec::expansion_bound() const {
  switch (map_) {
    case MapKind::doubling:
    case MapKind::shift:
      return 2.0;
    case MapKind::rotation:
      return 1.0;
    case MapKind::tent:
    case MapKind::logistic:
      return parameter_;
    case MapKind::table: {
      double best = 0.0;
      const std::size_t k = distances_.size();
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
          best = std::max(best, distances_[map_table_[i]][map_table_[j]] /
                                    distances_[i][j]);
        }
      }
      return best;
    }
  }
  return 1.0;
}

std::string SystemSpec::name() const {
  switch (map_) {
    case MapKind::doubling:
      return "doubling";
    case MapKind::rotation:
      return "rotation(" + format_real(parameter_) + ")";
    case MapKind::tent:
      return "tent(" + format_real(parameter_) + ")";
    case MapKind::logistic:
      return "logistic(" + format_real(parameter_) + ")";
    case MapKind::shift:
      return (space_ == SpaceKind::full_shift ? "full_shift(" : "sft(") +
             std::to_string(symbols_) + ")";
    case MapKind::table:
      return "finite(" + std::to_string(symbols_) + ")";
  }
  return "system";
}

void check_state(const SystemSpec& sys, const State& x) {
  switch (sys.space()) {
    case SpaceKind::circle: {
      const double v = as_real(sys, x);
      if (!(v >= 0.0 && v < 1.0)) {
        throw DomainError(sys.name() + ": " + format_real(v) +
                          " is not in the circle [0,1)");
      }
      return;
    }
    case SpaceKind::interval: {
      const double v = as_real(sys, x);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError(sys.name() + ": " + format_real(v) +
                          " is not in the interval [0,1]");
      }
      return;
    }
    case SpaceKind::full_shift:
    case SpaceKind::sft: {
      const Word& w = as_word(sys, x);
      const auto& syms = w.symbols();
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (syms[i] >= sys.symbols()) {
          throw DomainError(sys.name() + ": symbol out of range in " +
                            to_string(x));
        }
        if (i > 0 && sys.transitions()[syms[i - 1]][syms[i]] == 0) {
          throw DomainError(sys.name() + ": forbidden transition at position " +
                            std::to_string(i) + " in " + to_string(x));
        }
      }
      return;
    }
    case SpaceKind::finite:
      if (as_index(sys, x) >= static_cast<std::size_t>(sys.symbols())) {
        throw DomainError(sys.name() + ": point index out of range");
      }
      return;
  }
}

State evaluate_map(const SystemSpec& sys, const State& x) {
  check_state(sys, x);
  return evaluate_map_unchecked(sys, x);
}

State evaluate_map_unchecked(const SystemSpec& sys, const State& x) {
  switch (sys.map()) {
    case MapKind::doubling: {
      double y = 2.0 * std::get<double>(x);
      if (y >= 1.0) y -= 1.0;
      return y;
    }
    case MapKind::rotation: {
      double y = std::get<double>(x) + sys.parameter();
      if (y >= 1.0) y -= 1.0;
      return y;
    }
    case MapKind::tent: {
      const double v = std::get<double>(x);
      return sys.parameter() * std::min(v, 1.0 - v);
    }
    case MapKind::logistic: {
      const double v = std::get<double>(x);
      return sys.parameter() * v * (1.0 - v);
    }
    case MapKind::shift:
      return std::get<Word>(x).shifted();
    case MapKind::table:
      return FinitePoint{sys.map_table()[std::get<FinitePoint>(x).index]};
  }
  return x;
}

std::size_t first_disagreement(const Word& u, const Word& v) {
  const std::size_t len = std::max(u.length(), v.length());
  for (std::size_t i = 0; i < len; ++i) {
    if (u.at(i) != v.at(i)) return i;
  }
  return std::numeric_limits<std::size_t>::max();
}

std::size_t agreement_length(double eps) {
  if (!(eps > 0.0)) throw UsageError("agreement_length needs eps > 0");
  std::size_t m = 0;
  while (std::ldexp(1.0, -static_cast<int>(m)) > eps) ++m;
  return m;
}

double distance(const SystemSpec& sys, const State& x, const State& y) {
  check_state(sys, x);
  check_state(sys, y);
  return distance_unchecked(sys, x, y);
}

double distance_unchecked(const SystemSpec& sys, const State& x, const State& y) {
  switch (sys.space()) {
    case SpaceKind::circle: {
      const double a = std::abs(std::get<double>(x) - std::get<double>(y));
      return std::min(a, 1.0 - a);
    }
    case SpaceKind::interval:
      return std::abs(std::get<double>(x) - std::get<double>(y));
    case SpaceKind::full_shift:
    case SpaceKind::sft: {
      const std::size_t m =
          first_disagreement(std::get<Word>(x), std::get<Word>(y));
      if (m == std::numeric_limits<std::size_t>::max()) return 0.0;
      return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(m, 1074)));
    }
    case SpaceKind::finite:
      return sys.distances()[std::get<FinitePoint>(x).index]
                            [std::get<FinitePoint>(y).index];
  }
  return 0.0;
}

OrbitSegment orbit_segment(const SystemSpec& sys, const State& x,
                           std::size_t n) {
  if (n == 0) throw UsageError("orbit_segment needs n >= 1");
  check_state(sys, x);
  OrbitSegment seg;
  seg.points.reserve(n);
  seg.points.push_back(x);
  for (std::size_t i = 1; i < n; ++i) {
    seg.points.push_back(evaluate_map_unchecked(sys, seg.points.back()));
  }
  seg.genuine = true;
  return seg;
}

OrbitSegment make_segment(const SystemSpec& sys, std::vector<State> points) {
  if (points.empty()) throw UsageError("a segment needs at least one point");
  OrbitSegment seg;
  seg.genuine = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    check_state(sys, points[i]);
    if (i == 0) continue;
    const State image = evaluate_map(sys, points[i - 1]);
    const bool step_ok = sys.is_discrete()
                             ? image == points[i]
                             : distance(sys, image, points[i]) <= kGenuineTolerance;
    if (!step_ok) seg.genuine = false;
  }
  seg.points = std::move(points);
  return seg;
}

Potential Potential::zero() { return Potential{}; }

Potential Potential::symbol_table(std::vector<double> values) {
  if (values.empty()) throw UsageError("symbol table potential needs values");
  for (double v : values) {
    if (!std::isfinite(v)) throw UsageError("potential values must be finite");
  }
  Potential p;
  p.kind_ = Kind::symbol_table;
  p.values_ = std::move(values);
  return p;
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  for (double v : coefficients) {
    if (!std::isfinite(v)) throw UsageError("polynomial coefficients must be finite");
  }
  Potential p;
  p.kind_ = Kind::polynomial;
  p.values_ = std::move(coefficients);
  return p;
}

bool Potential::is_zero() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == 0.0; });
}

void Potential::check_compatible(const SystemSpec& sys) const {
  switch (kind_) {
    case Kind::zero:
      return;
    case Kind::symbol_table:
      if (sys.is_real()) {
        throw DomainError("symbol table potential needs a shift or finite system");
      }
      if (values_.size() < static_cast<std::size_t>(sys.symbols())) {
        throw DomainError("symbol table potential has " +
                          std::to_string(values_.size()) + " values for " +
                          std::to_string(sys.symbols()) + " symbols/points");
      }
      return;
    case Kind::polynomial:
      if (!sys.is_real()) {
        throw DomainError("polynomial potential needs a circle/interval system");
      }
      return;
  }
}

double Potential::operator()(const SystemSpec& sys, const State& x) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::symbol_table: {
      if (const auto* w = std::get_if<Word>(&x)) {
        const Symbol s = w->at(0);
        if (s >= values_.size()) throw DomainError("symbol has no potential value");
        return values_[s];
      }
      if (const auto* p = std::get_if<FinitePoint>(&x)) {
        if (p->index >= values_.size()) {
          throw DomainError("point has no potential value");
        }
        return values_[p->index];
      }
      throw DomainError(sys.name() + ": symbol table potential on a real state");
    }
    case Kind::polynomial: {
      const double v = as_real(sys, x);
      double acc = 0.0;
      for (auto it = values_.rbegin(); it != values_.rend(); ++it) {
        acc = acc * v + *it;
      }
      return acc;
    }
  }
  return 0.0;
}

double Potential::sup_norm(const SystemSpec& sys) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::symbol_table: {
      double best = 0.0;
      for (int i = 0; i < sys.symbols(); ++i) {
        best = std::max(best, std::abs(values_[static_cast<std::size_t>(i)]));
      }
      return best;
    }
    case Kind::polynomial: {
      // Dense sampling; exact enough for reporting purposes.
      constexpr int kSamples = 10000;
      const int last = sys.space() == SpaceKind::interval ? kSamples : kSamples - 1;
      double best = 0.0;
      for (int i = 0; i <= last; ++i) {
        const double x = static_cast<double>(i) / kSamples;
        best = std::max(best, std::abs((*this)(sys, State{x})));
      }
      return best;
    }
  }
  return 0.0;
}

double Potential::modulus(const SystemSpec& sys, double eps) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::symbol_table: {
      if (sys.is_shift()) {
        // Points within distance < 1 share their first symbol.
        if (eps < 1.0) return 0.0;
        const auto first = values_.begin();
        const auto last = first + sys.symbols();
        return *std::max_element(first, last) - *std::min_element(first, last);
      }
      double best = 0.0;
      const auto k = static_cast<std::size_t>(sys.symbols());
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          if (sys.distances()[i][j] <= eps) {
            best = std::max(best, std::abs(values_[i] - values_[j]));
          }
        }
      }
      return best;
    }
    case Kind::polynomial: {
      double lipschitz = 0.0;
      for (std::size_t i = 1; i < values_.size(); ++i) {
        lipschitz += static_cast<double>(i) * std::abs(values_[i]);
      }
      double bound = lipschitz * eps;
      if (sys.space() == SpaceKind::circle) {
        // The coordinate jumps at 0 ~ 1.
        double at_one = 0.0;
        for (double c : values_) at_one += c;
        const double at_zero = values_.empty() ? 0.0 : values_.front();
        bound += std::abs(at_one - at_zero);
      }
      return bound;
    }
  }
  return 0.0;
}

std::string Potential::describe() const {
  std::string out;
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::symbol_table:
      out = "symbol[";
      break;
    case Kind::polynomial:
      out = "polynomial[";
      break;
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i > 0) out += ",";
    out += format_real(values_[i]);
  }
  return out + "]";
}

double birkhoff_sum(const SystemSpec& sys, const Potential& f, const State& x,
                    std::size_t n) {
  if (n == 0) throw UsageError("birkhoff_sum needs n >= 1");
  return birkhoff_sum(sys, f, orbit_segment(sys, x, n));
}

double birkhoff_sum(const SystemSpec& sys, const Potential& f,
                    const OrbitSegment& orbit) {
  double sum = 0.0;
  for (const State& p : orbit.points) sum += f(sys, p);
  return sum;
}

std::vector<Word> cylinder_words(const SystemSpec& sys, std::size_t length,
                                 std::size_t cap) {
  if (!sys.is_shift()) throw UsageError("cylinder words need a shift system");
  const auto k = static_cast<Symbol>(sys.symbols());
  std::vector<Word> out;
  std::vector<Symbol> prefix;
  prefix.reserve(length);
  // Iterative DFS in lexicographic order over admissible words.
  auto allowed = [&](Symbol next) {
    return prefix.empty() || sys.transitions()[prefix.back()][next] != 0;
  };
  std::vector<Symbol> next_symbol{0};
  if (length == 0) return {Word{}};
  while (!next_symbol.empty()) {
    Symbol& cand = next_symbol.back();
    if (cand >= k) {
      next_symbol.pop_back();
      if (!prefix.empty()) prefix.pop_back();
      continue;
    }
    const Symbol s = cand++;
    if (!allowed(s)) continue;
    prefix.push_back(s);
    if (prefix.size() == length) {
      if (out.size() >= cap) {
        throw ResourceError("cylinder enumeration exceeds cap of " +
                                std::to_string(cap) + " words",
                            out.size());
      }
      out.emplace_back(prefix);
      prefix.pop_back();
    } else {
      next_symbol.push_back(0);
    }
  }
  return out;
}

EpsilonNet build_net(const SystemSpec& sys, double resolution, std::size_t cap) {
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw UsageError("net resolution must be positive");
  }
  EpsilonNet net;
  net.resolution = resolution;
  switch (sys.space()) {
    case SpaceKind::circle:
    case SpaceKind::interval: {
      const double cells = std::ceil(1.0 / resolution);
      const double count = sys.space() == SpaceKind::circle ? cells : cells + 1.0;
      if (count > static_cast<double>(cap)) {
        throw ResourceError("net of " + format_real(count) +
                                " points exceeds cap of " + std::to_string(cap),
                            0);
      }
      const auto n = static_cast<std::size_t>(cells);
      const auto total = static_cast<std::size_t>(count);
      net.points.reserve(total);
      for (std::size_t i = 0; i < total; ++i) {
        net.points.emplace_back(static_cast<double>(i) / static_cast<double>(n));
      }
      return net;
    }
    case SpaceKind::full_shift:
    case SpaceKind::sft: {
      std::size_t m = 0;
      while (std::ldexp(1.0, -static_cast<int>(m)) >= resolution) ++m;
      for (Word& w : cylinder_words(sys, m, cap)) net.points.emplace_back(std::move(w));
      return net;
    }
    case SpaceKind::finite:
      for (int i = 0; i < sys.symbols(); ++i) {
        net.points.emplace_back(FinitePoint{static_cast<std::size_t>(i)});
      }
      return net;
  }
  return net;
}

std::size_t nearest_point(const SystemSpec& sys, const EpsilonNet& net,
                          const State& x) {
  if (net.points.empty()) throw UsageError("nearest_point on an empty net");
  std::size_t best = 0;
  double best_d = distance(sys, x, net.points[0]);
  for (std::size_t i = 1; i < net.points.size(); ++i) {
    const double d = distance(sys, x, net.points[i]);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace fkp
