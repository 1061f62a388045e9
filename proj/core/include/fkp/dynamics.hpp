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

// State spaces, maps, metrics, potentials and finite nets.
//
// Every system is one of a closed family: the doubling map and rigid rotations
// on the circle [0,1) with the arc metric, tent and logistic maps on [0,1]
// with |x - y|, the left shift on a full shift or a subshift of finite type
// with d(u,v) = 2^{-m} (m the first index where u and v disagree), and finite
// metric spaces given by a distance table and a map table.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fkp {

using Symbol = std::uint8_t;

/// A point of a shift space: finitely many explicit symbols followed by an
/// implicit all-zero tail. Trailing zeros are trimmed so equal points compare
/// equal.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols);

  /// Symbol at position i; 0 past the explicit prefix.
  Symbol at(std::size_t i) const {
    return i < symbols_.size() ? symbols_[i] : Symbol{0};
  }
  /// Number of explicit symbols (after trimming).
  std::size_t length() const { return symbols_.size(); }
  const std::vector<Symbol>& symbols() const { return symbols_; }

  /// The left shift: drops the first symbol.
  Word shifted() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// A point of a finite metric space, by index into its tables.
struct FinitePoint {
  std::size_t index = 0;
  friend bool operator==(const FinitePoint&, const FinitePoint&) = default;
  friend auto operator<=>(const FinitePoint&, const FinitePoint&) = default;
};

/// Real coordinate for circle/interval systems, a word for shifts, an index
/// for finite spaces.
using State = std::variant<double, Word, FinitePoint>;

std::string to_string(const State& s);

enum class SpaceKind { circle, interval, full_shift, sft, finite };
enum class MapKind { doubling, tent, logistic, rotation, shift, table };

using Matrix01 = std::vector<std::vector<int>>;
using DistanceTable = std::vector<std::vector<double>>;

/// A compact metric space together with a continuous self-map.
class SystemSpec {
 public:
  static SystemSpec doubling();
  static SystemSpec rotation(double theta);
  /// x -> slope * min(x, 1 - x); requires 0 < slope <= 2.
  static SystemSpec tent(double slope);
  /// x -> r x (1 - x); requires 0 < r <= 4.
  static SystemSpec logistic(double r);
  static SystemSpec full_shift(int symbols);
  /// Subshift of finite type; `transitions[a][b] == 1` allows b after a.
  static SystemSpec sft(Matrix01 transitions);
  /// Finite metric space. The distance table must be a metric; `map[i]` is
  /// the image of point i.
  static SystemSpec finite(DistanceTable distances, std::vector<std::size_t> map);

  SpaceKind space() const { return space_; }
  MapKind map() const { return map_; }
  /// theta, slope or r for the parameterized real maps; 0 otherwise.
  double parameter() const { return parameter_; }
  /// Alphabet size for shifts, number of points for finite spaces.
  int symbols() const { return symbols_; }
  const Matrix01& transitions() const { return transitions_; }
  const DistanceTable& distances() const { return distances_; }
  const std::vector<std::size_t>& map_table() const { return map_table_; }

  bool is_shift() const {
    return space_ == SpaceKind::full_shift || space_ == SpaceKind::sft;
  }
  bool is_real() const {
    return space_ == SpaceKind::circle || space_ == SpaceKind::interval;
  }
  bool is_finite() const { return space_ == SpaceKind::finite; }
  /// Exact arithmetic (shifts and finite spaces).
  bool is_discrete() const { return !is_real(); }

  double diameter() const;
  /// L with d(Tx, Ty) <= L d(x, y) (2 for shifts; the largest ratio over
  /// point pairs for finite spaces).
  double expansion_bound() const;

  std::string name() const;

 private:
  SystemSpec() = default;

  SpaceKind space_ = SpaceKind::circle;
  MapKind map_ = MapKind::doubling;
  double parameter_ = 0.0;
  int symbols_ = 0;
  Matrix01 transitions_;
  DistanceTable distances_;
  std::vector<std::size_t> map_table_;
};

/// Throws DomainError unless x belongs to the space of sys.
void check_state(const SystemSpec& sys, const State& x);

State evaluate_map(const SystemSpec& sys, const State& x);

double distance(const SystemSpec& sys, const State& x, const State& y);

/// The same operations without domain checks, for inner loops over states
/// that were already validated.
State evaluate_map_unchecked(const SystemSpec& sys, const State& x);
double distance_unchecked(const SystemSpec& sys, const State& x, const State& y);

/// Index of the first disagreement between two words (SIZE_MAX if equal).
std::size_t first_disagreement(const Word& u, const Word& v);

/// Smallest m >= 0 with 2^{-m} <= eps: two shift points are within eps iff
/// they agree on their first m symbols.
std::size_t agreement_length(double eps);

/// A finite state sequence. `genuine` records that points[i+1] = T(points[i])
/// for every i (exactly for discrete systems, to 1e-12 per step otherwise).
struct OrbitSegment {
  std::vector<State> points;
  bool genuine = false;

  std::size_t size() const { return points.size(); }
  const State& operator[](std::size_t i) const { return points[i]; }
};

inline constexpr double kGenuineTolerance = 1e-12;

OrbitSegment orbit_segment(const SystemSpec& sys, const State& x, std::size_t n);

/// Wraps an arbitrary sequence; sets `genuine` by checking the recurrence.
OrbitSegment make_segment(const SystemSpec& sys, std::vector<State> points);

/// Real-valued continuous function on the state space.
class Potential {
 public:
  enum class Kind { zero, symbol_table, polynomial };

  static Potential zero();
  /// Locally constant on the first symbol (shifts) or per point (finite).
  static Potential symbol_table(std::vector<double> values);
  /// sum_i c_i x^i in the coordinate of a circle/interval system.
  static Potential polynomial(std::vector<double> coefficients);

  Kind kind() const { return kind_; }
  const std::vector<double>& values() const { return values_; }
  bool is_zero() const;

  double operator()(const SystemSpec& sys, const State& x) const;

  /// sup |f| over the space.
  double sup_norm(const SystemSpec& sys) const;
  /// Upper bound on sup{|f(x) - f(y)| : d(x, y) <= eps}.
  double modulus(const SystemSpec& sys, double eps) const;

  /// Throws DomainError when the potential does not fit the system.
  void check_compatible(const SystemSpec& sys) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::zero;
  std::vector<double> values_;
};

/// sum_{i<n} f(T^i x).
double birkhoff_sum(const SystemSpec& sys, const Potential& f, const State& x,
                    std::size_t n);
/// Same sum along an already computed orbit.
double birkhoff_sum(const SystemSpec& sys, const Potential& f,
                    const OrbitSegment& orbit);

/// A finite set of states covering the space at the given resolution.
struct EpsilonNet {
  std::vector<State> points;
  double resolution = 0.0;

  std::size_t size() const { return points.size(); }
};

inline constexpr std::size_t kDefaultNetCap = std::size_t{1} << 20;

/// Grid i/N (N = ceil(1/resolution); N points on the circle, N+1 on the
/// interval), all admissible cylinder words of length m with 2^{-m} <
/// resolution for shifts, every point for finite spaces. Throws ResourceError
/// when the net would exceed `cap` points.
EpsilonNet build_net(const SystemSpec& sys, double resolution,
                     std::size_t cap = kDefaultNetCap);

/// All admissible words of the given length in lexicographic order.
std::vector<Word> cylinder_words(const SystemSpec& sys, std::size_t length,
                                 std::size_t cap = kDefaultNetCap);

/// Index of the nearest net point (lowest index on ties).
std::size_t nearest_point(const SystemSpec& sys, const EpsilonNet& net,
                          const State& x);

}  // namespace fkp
