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

#include "fkp/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fkp/errors.hpp"
#include "fkp/log_space.hpp"

namespace fkp {

std::string to_string(Route r) {
  switch (r) {
    case Route::bowen:
      return "bowen";
    case Route::fk:
      return "fk";
    case Route::po:
      return "po";
    case Route::ppo:
      return "ppo";
    case Route::fkpo:
      return "fkpo";
    case Route::scaled:
      return "scaled";
  }
  return "unknown";
}

std::string to_string(LimitMethod m) {
  switch (m) {
    case LimitMethod::tail_mean:
      return "tail-mean";
    case LimitMethod::linear_fit_slope:
      return "linear-fit-slope";
    case LimitMethod::difference:
      return "difference";
  }
  return "unknown";
}

void PressureSeries::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].per_n)) {
      throw UsageError("series sample at n=" + std::to_string(samples[i].n) +
                       " is not finite");
    }
    if (i > 0 && samples[i].n <= samples[i - 1].n) {
      throw UsageError("series n values must be strictly increasing");
    }
  }
}

LimitEstimate extrapolate(const PressureSeries& series, double tail_fraction,
                          LimitMethod method) {
  const auto& s = series.samples;
  if (s.size() < 3) throw UsageError("extrapolate needs at least three samples");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw UsageError("tail fraction must lie in (0, 1]");
  }
  series.validate();

  LimitEstimate out;
  out.method = method;
  const std::size_t count = s.size();
  out.window = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(count))),
      1, count);
  const std::size_t first = count - out.window;

  double sum = 0.0;
  out.tail_max = s[first].per_n;
  for (std::size_t i = first; i < count; ++i) {
    sum += s[i].per_n;
    out.tail_max = std::max(out.tail_max, s[i].per_n);
  }
  out.tail_mean = sum / static_cast<double>(out.window);

  double lo = s[count - 3].per_n;
  double hi = lo;
  for (std::size_t i = count - 3; i < count; ++i) {
    lo = std::min(lo, s[i].per_n);
    hi = std::max(hi, s[i].per_n);
  }
  out.dispersion = hi - lo;

  const auto& a = s[count - 2];
  const auto& b = s[count - 1];
  const double na = static_cast<double>(a.n);
  const double nb = static_cast<double>(b.n);
  out.difference = (nb * b.per_n - na * a.per_n) / (nb - na);

  // Least squares of n * per_n against n; at least the last two samples.
  const std::size_t fit_first = std::min(first, count - 2);
  const double m = static_cast<double>(count - fit_first);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = fit_first; i < count; ++i) {
    const double x = static_cast<double>(s[i].n);
    const double y = x * s[i].per_n;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  out.linear_fit_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);

  switch (method) {
    case LimitMethod::tail_mean:
      out.value = out.tail_mean;
      break;
    case LimitMethod::linear_fit_slope:
      out.value = out.linear_fit_slope;
      break;
    case LimitMethod::difference:
      out.value = out.difference;
      break;
  }
  return out;
}

double exact_pressure_full_shift(std::span<const double> symbol_values) {
  if (symbol_values.empty()) throw UsageError("full shift needs at least one symbol");
  return log_sum_exp(symbol_values);
}

bool is_irreducible(const Matrix01& a) {
  const std::size_t k = a.size();
  if (k == 0) return false;
  for (const auto& row : a) {
    if (row.size() != k) return false;
  }
  auto reaches_all = [&](bool transpose) {
    std::vector<char> seen(k, 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t v = 0; v < k; ++v) {
        const int e = transpose ? a[v][u] : a[u][v];
        if (e != 0 && !seen[v]) {
          seen[v] = 1;
          stack.push_back(v);
        }
      }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
  };
  return reaches_all(false) && reaches_all(true);
}

double exact_pressure_sft(const Matrix01& a, std::span<const double> symbol_values) {
  const std::size_t k = a.size();
  if (k == 0) throw UsageError("transition matrix is empty");
  for (const auto& row : a) {
    if (row.size() != k) throw UsageError("transition matrix must be square");
    for (int e : row) {
      if (e != 0 && e != 1) throw UsageError("transition matrix must be 0/1");
    }
  }
  if (symbol_values.size() < k) {
    throw UsageError("need one potential value per symbol");
  }
  if (!is_irreducible(a)) throw UsageError("transition matrix is reducible");

  // rho(diag(e^f) A) = e^M rho(diag(e^{f-M}) A); B + I is primitive, so the
  // power iteration converges even for periodic A. Collatz-Wielandt bounds
  // min (Bv)_i/v_i <= rho <= max (Bv)_i/v_i give the stopping rule.
  const double top = *std::max_element(symbol_values.begin(), symbol_values.begin() + k);
  std::vector<double> w(k);
  for (std::size_t i = 0; i < k; ++i) w[i] = std::exp(symbol_values[i] - top);

  std::vector<double> v(k, 1.0), next(k);
  double lower = 0.0;
  double upper = 0.0;
  constexpr int kMaxIterations = 1000000;
  for (int it = 0; it < kMaxIterations; ++it) {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < k; ++j) {
        if (a[i][j] != 0) acc += w[i] * v[j];
      }
      next[i] = acc;
    }
    lower = next[0] / v[0];
    upper = lower;
    for (std::size_t i = 1; i < k; ++i) {
      lower = std::min(lower, next[i] / v[i]);
      upper = std::max(upper, next[i] / v[i]);
    }
    const double norm = *std::max_element(next.begin(), next.end());
    for (std::size_t i = 0; i < k; ++i) v[i] = next[i] / norm;
    if (upper - lower <= kSftRelativeTolerance * (upper - 1.0)) {
      return top + std::log(0.5 * (lower + upper) - 1.0);
    }
  }
  throw ConvergenceError("SFT power iteration did not converge", lower - 1.0,
                         upper - 1.0);
}

namespace {

double finite_pressure(const SystemSpec& sys, const Potential& f) {
  // Every orbit ends in a cycle; the pressure is the best cycle average.
  const auto& map = sys.map_table();
  const std::size_t m = map.size();
  double best = kNegInf;
  std::vector<char> on_cycle(m, 0);
  for (std::size_t start = 0; start < m; ++start) {
    std::size_t x = start;
    for (std::size_t i = 0; i < m; ++i) x = map[x];
    if (on_cycle[x]) continue;
    double sum = 0.0;
    std::size_t len = 0;
    std::size_t y = x;
    do {
      on_cycle[y] = 1;
      sum += f(sys, FinitePoint{y});
      ++len;
      y = map[y];
    } while (y != x);
    best = std::max(best, sum / static_cast<double>(len));
  }
  return best;
}

}  // namespace

std::optional<double> reference_pressure(const SystemSpec& sys, const Potential& f) {
  f.check_compatible(sys);
  if (sys.is_shift()) {
    std::vector<double> values(static_cast<std::size_t>(sys.symbols()), 0.0);
    if (f.kind() == Potential::Kind::symbol_table) {
      std::copy_n(f.values().begin(), values.size(), values.begin());
    }
    if (sys.space() == SpaceKind::full_shift) return exact_pressure_full_shift(values);
    if (!is_irreducible(sys.transitions())) return std::nullopt;
    return exact_pressure_sft(sys.transitions(), values);
  }
  if (sys.is_finite()) return finite_pressure(sys, f);

  switch (sys.map()) {
    case MapKind::rotation: {
      if (f.is_zero()) return 0.0;
      double integral = 0.0;
      const auto& c = f.values();
      for (std::size_t i = 0; i < c.size(); ++i) {
        integral += c[i] / static_cast<double>(i + 1);
      }
      return integral;
    }
    case MapKind::doubling:
      if (f.is_zero()) return std::log(2.0);
      break;
    case MapKind::tent:
      if (f.is_zero()) return std::max(0.0, std::log(sys.parameter()));
      break;
    case MapKind::logistic:
      if (f.is_zero() && sys.parameter() == 4.0) return std::log(2.0);
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace fkp
