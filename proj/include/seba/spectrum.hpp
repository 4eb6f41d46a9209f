#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "seba/arithmetic.hpp"
#include "seba/error.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"

namespace seba {

enum class CouplingMode { weak, strong };

/// Truncation of the regularized weak-coupling series.
struct CutoffPolicy {
  double factor = 10.0;     ///< cutoff ≥ factor · λ
  double min_extra = 1e4;   ///< cutoff ≥ λ + min_extra
  std::optional<double> fixed;  ///< overrides the two rules above
  bool tail_correction = true;
};

struct CouplingConfig {
  CouplingMode mode = CouplingMode::weak;
  double theta = 0.0;   ///< weak-coupling right-hand side c₀ tan(φ/2)
  double beta_c = 0.0;  ///< strong coupling: β(λ) = beta_c (log λ)^beta_b
  double beta_b = 0.0;
  CutoffPolicy cutoff;
  double root_tol = 1e-9;
  int max_iter = 200;
  bool ground_state = false;  ///< weak mode only: also solve on (−∞, 0)

  void validate() const {
    if (!(root_tol > 0)) throw DomainError("root_tol must be positive");
    if (!(beta_b >= 0 && beta_b < 1)) throw DomainError("beta_b must lie in [0, 1)");
    if (!(cutoff.factor >= 1)) throw DomainError("cutoff factor must be at least 1");
    if (!(cutoff.min_extra >= 0)) throw DomainError("cutoff min_extra must be nonnegative");
    if (max_iter < 1) throw DomainError("max_iter must be positive");
    if (ground_state && mode != CouplingMode::weak) throw DomainError("ground state is solved in weak mode only");
  }
};

/// One new eigenvalue λ_j ∈ (n_j, n_{j+1}).
struct SpectrumRecord {
  std::int64_t j = 0;
  std::int64_t n_j = 0;
  std::int64_t n_next = 0;
  double lambda = 0.0;
  double gap_left = 0.0;   ///< λ − n_j
  double gap_right = 0.0;  ///< n_{j+1} − λ
  double Delta = 0.0;      ///< min of the two gaps
  std::int64_t n_tilde = 0;  ///< nearest of n_j, n_{j+1}; the smaller on ties
};

inline SpectrumRecord make_record(std::int64_t j, std::int64_t n_j, std::int64_t n_next, double lambda) {
  SpectrumRecord r;
  r.j = j;
  r.n_j = n_j;
  r.n_next = n_next;
  r.lambda = lambda;
  r.gap_left = lambda - static_cast<double>(n_j);
  r.gap_right = static_cast<double>(n_next) - lambda;
  const bool left = r.gap_left <= r.gap_right;
  r.Delta = left ? r.gap_left : r.gap_right;
  r.n_tilde = left ? n_j : n_next;
  return r;
}

struct SebaSpectrum {
  CouplingConfig config;
  std::vector<SpectrumRecord> records;  ///< ascending in j, hence in λ
  std::optional<double> ground_lambda;  ///< root on (−∞, 0) when requested
};

// ---------------------------------------------------------------------------
// Secular functions

inline double beta_of(double lambda, const CouplingConfig& cfg) {
  if (cfg.beta_b == 0.0) return cfg.beta_c;
  if (!(lambda > 1.0)) throw DomainError("beta(lambda) with beta_b > 0 needs lambda > 1");
  return cfg.beta_c * std::pow(std::log(lambda), cfg.beta_b);
}

/// Weak-coupling secular function
///   S(λ) = Σ_{n∈𝒩, n≤C} r₂(n)[1/(n−λ) − n/(n²+1)] + tail(λ, C).
/// The regularizing sums are prefix-summed over 𝒩 once; the Cauchy part is
/// taken from the table's multipole tree, so one evaluation costs
/// O(log x_max) regardless of C.
class WeakSecular {
 public:
  explicit WeakSecular(ArithmeticTable table) : table_(std::move(table)) {
    const auto rep = table_.representable();
    prefix_.resize(rep.size() + 1);
    CompensatedSum<double> acc;
    prefix_[0] = 0.0;
    for (std::size_t i = 0; i < rep.size(); ++i) {
      const double n = static_cast<double>(rep[i]);
      acc += table_.r2(rep[i]) * n / (n * n + 1.0);
      prefix_[i + 1] = acc.value();
    }
  }

  const ArithmeticTable& table() const { return table_; }

  /// Default truncation for a point λ: max(factor·λ, λ + min_extra), or the
  /// fixed value when configured.
  static double cutoff_for(double lambda, const CutoffPolicy& p) {
    if (p.fixed) return *p.fixed;
    const double l = std::max(lambda, 1.0);
    return std::max(p.factor * l, l + p.min_extra);
  }

  double operator()(double lambda, double cutoff, bool tail_correction = true) const {
    if (std::floor(lambda) == lambda && table_.is_representable(static_cast<std::int64_t>(lambda)))
      throw PoleError("weak secular function evaluated at the pole " + format_double(lambda));
    if (!(cutoff > lambda)) throw WindowError("weak secular cutoff must exceed lambda");
    const auto c = static_cast<std::int64_t>(std::floor(cutoff));
    if (c > table_.x_max())
      throw WindowError("weak secular cutoff " + format_double(cutoff) + " exceeds table bound " +
                        std::to_string(table_.x_max()));
    const double cauchy = table_.sums().cauchy(lambda, 0, c);
    const double reg = prefix_[table_.lower_index(static_cast<double>(c) + 0.5)];
    double value = cauchy - reg;
    if (tail_correction) value += tail(lambda, static_cast<double>(c));
    return value;
  }

  /// Circle-law estimate of Σ_{n>C} r₂(n)(1+nλ)/((n−λ)(n²+1)):
  /// π∫_C^∞ f plus the boundary term −(A(C) − πC)·f(C) from partial
  /// summation against A(t) = Σ_{n≤t} r₂(n). Zero for non-lattice tables.
  double tail(double lambda, double C) const {
    if (!table_.lattice()) return 0.0;
    const double integral = -kPi * (std::log1p(-lambda / C) - 0.5 * std::log1p(1.0 / (C * C)));
    const auto ci = static_cast<std::int64_t>(C);
    const double f = (1.0 + C * lambda) / ((C - lambda) * (C * C + 1.0));
    const double discrepancy = static_cast<double>(count_up_to(ci)) - kPi * C;
    return integral - discrepancy * f;
  }

 private:
  std::int64_t count_up_to(std::int64_t x) const {
    // A(x) from the regularizer prefix would lose exactness; scan once and cache.
    std::call_once(*counts_once_, [this] {
      const auto r2 = table_.r2_values();
      counts_->resize(r2.size());
      std::int64_t acc = 0;
      for (std::size_t n = 0; n < r2.size(); ++n) {
        acc += r2[n];
        (*counts_)[n] = acc;
      }
    });
    return (*counts_)[static_cast<std::size_t>(x)];
  }

  ArithmeticTable table_;
  std::vector<double> prefix_;
  std::shared_ptr<std::once_flag> counts_once_ = std::make_shared<std::once_flag>();
  std::shared_ptr<std::vector<std::int64_t>> counts_ = std::make_shared<std::vector<std::int64_t>>();
};

/// One-shot weak secular evaluation; builds the prefix sums on every call.
inline double weak_secular(double lambda, const ArithmeticTable& table, const CouplingConfig& config) {
  const WeakSecular s(table);
  return s(lambda, WeakSecular::cutoff_for(lambda, config.cutoff), config.cutoff.tail_correction);
}

inline std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// Index range [first, last] in 𝒩 of the strong-coupling window of interval
/// j: all n with |n − n_j| ≤ √n_j, extended to include n_{j+1} so that the
/// right pole is always present.
struct StrongWindow {
  std::size_t first = 0;
  std::size_t last = 0;
};

inline StrongWindow strong_window(std::size_t j, const ArithmeticTable& table) {
  const auto rep = table.representable();
  if (j + 1 >= rep.size()) throw RangeError("strong window: interval index beyond table");
  const std::int64_t nj = rep[j];
  const std::int64_t r = isqrt(nj);
  if (nj + r > table.x_max())
    throw WindowError("strong window [" + std::to_string(nj - r) + ", " + std::to_string(nj + r) +
                      "] exceeds table bound " + std::to_string(table.x_max()));
  StrongWindow w;
  w.first = table.lower_index(static_cast<double>(nj - r));
  w.last = std::max(table.lower_index(static_cast<double>(nj + r) + 0.5) - 1, j + 1);
  return w;
}

/// Σ_{n in window} r₂(n)/(n − λ) for λ ∈ (n_j, n_{j+1}).
inline double strong_secular(double lambda, std::size_t j, const ArithmeticTable& table) {
  const auto rep = table.representable();
  const auto w = strong_window(j, table);
  if (!(lambda > static_cast<double>(rep[j]) && lambda < static_cast<double>(rep[j + 1])))
    throw DomainError("strong secular: lambda outside (n_j, n_{j+1})");
  CompensatedSum<double> acc;
  for (std::size_t i = w.first; i <= w.last; ++i)
    acc += table.r2(rep[i]) / (static_cast<double>(rep[i]) - lambda);
  return acc.value();
}

// ---------------------------------------------------------------------------
// Root finding

/// Root of an increasing g on (a, b) with g(a⁺) = −∞, g(b⁻) = +∞. Bisection
/// until the bracket is narrower than `switch_width`, then Illinois
/// regula falsi with a bisection step whenever an endpoint value is not yet
/// known or the false-position step stalls. Stops when the bracket is at most
/// `tol` wide or spans adjacent doubles; the returned point is strictly
/// inside (a, b).
inline double solve_monotone(const std::function<double(double)>& g, double a, double b, double tol,
                             int max_iter, double switch_width = 1e-3) {
  double lo = a, hi = b;
  double glo = -std::numeric_limits<double>::infinity();
  double ghi = std::numeric_limits<double>::infinity();
  int side = 0;  // which end was retained last, for the Illinois halving
  for (int it = 0; it < max_iter; ++it) {
    const double width = hi - lo;
    if (width <= tol) break;
    const double mid = lo + 0.5 * width;
    if (mid <= lo || mid >= hi) break;  // bracket at floating resolution
    double x = mid;
    if (width <= switch_width && std::isfinite(glo) && std::isfinite(ghi)) {
      x = lo - glo * (hi - lo) / (ghi - glo);
      // Guard against steps that collapse onto an endpoint.
      const double guard = 0.01 * width;
      if (!(x > lo + guard && x < hi - guard)) x = mid;
    }
    const double gx = g(x);
    if (gx == 0.0) return x;
    if (gx < 0) {
      lo = x;
      glo = gx;
      if (side == -1 && std::isfinite(ghi)) ghi *= 0.5;
      side = -1;
    } else {
      hi = x;
      ghi = gx;
      if (side == 1 && std::isfinite(glo)) glo *= 0.5;
      side = 1;
    }
    if (it + 1 == max_iter && hi - lo > tol)
      throw ConvergenceError("root finder: no convergence after " + std::to_string(max_iter) + " iterations");
  }
  double x = lo + 0.5 * (hi - lo);
  if (!(x > a && x < b)) {
    // Bracket collapsed onto a pole; fall back to the evaluated interior end.
    x = (lo > a) ? lo : hi;
    if (!(x > a && x < b)) throw ConvergenceError("root finder: no interior point at floating resolution");
  }
  return x;
}

/// Truncation used for the whole interval (n_j, n_{j+1}): the point rule
/// applied at the right end, so the secular function is one fixed
/// monotone function on the interval.
inline double interval_cutoff(std::int64_t n_next, const CutoffPolicy& policy) {
  return WeakSecular::cutoff_for(static_cast<double>(n_next), policy);
}

class SpectrumSolver {
 public:
  SpectrumSolver(ArithmeticTable table, CouplingConfig config)
      : weak_(std::move(table)), config_(std::move(config)) {
    config_.validate();
  }

  const ArithmeticTable& table() const { return weak_.table(); }
  const CouplingConfig& config() const { return config_; }
  const WeakSecular& weak() const { return weak_; }

  /// λ_j on (n_j, n_{j+1}), j indexing 𝒩.
  double solve_interval(std::size_t j) const {
    const auto rep = table().representable();
    if (j + 1 >= rep.size()) throw RangeError("solve_interval: j beyond table");
    const double a = static_cast<double>(rep[j]);
    const double b = static_cast<double>(rep[j + 1]);
    std::function<double(double)> g;
    if (config_.mode == CouplingMode::weak) {
      const double cutoff = interval_cutoff(rep[j + 1], config_.cutoff);
      const bool tail = config_.cutoff.tail_correction;
      const double theta = config_.theta;
      g = [this, cutoff, tail, theta](double x) { return weak_(x, cutoff, tail) - theta; };
    } else {
      const auto w = strong_window(j, table());
      g = [this, w, rep](double x) {
        CompensatedSum<double> acc;
        for (std::size_t i = w.first; i <= w.last; ++i)
          acc += table().r2(rep[i]) / (static_cast<double>(rep[i]) - x);
        return acc.value() - beta_of(x, config_);
      };
    }
    try {
      return solve_monotone(g, a, b, config_.root_tol, config_.max_iter);
    } catch (const Error& e) {
      throw ConvergenceError("interval (" + std::to_string(rep[j]) + ", " + std::to_string(rep[j + 1]) +
                             "): " + e.what());
    }
  }

  /// Weak-mode root on (−∞, 0), found by doubling the left bracket.
  double solve_ground() const {
    if (config_.mode != CouplingMode::weak) throw DomainError("ground state is defined for weak coupling");
    double left = -1.0;
    auto eval = [this](double x, double cut) { return weak_(x, cut, config_.cutoff.tail_correction) - config_.theta; };
    for (int k = 0;; ++k) {
      if (k > 60) throw ConvergenceError("ground state: no sign change found");
      const double cut = WeakSecular::cutoff_for(-left, config_.cutoff);
      if (eval(left, cut) < 0) break;
      left *= 2.0;
    }
    const double cut = WeakSecular::cutoff_for(-left, config_.cutoff);
    return solve_monotone([&](double x) { return eval(x, cut); }, 2.0 * left, 0.0, config_.root_tol,
                          config_.max_iter);
  }

  SpectrumRecord record(std::size_t j) const {
    const auto rep = table().representable();
    return make_record(static_cast<std::int64_t>(j), rep[j], rep[j + 1], solve_interval(j));
  }

 private:
  WeakSecular weak_;
  CouplingConfig config_;
};

/// Required table bound for solving every interval with right end ≤ x.
inline std::int64_t required_table_bound(std::int64_t x, const CouplingConfig& config) {
  if (config.mode == CouplingMode::weak)
    return static_cast<std::int64_t>(std::floor(interval_cutoff(x, config.cutoff)));
  return x + isqrt(x);
}

/// Solves every interval between consecutive elements of 𝒩 ∩ [x_min, x_max_solve].
/// Intervals are distributed over threads; records land in their own slots,
/// so the output does not depend on the schedule.
inline SebaSpectrum solve_range(std::int64_t x_min, std::int64_t x_max_solve, const SpectrumSolver& solver) {
  const auto& table = solver.table();
  if (x_max_solve < x_min) throw DomainError("solve_range: empty range");
  const auto need = required_table_bound(x_max_solve, solver.config());
  if (need > table.x_max())
    throw WindowError("solve_range: needs table bound " + std::to_string(need) + ", have " +
                      std::to_string(table.x_max()));
  const std::size_t first = table.lower_index(static_cast<double>(x_min));
  const std::size_t end = table.lower_index(static_cast<double>(x_max_solve) + 0.5);
  SebaSpectrum spec;
  spec.config = solver.config();
  if (end > first + 1) {
    spec.records.resize(end - first - 1);
    parallel_for(spec.records.size(), [&](std::size_t i) { spec.records[i] = solver.record(first + i); });
  }
  if (solver.config().ground_state) spec.ground_lambda = solver.solve_ground();
  return spec;
}

inline SebaSpectrum solve_range(std::int64_t x_min, std::int64_t x_max_solve, const ArithmeticTable& table,
                                const CouplingConfig& config) {
  return solve_range(x_min, x_max_solve, SpectrumSolver(table, config));
}

/// Solves the listed interval indices j (positions in 𝒩), for sampled runs.
inline SebaSpectrum solve_indices(const std::vector<std::size_t>& js, const SpectrumSolver& solver) {
  SebaSpectrum spec;
  spec.config = solver.config();
  spec.records.resize(js.size());
  parallel_for(js.size(), [&](std::size_t i) { spec.records[i] = solver.record(js[i]); });
  std::sort(spec.records.begin(), spec.records.end(),
            [](const SpectrumRecord& x, const SpectrumRecord& y) { return x.j < y.j; });
  return spec;
}

// ---------------------------------------------------------------------------
// Spacing statistics

struct SpacingStats {
  double mean_Delta = 0.0;
  double mean_gap_left = 0.0;
  std::int64_t count = 0;
};

/// ⟨Δ⟩_x and ⟨gap_left⟩_x over records with λ ≤ x.
inline SpacingStats spacing_stats(const SebaSpectrum& spec, double x) {
  CompensatedSum<double> d, g;
  std::int64_t count = 0;
  for (const auto& r : spec.records) {
    if (r.lambda > x) continue;
    d += r.Delta;
    g += r.gap_left;
    ++count;
  }
  if (count == 0) throw WindowError("spacing_stats: no eigenvalue below " + format_double(x));
  return {d.value() / static_cast<double>(count), g.value() / static_cast<double>(count), count};
}

enum class AlphaMethod {
  mean_distance,  ///< log⟨Δ⟩_x / log log x
  log_ratio,      ///< mean over λ_k ≤ x of log Δ_k / log log λ_k
};

struct AlphaPoint {
  double x = 0.0;
  double alpha = 0.0;
  std::int64_t count = 0;
};

/// Exponent estimates α̂(x) on a grid. Records with λ_k ≤ e are skipped by
/// the log-ratio form, where log log λ_k ≤ 0.
inline std::vector<AlphaPoint> alpha_estimate(const SebaSpectrum& spec, const std::vector<double>& x_grid,
                                              AlphaMethod method = AlphaMethod::mean_distance) {
  std::vector<AlphaPoint> out;
  for (const double x : x_grid) {
    if (!(x > std::exp(1.0))) throw DomainError("alpha_estimate: grid points must exceed e");
    if (method == AlphaMethod::mean_distance) {
      const auto st = spacing_stats(spec, x);
      out.push_back({x, std::log(st.mean_Delta) / std::log(std::log(x)), st.count});
    } else {
      CompensatedSum<double> acc;
      std::int64_t count = 0;
      for (const auto& r : spec.records) {
        if (r.lambda > x || r.lambda <= std::exp(1.0)) continue;
        acc += std::log(r.Delta) / std::log(std::log(r.lambda));
        ++count;
      }
      if (count == 0) throw WindowError("alpha_estimate: no eigenvalue in (e, " + format_double(x) + "]");
      out.push_back({x, acc.value() / static_cast<double>(count), count});
    }
  }
  return out;
}

struct BlockMedian {
  double lo = 0.0;
  double hi = 0.0;
  double median = 0.0;
  std::int64_t count = 0;
};

/// Median of Δ_k·√(log λ_k) over records with λ_k in each [lo, hi).
inline std::vector<BlockMedian> scaled_delta_medians(const SebaSpectrum& spec,
                                                     const std::vector<std::pair<double, double>>& blocks) {
  std::vector<BlockMedian> out;
  for (const auto& [lo, hi] : blocks) {
    std::vector<double> v;
    for (const auto& r : spec.records)
      if (r.lambda >= lo && r.lambda < hi && r.lambda > 1.0) v.push_back(r.Delta * std::sqrt(std::log(r.lambda)));
    if (v.empty()) throw WindowError("scaled_delta_medians: empty block");
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    const double med = (v.size() % 2 == 1) ? v[m] : 0.5 * (v[m - 1] + v[m]);
    out.push_back({lo, hi, med, static_cast<std::int64_t>(v.size())});
  }
  return out;
}

}  // namespace seba
