#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seba/arithmetic.hpp"
#include "seba/error.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"
#include "seba/spectrum.hpp"

namespace seba {

// ---------------------------------------------------------------------------
// Circle-law tails

/// Half-diagonal of the unit lattice cell. The lattice count N(t) of
/// |ξ|² ≤ t then satisfies |N(t) − πt| ≤ 2πδ√t + πδ².
inline constexpr double kUnitCellRadius = 0.70710678118654752440;

inline double lattice_discrepancy_bound(double t) {
  constexpr double d = kUnitCellRadius;
  return 2.0 * kPi * d * std::sqrt(std::max(t, 0.0)) + kPi * d * d;
}

/// Tail Σ_{n>X} r₂(n)(n−λ)^{-s}, optionally with the log|n−λ| weight, split
/// into the circle-law integral and a rigorous bound on what partial
/// summation against N(t) − πt leaves over.
struct CircleTail {
  double power_estimate = 0.0;
  double power_residual = 0.0;  ///< bound on |tail − power_estimate|
  double log_estimate = 0.0;
  double log_residual = 0.0;
};

inline CircleTail circle_tail(double X, double lambda, double s) {
  const double u0 = X - lambda;
  if (!(u0 > 0.0) || !(s > 1.0)) throw DomainError("circle_tail needs X > lambda and s > 1");
  constexpr double d = kUnitCellRadius;
  const double lp = std::max(lambda, 0.0);
  const double ex = lattice_discrepancy_bound(X);
  const double c_half = 2.0 * kPi * d;                              // multiplies √u
  const double c_one = 2.0 * kPi * d * std::sqrt(lp) + kPi * d * d;  // multiplies 1
  CircleTail out;
  const double head = std::pow(u0, -s);
  out.power_estimate = kPi * u0 * head / (s - 1.0);
  out.power_residual = ex * head + c_half * s * std::pow(u0, 0.5 - s) / (s - 0.5) + c_one * head;
  out.log_estimate = kPi * power_log_integral(u0, s, 0.0, 1.0);
  if (u0 >= std::exp(1.0)) {
    out.log_residual = ex * head * std::log(u0) + c_half * power_log_integral(u0, s + 0.5, 1.0, s) +
                       c_one * power_log_integral(u0, s + 1.0, 1.0, s);
  } else {
    out.log_residual = std::numeric_limits<double>::infinity();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Spectral zeta

/// Summation window for ζ_λ. X defaults to the table bound. With
/// complete_tail the circle-law integral beyond X is added and tail_bound
/// bounds the remaining error; otherwise value is the plain truncated sum
/// and tail_bound bounds the whole omitted mass.
struct ZetaWindow {
  std::optional<double> X;
  double rel_tol = 1e-8;
  bool complete_tail = true;
};

struct ZetaValue {
  double value = 0.0;
  double tail_bound = 0.0;
  double log_value = 0.0;  ///< Σ r₂|n−λ|^{-s} log|n−λ|, when requested
  double log_tail_bound = 0.0;
};

namespace detail {

inline void check_not_pole(double lambda, const ArithmeticTable& table) {
  if (std::floor(lambda) == lambda && table.is_representable(static_cast<std::int64_t>(lambda)))
    throw PoleError("spectral zeta evaluated at the pole " + format_double(lambda));
}

inline std::int64_t zeta_cutoff(double lambda, const ArithmeticTable& table, const ZetaWindow& w) {
  const double X = w.X.value_or(static_cast<double>(table.x_max()));
  if (X > static_cast<double>(table.x_max()))
    throw WindowError("zeta window " + format_double(X) + " exceeds table bound " +
                      std::to_string(table.x_max()));
  if (table.lattice() && X < 2.0 * lambda)
    throw WindowError("zeta window " + format_double(X) + " below 2*lambda");
  return static_cast<std::int64_t>(std::floor(X));
}

}  // namespace detail

inline ZetaValue zeta_lambda_full(double lambda, double s, const ArithmeticTable& table, const ZetaWindow& window,
                                  bool with_log) {
  if (!(s > 1.0)) throw DomainError("zeta_lambda needs s > 1");
  detail::check_not_pole(lambda, table);
  const auto X = detail::zeta_cutoff(lambda, table, window);
  const auto sums = table.sums().power(lambda, s, 0, X, with_log);
  ZetaValue out{sums.power, 0.0, sums.power_log, 0.0};
  if (table.lattice()) {
    const auto tail = circle_tail(static_cast<double>(X), lambda, s);
    if (window.complete_tail) {
      out.value += tail.power_estimate;
      out.tail_bound = tail.power_residual;
      out.log_value += tail.log_estimate;
      out.log_tail_bound = tail.log_residual;
    } else {
      out.tail_bound = tail.power_estimate + tail.power_residual;
      out.log_tail_bound = std::abs(tail.log_estimate) + tail.log_residual;
    }
  }
  if (out.tail_bound > window.rel_tol * out.value)
    throw WindowError("zeta_lambda: tail bound " + format_double(out.tail_bound) + " exceeds tolerance at s = " +
                      format_double(s));
  return out;
}

/// ζ_λ(s) = Σ_{n∈𝒩} r₂(n)|n−λ|^{-s} with its tail bound.
inline ZetaValue zeta_lambda(double lambda, double s, const ArithmeticTable& table, const ZetaWindow& window = {}) {
  return zeta_lambda_full(lambda, s, table, window, false);
}

// ---------------------------------------------------------------------------
// Moment profiles

struct MomentProfile {
  double lambda = 0.0;
  double Delta = 0.0;
  std::int64_t n_tilde = 0;
  std::vector<double> q_grid;
  std::map<double, double> zeta2q;
  std::map<double, double> m_q;
  std::map<double, double> h_q;
  std::map<double, double> H_q;  ///< q = 1 carries the Shannon entropy
  std::map<double, double> M_q;  ///< ζ_λ(2q)/ζ_λ(2)^q
  std::map<double, double> tail_bound;
  double zeta2 = 0.0;
  double h_1 = 0.0;
  double shannon = 0.0;
  double shannon_error = 0.0;  ///< propagated from the tail bounds
};

/// Moments of the normalized Fourier measure μ_ξ ∝ ||ξ|² − λ|^{-2}. The
/// q = 1 entropy is the Shannon limit log ζ_λ(2) + 2Σ r₂ log|n−λ| |n−λ|^{-2}/ζ_λ(2).
inline MomentProfile moment_profile(double lambda, double Delta, std::int64_t n_tilde, const std::vector<double>& q_grid,
                                    const ArithmeticTable& table, const ZetaWindow& window = {}) {
  if (!(Delta > 0.0)) throw DomainError("moment_profile needs Delta > 0");
  if (!std::is_sorted(q_grid.begin(), q_grid.end()) ||
      std::adjacent_find(q_grid.begin(), q_grid.end()) != q_grid.end())
    throw DomainError("moment_profile: q grid must be strictly ascending");
  for (const double q : q_grid)
    if (!(q > 0.5)) throw DomainError("moment_profile: every q must exceed 1/2");

  MomentProfile p;
  p.lambda = lambda;
  p.Delta = Delta;
  p.n_tilde = n_tilde;
  p.q_grid = q_grid;

  const auto z2 = zeta_lambda_full(lambda, 2.0, table, window, true);
  p.zeta2 = z2.value;
  const double log_d = std::log(Delta);
  const double log_z2 = std::log(z2.value);
  p.h_1 = 2.0 * log_d + log_z2;
  p.shannon = log_z2 + 2.0 * z2.log_value / z2.value;
  p.shannon_error = z2.tail_bound / z2.value * (1.0 + 2.0 * std::abs(z2.log_value) / z2.value) +
                    2.0 * z2.log_tail_bound / z2.value;

  for (const double q : q_grid) {
    const auto z = q == 1.0 ? z2 : zeta_lambda(lambda, 2.0 * q, table, window);
    const double log_z = std::log(z.value);
    p.zeta2q[q] = z.value;
    p.tail_bound[q] = z.tail_bound;
    const double h = 2.0 * q * log_d + log_z;
    p.m_q[q] = std::exp(h);
    p.h_q[q] = h;
    p.M_q[q] = std::exp(log_z - q * log_z2);
    p.H_q[q] = q == 1.0 ? p.shannon : (h - q * p.h_1) / (1.0 - q);
  }
  return p;
}

inline MomentProfile moment_profile(const SpectrumRecord& r, const std::vector<double>& q_grid,
                                    const ArithmeticTable& table, const ZetaWindow& window = {}) {
  return moment_profile(r.lambda, r.Delta, r.n_tilde, q_grid, table, window);
}

// ---------------------------------------------------------------------------
// Tails and the mean tail

struct TailValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< omitted mass beyond the table
};

/// τ_q(t, G) = Σ_{m∈𝒩, |m−t| ≥ G} r₂(m)|m−t|^{-2q} over the table.
inline TailValue tail_tau(double t, double G, double q, const ArithmeticTable& table) {
  if (!(q > 0.5)) throw DomainError("tail_tau needs q > 1/2");
  if (!(G >= 1.0)) throw DomainError("tail_tau needs G >= 1");
  if (!(t >= 0.0) || t > static_cast<double>(table.x_max()))
    throw WindowError("tail_tau: t = " + format_double(t) + " outside the table");
  const auto& tree = table.sums();
  const double s = 2.0 * q;
  TailValue out;
  const double left_hi = std::floor(t - G);
  if (left_hi >= 0.0) out.value += tree.power(t, s, 0, static_cast<std::int64_t>(left_hi)).power;
  const double right_lo = std::ceil(t + G);
  if (right_lo <= static_cast<double>(table.x_max()))
    out.value += tree.power(t, s, static_cast<std::int64_t>(right_lo), table.x_max()).power;
  if (table.lattice()) {
    const double X = std::max(static_cast<double>(table.x_max()), t + 0.5 * G);
    const auto tail = circle_tail(X, t, s);
    out.tail_bound = tail.power_estimate + tail.power_residual;
  }
  return out;
}

struct MeanTail {
  double value = 0.0;            ///< (1/T)∫_T^{2T} of the G ≤ |t−m| ≤ T part
  double remainder_bound = 0.0;  ///< bound on the |t−m| > T part
  double prediction = 0.0;       ///< (2π/(2q−1)) G^{1−2q}
  double ratio = 0.0;
};

namespace detail {

/// ∫_a^b u^{-p} du for 0 < a ≤ b, p > 1, without cancellation for b ≈ a.
inline double power_integral(double a, double b, double p) {
  if (!(b > a)) return 0.0;
  return std::pow(a, 1.0 - p) * -std::expm1((1.0 - p) * std::log(b / a)) / (p - 1.0);
}

/// ∫_T^{2T} |t−m|^{-p} 1{G ≤ |t−m| ≤ T} dt, split at t = m.
inline double shell_window_integral(double m, double T, double G, double p) {
  // t > m: u = t − m
  const double r_lo = std::max(T - m, G);
  const double r_hi = std::min(2.0 * T - m, T);
  // t < m: u = m − t
  const double l_lo = std::max(m - 2.0 * T, G);
  const double l_hi = std::min(m - T, T);
  return power_integral(r_lo, r_hi, p) + power_integral(l_lo, l_hi, p);
}

}  // namespace detail

/// ⟨τ_q⟩_T computed term by term with closed-form integrals.
inline MeanTail mean_tail(double T, double G, double q, const ArithmeticTable& table) {
  if (!(q > 0.5)) throw DomainError("mean_tail needs q > 1/2");
  if (!(T >= 1.0)) throw DomainError("mean_tail needs T >= 1");
  if (!(G >= 1.0) || G > T) throw DomainError("mean_tail needs 1 <= G <= T");
  if (G > std::pow(T, 0.9) * (1.0 + 1e-12)) throw DomainError("mean_tail needs G <= T^0.9");
  if (3.0 * T > static_cast<double>(table.x_max()))
    throw WindowError("mean_tail needs 3T within the table bound");
  const double p = 2.0 * q;
  const auto rep = table.representable();
  const std::size_t count = table.lower_index(std::floor(3.0 * T) + 0.5);
  const double total = deterministic_sum(count, [&](std::size_t i) {
    const auto m = rep[i];
    return table.r2(m) * detail::shell_window_integral(static_cast<double>(m), T, G, p);
  });
  MeanTail out;
  out.value = total / T;
  out.prediction = 2.0 * kPi / (p - 1.0) * std::pow(G, 1.0 - p);
  out.ratio = out.value / out.prediction;
  // Worst case over t ∈ [T, 2T]: upper side from the circle law at X = t + T,
  // lower side at most N(T) terms of size ≤ T^{-p}.
  if (table.lattice()) {
    constexpr double d = kUnitCellRadius;
    const double head = std::pow(T, -p);
    const double upper = kPi * T * head / (p - 1.0) +
                         head * (lattice_discrepancy_bound(3.0 * T) + 2.0 * kPi * d * std::sqrt(2.0 * T) +
                                 kPi * d * d) +
                         2.0 * kPi * d * p * std::pow(T, 0.5 - p) / (p - 0.5);
    const double lower = (kPi * T + lattice_discrepancy_bound(T)) * head;
    out.remainder_bound = upper + lower;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Essential support and theoretical exponents

/// G solving ⟨Δ⟩^{2q}·(2π/(2q−1))·G^{1−2q} = 1.
inline double essential_support_G(double mean_Delta, double q) {
  if (!(q > 0.5)) throw DomainError("essential_support_G needs q > 1/2");
  if (!(mean_Delta > 0.0)) throw DomainError("essential_support_G needs mean Delta > 0");
  const double k = 2.0 * q - 1.0;
  return std::exp((std::log(2.0 * kPi / k) + 2.0 * q * std::log(mean_Delta)) / k);
}

inline double scaling_parameter_N(double G) { return 2.0 * kPi * G; }

/// ((1−log 2)/(2−4α), 1/(2−4α)] when α ∈ (¼, ½); empty otherwise.
inline std::optional<std::pair<double, double>> admissible_q_range(double alpha) {
  if (!(alpha > 0.25 && alpha < 0.5)) return std::nullopt;
  const double w = 2.0 - 4.0 * alpha;
  return std::make_pair((1.0 - kLog2) / w, 1.0 / w);
}

struct TheoryExponents {
  double d_q = 0.0;
  double D_q = 0.0;
};

inline TheoryExponents theory_exponents(double alpha, double c, double q) {
  const auto range = admissible_q_range(alpha);
  if (!range) throw DomainError("theory_exponents needs alpha in (1/4, 1/2)");
  if (!(c >= 0.5 * kLog2 && c <= 1.0)) throw DomainError("theory_exponents needs c in [log(2)/2, 1]");
  if (!(q > range->first && q <= range->second))
    throw DomainError("theory_exponents: q = " + format_double(q) + " outside the admissible range");
  const double base = (1.0 - 1.0 / (2.0 * q)) / (2.0 * alpha);
  TheoryExponents out;
  out.d_q = base * kLog2;
  if (q == 1.0) {
    // Removable only when 2c = log 2.
    if (2.0 * c != kLog2) throw PoleError("theory_exponents: D_1 diverges unless c = log(2)/2");
    out.D_q = out.d_q;
  } else {
    out.D_q = base * (2.0 * c * q - kLog2) / (q - 1.0);
  }
  return out;
}

/// f(q) = ½ log 2 (exp(log 2/(q − ½)) − 1), defined for q ≥ 3/2.
inline double rigid_bound_f(double q) {
  if (!(q >= 1.5)) throw DomainError("rigid_bound_f needs q >= 3/2");
  return 0.5 * kLog2 * std::expm1(kLog2 / (q - 0.5));
}

struct BreakdownInterval {
  double d_lo = 0.0;
  double d_hi = 0.0;
  double d_constant = kLog2;    ///< value at F(q) = 1/(2q−1)
  bool constant_inside = false;
};

/// Range of d_q = (1 − 1/(2q))(1 + F)log 2 for 0 ≤ F ≤ 2 log 2/(2q−1).
inline BreakdownInterval breakdown_diagnostic(double q) {
  if (!(q >= 1.5)) throw DomainError("breakdown_diagnostic needs q >= 3/2");
  const double a = 1.0 - 1.0 / (2.0 * q);
  BreakdownInterval out;
  out.d_lo = a * kLog2;
  out.d_hi = a * (1.0 + 2.0 * kLog2 / (2.0 * q - 1.0)) * kLog2;
  out.constant_inside = out.d_constant >= out.d_lo && out.d_constant <= out.d_hi;
  return out;
}

// ---------------------------------------------------------------------------
// Full-density filters
//
// Finite stand-ins for the properties used to bound ζ_λ near an element m of
// 𝒩. Each (log m)^{o(1)} becomes (log m)^{±ε}, with the sign chosen so the
// filter is as permissive as the property allows, or as restrictive when
// `strict` is set. Multiplicities enter as
// ρ(n) = r₂(n)/4, the count of representations up to the unit symmetries,
// since at desk scale the constant 4 alone exceeds any reasonable ε.

struct DensityFilterConfig {
  double epsilon = 0.25;
  std::int64_t n_min = 16;
  bool normal_order = true;    ///< |log ρ / log log m − ½ log 2| ≤ ε
  bool separation = true;      ///< large-ρ neighbours are kept apart
  bool neighbor_gap = true;    ///< nearest neighbours at distance ≥ L^{½−ε}
  bool sparse_tail = false;    ///< unweighted tail bound on a dyadic G grid
  double sparse_tail_q = 1.5;
  bool strict = false;  ///< take every o(1) against the element
};

struct FilterCounts {
  std::int64_t tested = 0;
  std::int64_t normal_order = 0;
  std::int64_t separation = 0;
  std::int64_t neighbor_gap = 0;
  std::int64_t sparse_tail = 0;
  std::int64_t passed = 0;
};

inline double reduced_multiplicity(const ArithmeticTable& table, std::int64_t n) { return table.r2(n) / 4.0; }

inline bool normal_order_ok(const ArithmeticTable& table, std::int64_t m, double eps) {
  const double ll = std::log(std::log(static_cast<double>(m)));
  return std::abs(std::log(reduced_multiplicity(table, m)) / ll - 0.5 * kLog2) <= eps;
}

/// A neighbour n with ρ(n) = r in [L^{½+ε}, L²) needs r/(L^{½+ε}(log r)²)
/// elements of 𝒩 strictly between m and n; r ≥ L² needs r^{5/4−ε}/log r.
/// `rho_max` bounds ρ over the table and with it the search reach.
inline bool separation_ok(const ArithmeticTable& table, std::int64_t m, double eps, double rho_max,
                          bool strict = false) {
  const double L = std::log(static_cast<double>(m));
  const double r_min = std::pow(L, strict ? 0.5 - eps : 0.5 + eps);
  auto required = [&](double r) {
    if (r < r_min) return 0.0;
    if (r < L * L) return r / (r_min * std::log(r) * std::log(r));
    return std::pow(r, strict ? 1.25 : 1.25 - eps) / std::log(r);
  };
  const auto rep = table.representable();
  const std::size_t i = table.index_of(m);
  const auto reach = static_cast<std::size_t>(std::ceil(required(rho_max))) + 1;
  for (std::size_t k = 1; k <= reach; ++k) {
    const double between = static_cast<double>(k - 1);
    if (i >= k && between < required(reduced_multiplicity(table, rep[i - k]))) return false;
    if (i + k < rep.size() && between < required(reduced_multiplicity(table, rep[i + k]))) return false;
  }
  return true;
}

inline bool neighbor_gap_ok(const ArithmeticTable& table, std::int64_t m, double eps, bool strict = false) {
  const double need = std::pow(std::log(static_cast<double>(m)), strict ? 0.5 + eps : 0.5 - eps);
  const auto rep = table.representable();
  const std::size_t i = table.index_of(m);
  if (i > 0 && static_cast<double>(m - rep[i - 1]) < need) return false;
  if (i + 1 < rep.size() && static_cast<double>(rep[i + 1] - m) < need) return false;
  return true;
}

/// Σ_{n∈𝒩, |m−n| ≥ G}|m−n|^{-2q} ≤ (log G)²/(G^{2q−1}L^{½−ε}) for
/// G = 2, 4, … ≤ min(m^{1−ε}, 4096). Summed directly out to distance 2¹³;
/// beyond that every integer is counted, which only strengthens the test.
inline bool sparse_tail_ok(const ArithmeticTable& table, std::int64_t m, double eps, double q, bool strict = false) {
  const double p = 2.0 * q;
  const double L = std::log(static_cast<double>(m));
  const std::int64_t reach = 1 << 13;
  const double far = 2.0 * std::pow(static_cast<double>(reach), 1.0 - p) / (p - 1.0);
  const double g_max = std::min(std::pow(static_cast<double>(m), 1.0 - eps), 4096.0);
  const auto rep = table.representable();
  const std::size_t i = table.index_of(m);
  // Distances sorted once; each G then takes a suffix sum.
  std::vector<double> dist;
  for (std::size_t k = i; k-- > 0 && m - rep[k] <= reach;) dist.push_back(static_cast<double>(m - rep[k]));
  for (std::size_t k = i + 1; k < rep.size() && rep[k] - m <= reach; ++k)
    dist.push_back(static_cast<double>(rep[k] - m));
  std::sort(dist.begin(), dist.end());
  std::vector<double> suffix(dist.size() + 1, 0.0);
  for (std::size_t k = dist.size(); k-- > 0;) suffix[k] = suffix[k + 1] + std::pow(dist[k], -p);
  for (double G = 2.0; G <= g_max; G *= 2.0) {
    const auto from = static_cast<std::size_t>(std::lower_bound(dist.begin(), dist.end(), G) - dist.begin());
    const double bound =
        std::log(G) * std::log(G) / (std::pow(G, p - 1.0) * std::pow(L, strict ? 0.5 + eps : 0.5 - eps));
    if (suffix[from] + far > bound) return false;
  }
  return true;
}

/// Elements of 𝒩 in [lo, hi] passing every enabled filter. The first and
/// last elements of the table have a one-sided neighbourhood and are skipped.
inline std::vector<std::int64_t> density_filter(const ArithmeticTable& table, std::int64_t lo, std::int64_t hi,
                                                const DensityFilterConfig& cfg = {}, FilterCounts* counts = nullptr) {
  if (!(cfg.epsilon > 0.0)) throw DomainError("density_filter needs epsilon > 0");
  if (cfg.n_min < 16) throw DomainError("density_filter needs n_min >= 16");
  if (hi > table.x_max()) throw RangeError("density_filter: upper end beyond the table");
  const auto rep = table.representable();
  const std::size_t first = table.lower_index(static_cast<double>(std::max(lo, cfg.n_min)));
  const std::size_t last = table.lower_index(static_cast<double>(hi) + 0.5);
  const std::size_t n = last > first ? last - first : 0;
  std::uint32_t r_max = 0;
  if (cfg.separation)
    for (const auto v : table.r2_values()) r_max = std::max(r_max, v);
  const double rho_max = r_max / 4.0;
  std::vector<std::uint8_t> flags(n, 0);
  parallel_for(n, [&](std::size_t k) {
    const auto m = rep[first + k];
    if (first + k == 0 || first + k + 1 >= rep.size()) {
      flags[k] = 0x80;
      return;
    }
    std::uint8_t f = 0;
    if (!cfg.normal_order || normal_order_ok(table, m, cfg.epsilon)) f |= 1;
    if (!cfg.separation || separation_ok(table, m, cfg.epsilon, rho_max, cfg.strict)) f |= 2;
    if (!cfg.neighbor_gap || neighbor_gap_ok(table, m, cfg.epsilon, cfg.strict)) f |= 4;
    if (!cfg.sparse_tail || sparse_tail_ok(table, m, cfg.epsilon, cfg.sparse_tail_q, cfg.strict)) f |= 8;
    flags[k] = f;
  });
  std::vector<std::int64_t> out;
  FilterCounts c;
  for (std::size_t k = 0; k < n; ++k) {
    if (flags[k] & 0x80) continue;
    ++c.tested;
    c.normal_order += (flags[k] & 1) != 0;
    c.separation += (flags[k] & 2) != 0;
    c.neighbor_gap += (flags[k] & 4) != 0;
    c.sparse_tail += (flags[k] & 8) != 0;
    if ((flags[k] & 15) == 15) {
      ++c.passed;
      out.push_back(rep[first + k]);
    }
  }
  if (counts) *counts = c;
  return out;
}

struct LemmaCheck {
  std::int64_t m = 0;
  double q = 0.0;
  double tail = 0.0;  ///< Σ_{n≠m} r₂(n)|n−m|^{-2q}
  double tail_bound = 0.0;
  double bound = 0.0;  ///< (log m)^{−q+½+slack}
  bool holds = false;
};

/// Numeric form of the bound Σ_{n≠m} r₂(n)|m−n|^{-2q} ≪ (log m)^{−q+½+o(1)}.
/// `holds` requires the computed tail plus its error bound to stay below.
inline LemmaCheck lemma_tail_check(const ArithmeticTable& table, std::int64_t m, double q, double slack = 0.5) {
  if (!(q > 1.0)) throw DomainError("lemma_tail_check needs q > 1");
  if (!table.is_representable(m) || m < 16) throw DomainError("lemma_tail_check needs m in N with m >= 16");
  const double s = 2.0 * q;
  LemmaCheck out;
  out.m = m;
  out.q = q;
  out.tail = table.sums().power(static_cast<double>(m), s, 0, table.x_max(), false, m).power;
  if (table.lattice()) {
    const auto t = circle_tail(static_cast<double>(table.x_max()), static_cast<double>(m), s);
    out.tail += t.power_estimate;
    out.tail_bound = t.power_residual;
  }
  out.bound = std::pow(std::log(static_cast<double>(m)), -q + 0.5 + slack);
  out.holds = out.tail + out.tail_bound <= out.bound;
  return out;
}

}  // namespace seba
