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

#include "seba/error.hpp"
#include "seba/multifractal.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"
#include "seba/spectrum.hpp"

namespace seba {

/// How α̂ is obtained for a window.
enum class AlphaSource {
  log_ratio,      ///< mean of log Δ_j / log log ñ_j over the filtered window
  mean_distance,  ///< log⟨Δ⟩ / log log x_hi over the filtered window
  fixed,          ///< EstimatorConfig::alpha_fixed
};

/// Which scaling parameter N_j divides the entropies.
enum class Normalization {
  support,     ///< N = 2πG with G solving ⟨Δ⟩^{2q}(2π/(2q−1))G^{1−2q} = 1, ⟨Δ⟩ the running mean
  asymptotic,  ///< log N = α̂·2q/(2q−1)·log log ñ, the leading term of the above
  weak,        ///< N = (log ñ)^{½ log 2}
};

struct EstimatorConfig {
  double x_lo = 16.0;
  double x_hi = std::numeric_limits<double>::infinity();
  AlphaSource alpha_source = AlphaSource::log_ratio;
  double alpha_fixed = 0.0;
  Normalization normalization = Normalization::support;
  bool normal_order_filter = true;  ///< on ρ(ñ) = r₂(ñ)/4, as in the density filters
  double normal_order_epsilon = 0.25;
  bool delta_filter = true;  ///< Δ_j ≤ (log ñ_j)^{α̂+ε}
  double delta_epsilon = 0.25;
  std::int64_t min_block = 32;  ///< dyadic blocks with fewer elements are dropped
  /// Subtract log 4 from every entropy, i.e. measure the four rotation
  /// orbits of ξ instead of ξ itself.
  bool reduce_units = false;
  ZetaWindow zeta;
};

struct BlockEstimate {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t count = 0;
  double c_mean = 0.0;                 ///< mean log m₁ / log log ñ
  std::map<double, double> d_mean;     ///< mean h_q / log N_q
  std::map<double, double> e_mean;     ///< mean h_1 / log N_q
  std::map<double, double> D_mean;     ///< mean H_q / log N_q
};

struct ExponentReport {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::int64_t records_in_window = 0;
  std::int64_t filtered = 0;
  double alpha_hat = 0.0;
  AlphaSource alpha_source = AlphaSource::log_ratio;
  Normalization normalization = Normalization::support;
  bool reduce_units = false;
  double mean_Delta = 0.0;
  double c_hat = 0.0;
  std::vector<double> q_grid;
  std::map<double, double> G;  ///< window-level, from the filtered ⟨Δ⟩
  std::map<double, double> N;
  std::map<double, double> d_hat;
  std::map<double, double> D_hat;         ///< max d̂ and min ĉ-term combined afterwards
  std::map<double, double> D_hat_direct;  ///< max over blocks of mean H_q / log N
  bool orderings_differ = false;
  bool theory_applicable = false;
  std::optional<std::pair<double, double>> q_admissible;
  std::map<double, double> d_theory;  ///< admissible q only
  std::map<double, double> D_theory;  ///< admissible q only, at c = ĉ when ĉ ∈ [½ log 2, 1]
  std::vector<BlockEstimate> blocks;
};

/// One input row of the estimator: a record and its moment profile. The
/// profile must contain q = 1 and every q of the grid.
struct ProfiledRecord {
  SpectrumRecord record;
  MomentProfile profile;
};

namespace detail {

inline double log_log(double n) { return std::log(std::log(n)); }

inline double log_N(Normalization mode, double q, double n_tilde, double running_mean_delta, double alpha) {
  switch (mode) {
    case Normalization::support:
      return std::log(scaling_parameter_N(essential_support_G(running_mean_delta, q)));
    case Normalization::asymptotic:
      return alpha * 2.0 * q / (2.0 * q - 1.0) * log_log(n_tilde);
    case Normalization::weak:
      return 0.5 * kLog2 * log_log(n_tilde);
  }
  return 0.0;
}

}  // namespace detail

/// Windowed fractal-exponent estimates from precomputed profiles, rows in
/// ascending λ. `running_mean_delta[i]` is ⟨Δ⟩ over the whole spectrum up to
/// row i and is only read in support normalization. The normal-order filter
/// needs the table, so here it is the caller's job; the Δ filter is applied.
inline ExponentReport fractal_estimates_from_profiles(const std::vector<ProfiledRecord>& rows,
                                                      const std::vector<double>& running_mean_delta,
                                                      const std::vector<double>& q_grid, const EstimatorConfig& cfg) {
  if (q_grid.empty()) throw DomainError("fractal_estimates: empty q grid");
  if (rows.size() != running_mean_delta.size()) throw DomainError("fractal_estimates: running mean size mismatch");
  for (const double q : q_grid)
    if (!(q > 0.5)) throw DomainError("fractal_estimates: every q must exceed 1/2");

  ExponentReport rep;
  rep.x_lo = cfg.x_lo;
  rep.x_hi = cfg.x_hi;
  rep.q_grid = q_grid;
  rep.alpha_source = cfg.alpha_source;
  rep.normalization = cfg.normalization;
  rep.reduce_units = cfg.reduce_units;

  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].record;
    if (r.lambda < cfg.x_lo || r.lambda > cfg.x_hi) continue;
    if (r.n_tilde < 16) continue;  // log log ñ must be positive
    idx.push_back(i);
  }
  rep.records_in_window = static_cast<std::int64_t>(idx.size());
  if (idx.empty()) throw WindowError("fractal_estimates: no records in the window");

  auto alpha_of = [&](const std::vector<std::size_t>& set) {
    if (cfg.alpha_source == AlphaSource::fixed) return cfg.alpha_fixed;
    CompensatedSum<double> acc;
    for (const auto i : set) {
      const auto& r = rows[i].record;
      acc += cfg.alpha_source == AlphaSource::log_ratio ? std::log(r.Delta) / detail::log_log(r.n_tilde) : r.Delta;
    }
    const double mean = acc.value() / static_cast<double>(set.size());
    if (cfg.alpha_source == AlphaSource::log_ratio) return mean;
    const double top = std::isfinite(cfg.x_hi) ? cfg.x_hi : rows[set.back()].record.lambda;
    return std::log(mean) / detail::log_log(top);
  };

  // The Δ threshold needs α̂; take it from the window before that filter.
  const std::vector<std::size_t>& kept = idx;
  const double alpha_pre = alpha_of(kept);
  std::vector<std::size_t> set;
  for (const auto i : kept) {
    const auto& r = rows[i].record;
    if (cfg.delta_filter && r.Delta > std::pow(std::log(static_cast<double>(r.n_tilde)), alpha_pre + cfg.delta_epsilon))
      continue;
    set.push_back(i);
  }
  rep.filtered = static_cast<std::int64_t>(set.size());
  if (set.empty()) throw WindowError("fractal_estimates: filtered set is empty");
  rep.alpha_hat = alpha_of(set);
  if (cfg.normalization == Normalization::asymptotic && !(rep.alpha_hat > 0.0))
    throw DomainError("fractal_estimates: asymptotic normalization needs a positive alpha estimate");
  const double shift = cfg.reduce_units ? std::log(4.0) : 0.0;

  CompensatedSum<double> dsum;
  for (const auto i : set) dsum += rows[i].record.Delta;
  rep.mean_Delta = dsum.value() / static_cast<double>(set.size());
  for (const double q : q_grid) {
    rep.G[q] = essential_support_G(rep.mean_Delta, q);
    rep.N[q] = scaling_parameter_N(rep.G[q]);
  }

  // Dyadic blocks [2^k, 2^{k+1}) in λ.
  std::map<int, std::vector<std::size_t>> by_block;
  for (const auto i : set) by_block[static_cast<int>(std::floor(std::log2(rows[i].record.lambda)))].push_back(i);
  for (const auto& [k, members] : by_block) {
    if (static_cast<std::int64_t>(members.size()) < cfg.min_block) continue;
    BlockEstimate b;
    b.lo = std::ldexp(1.0, k);
    b.hi = std::ldexp(1.0, k + 1);
    b.count = static_cast<std::int64_t>(members.size());
    CompensatedSum<double> c;
    for (const auto i : members)
      c += (rows[i].profile.h_1 - shift) / detail::log_log(static_cast<double>(rows[i].record.n_tilde));
    b.c_mean = c.value() / static_cast<double>(members.size());
    for (const double q : q_grid) {
      CompensatedSum<double> d, e, D;
      for (const auto i : members) {
        const auto& r = rows[i].record;
        const auto& p = rows[i].profile;
        const double ln = detail::log_N(cfg.normalization, q, static_cast<double>(r.n_tilde), running_mean_delta[i],
                                        rep.alpha_hat);
        if (!(ln > 0.0)) throw DomainError("fractal_estimates: log N is not positive; the window is too low");
        d += (p.h_q.at(q) - shift) / ln;
        e += (p.h_1 - shift) / ln;
        D += (p.H_q.at(q) - shift) / ln;
      }
      const double cnt = static_cast<double>(members.size());
      b.d_mean[q] = d.value() / cnt;
      b.e_mean[q] = e.value() / cnt;
      b.D_mean[q] = D.value() / cnt;
    }
    rep.blocks.push_back(std::move(b));
  }
  if (rep.blocks.empty()) throw WindowError("fractal_estimates: no dyadic block reaches the minimum size");

  rep.c_hat = std::numeric_limits<double>::infinity();
  for (const auto& b : rep.blocks) rep.c_hat = std::min(rep.c_hat, b.c_mean);
  for (const double q : q_grid) {
    double d_max = -std::numeric_limits<double>::infinity();
    double e_min = std::numeric_limits<double>::infinity();
    double D_max = -std::numeric_limits<double>::infinity();
    for (const auto& b : rep.blocks) {
      d_max = std::max(d_max, b.d_mean.at(q));
      e_min = std::min(e_min, b.e_mean.at(q));
      D_max = std::max(D_max, b.D_mean.at(q));
    }
    rep.d_hat[q] = d_max;
    rep.D_hat_direct[q] = D_max;
    rep.D_hat[q] = q == 1.0 ? D_max : (d_max - q * e_min) / (1.0 - q);
    if (std::abs(rep.D_hat[q] - rep.D_hat_direct[q]) > 1e-12 * std::max(1.0, std::abs(rep.D_hat[q])))
      rep.orderings_differ = true;
  }

  rep.q_admissible = admissible_q_range(rep.alpha_hat);
  rep.theory_applicable = rep.q_admissible.has_value();
  if (rep.theory_applicable) {
    const bool c_ok = rep.c_hat >= 0.5 * kLog2 && rep.c_hat <= 1.0;
    for (const double q : q_grid) {
      if (!(q > rep.q_admissible->first && q <= rep.q_admissible->second)) continue;
      const double c = c_ok ? rep.c_hat : 0.5 * kLog2;
      rep.d_theory[q] = theory_exponents(rep.alpha_hat, c, q).d_q;
      if (c_ok && q != 1.0) rep.D_theory[q] = theory_exponents(rep.alpha_hat, c, q).D_q;
    }
  }
  return rep;
}

/// Profiles every record of `spec` inside the window and runs the estimator.
inline ExponentReport fractal_estimates(const SebaSpectrum& spec, const ArithmeticTable& table,
                                        const std::vector<double>& q_grid, const EstimatorConfig& cfg = {}) {
  std::vector<double> grid = q_grid;
  grid.push_back(1.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<SpectrumRecord> recs = spec.records;
  std::sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) { return a.lambda < b.lambda; });
  std::vector<double> running(recs.size());
  CompensatedSum<double> acc;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    acc += recs[i].Delta;
    running[i] = acc.value() / static_cast<double>(i + 1);
  }

  std::vector<std::size_t> take;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    const auto& r = recs[i];
    if (r.lambda < cfg.x_lo || r.lambda > cfg.x_hi || r.n_tilde < 16) continue;
    if (cfg.normal_order_filter && !normal_order_ok(table, r.n_tilde, cfg.normal_order_epsilon)) continue;
    take.push_back(i);
  }
  std::vector<ProfiledRecord> rows(take.size());
  std::vector<double> run(take.size());
  parallel_for(take.size(), [&](std::size_t k) {
    const auto& r = recs[take[k]];
    rows[k] = {r, moment_profile(r, grid, table, cfg.zeta)};
    run[k] = running[take[k]];
  });
  auto rep = fractal_estimates_from_profiles(rows, run, q_grid, cfg);
  rep.records_in_window = 0;
  for (const auto& r : recs)
    if (r.lambda >= cfg.x_lo && r.lambda <= cfg.x_hi && r.n_tilde >= 16) ++rep.records_in_window;
  return rep;
}

inline std::string to_string(AlphaSource a) {
  switch (a) {
    case AlphaSource::log_ratio: return "log_ratio";
    case AlphaSource::mean_distance: return "mean_distance";
    case AlphaSource::fixed: return "fixed";
  }
  return "?";
}

inline std::string to_string(Normalization n) {
  switch (n) {
    case Normalization::support: return "support";
    case Normalization::asymptotic: return "asymptotic";
    case Normalization::weak: return "weak";
  }
  return "?";
}

}  // namespace seba
