#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "seba/error.hpp"
#include "seba/numeric.hpp"

namespace seba {

/// Result of a power-kernel lattice sum: Σ w(n)|n−x|^{-s} and, when
/// requested, Σ w(n)|n−x|^{-s} log|n−x|.
struct PowerSums {
  double power = 0.0;
  double power_log = 0.0;
};

/// Hierarchical multipole summation of weighted one-dimensional kernels over
/// integer positions 0..N with nonnegative integer weights.
///
/// Each node of a perfect binary tree over fixed-size leaves stores the
/// scaled moments μ_k = Σ w(n)((n−c)/h)^k about its centre c, where h is the
/// node half-width. A node whose centre is at least κh away from the target
/// is summed from its moments; everything else is refined down to the leaves
/// and summed directly. With κ ≥ 3 and order 40 the far-field truncation is
/// below 1e-17 relative to the node mass, so queries cost O(order · log N)
/// plus a short direct near field.
///
/// The tree references the weight array; the owner keeps it alive.
class LatticeSumTree {
 public:
  static constexpr int kOrder = 40;
  static constexpr std::int64_t kLeafWidth = 256;

  explicit LatticeSumTree(std::span<const std::uint32_t> weights) : weights_(weights) {
    const auto n = static_cast<std::int64_t>(weights.size());
    std::int64_t leaves = 1;
    while (leaves * kLeafWidth < n) leaves *= 2;
    levels_ = 1;
    for (std::int64_t l = leaves; l > 1; l /= 2) ++levels_;
    moments_.resize(levels_);

    auto& leaf_level = moments_[0];
    leaf_level.assign(static_cast<std::size_t>(leaves) * (kOrder + 1), 0.0);
    const double h = kLeafWidth / 2.0;
    for (std::int64_t leaf = 0; leaf < leaves; ++leaf) {
      const std::int64_t a = leaf * kLeafWidth;
      const std::int64_t b = std::min(n, a + kLeafWidth);
      const double c = a + (kLeafWidth - 1) / 2.0;
      double* mu = &leaf_level[static_cast<std::size_t>(leaf) * (kOrder + 1)];
      for (std::int64_t i = a; i < b; ++i) {
        const std::uint32_t w = weights_[static_cast<std::size_t>(i)];
        if (w == 0) continue;
        const double u = (static_cast<double>(i) - c) / h;
        double p = w;
        for (int k = 0; k <= kOrder; ++k) {
          mu[k] += p;
          p *= u;
        }
      }
    }

    // Child-to-parent translation: u_parent = ½u_child ± ½, hence
    // μ_k^parent = 2^{-k} Σ_i C(k,i) (±1)^{k−i} μ_i^child.
    std::array<std::array<double, kOrder + 1>, kOrder + 1> binom{};
    for (int k = 0; k <= kOrder; ++k) {
      binom[k][0] = binom[k][k] = 1.0;
      for (int i = 1; i < k; ++i) binom[k][i] = binom[k - 1][i - 1] + binom[k - 1][i];
    }
    for (int level = 1; level < levels_; ++level) {
      const auto& child = moments_[level - 1];
      const std::size_t count = child.size() / (kOrder + 1) / 2;
      auto& parent = moments_[level];
      parent.assign(count * (kOrder + 1), 0.0);
      for (std::size_t p = 0; p < count; ++p) {
        const double* left = &child[(2 * p) * (kOrder + 1)];
        const double* right = &child[(2 * p + 1) * (kOrder + 1)];
        double* out = &parent[p * (kOrder + 1)];
        double scale = 1.0;
        for (int k = 0; k <= kOrder; ++k) {
          double acc = 0.0;
          for (int i = 0; i <= k; ++i) {
            const double sign = ((k - i) % 2 == 0) ? 1.0 : -1.0;
            acc += binom[k][i] * (sign * left[i] + right[i]);
          }
          out[k] = acc * scale;
          scale *= 0.5;
        }
      }
    }
  }

  std::int64_t size() const { return static_cast<std::int64_t>(weights_.size()); }

  /// Σ_{lo ≤ n ≤ hi} w(n)/(n − x). The caller guarantees no weighted n equals x.
  double cauchy(double x, std::int64_t lo, std::int64_t hi) const {
    CompensatedSum<double> acc;
    const double kappa = 3.0;
    visit(x, lo, hi, kappa, [&](const double* mu, double c, double h) {
      // 1/(n−x) = −(1/d) Σ (u/d)^k with d = x − c, u = n − c.
      const double d = x - c;
      const double rho = h / d;
      double term = 0.0;
      double p = 1.0;
      for (int k = 0; k <= kOrder; ++k) {
        term += mu[k] * p;
        p *= rho;
      }
      acc += -term / d;
    }, [&](std::int64_t n, std::uint32_t w) {
      acc += w / (static_cast<double>(n) - x);
    }, kNoExclusion);
    return acc.value();
  }

  /// Σ_{lo ≤ n ≤ hi, n ≠ exclude} w(n)|n − x|^{-s}, optionally with the
  /// log-weighted companion. Requires s > 0.
  PowerSums power(double x, double s, std::int64_t lo, std::int64_t hi, bool with_log = false,
                  std::int64_t exclude = kNoExclusion) const {
    // Series coefficients (s)_k/k! and their s-derivatives.
    std::array<double, kOrder + 1> coef{};
    std::array<double, kOrder + 1> dcoef{};
    coef[0] = 1.0;
    dcoef[0] = 0.0;
    double harmonic = 0.0;
    for (int k = 1; k <= kOrder; ++k) {
      coef[k] = coef[k - 1] * (s + k - 1) / k;
      harmonic += 1.0 / (s + k - 1);
      dcoef[k] = coef[k] * harmonic;
    }
    double kappa = 3.0;
    while (coef[kOrder] * (1.0 + harmonic) * std::pow(kappa, -(kOrder + 1)) * kappa / (kappa - 1.0) >
           1e-18) {
      kappa += 1.0;
    }
    CompensatedSum<double> pw;
    CompensatedSum<double> pl;
    visit(x, lo, hi, kappa, [&](const double* mu, double c, double h) {
      // |n−x|^{-s} = |d|^{-s} Σ_k (s)_k/k! (u/d)^k with d = x − c.
      const double d = x - c;
      const double rho = h / d;
      double series = 0.0;
      double dseries = 0.0;
      double p = 1.0;
      for (int k = 0; k <= kOrder; ++k) {
        const double m = mu[k] * p;
        series += coef[k] * m;
        dseries += dcoef[k] * m;
        p *= rho;
      }
      const double logd = std::log(std::abs(d));
      const double scale = std::exp(-s * logd);
      pw += scale * series;
      if (with_log) pl += scale * (logd * series - dseries);
    }, [&](std::int64_t n, std::uint32_t w) {
      const double dist = std::abs(static_cast<double>(n) - x);
      const double ld = std::log(dist);
      const double t = w * std::exp(-s * ld);
      pw += t;
      if (with_log) pl += t * ld;
    }, exclude);
    return {pw.value(), pl.value()};
  }

  static constexpr std::int64_t kNoExclusion = -1;

 private:
  template <typename Far, typename Near>
  void visit(double x, std::int64_t lo, std::int64_t hi, double kappa, Far&& far, Near&& near,
             std::int64_t exclude) const {
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, size() - 1);
    if (lo > hi) return;
    struct Item {
      int level;
      std::int64_t index;
    };
    std::vector<Item> stack;
    stack.reserve(4 * levels_ + 4);
    stack.push_back({levels_ - 1, 0});
    while (!stack.empty()) {
      const Item it = stack.back();
      stack.pop_back();
      const std::int64_t width = kLeafWidth << it.level;
      const std::int64_t a = it.index * width;
      const std::int64_t b = a + width - 1;
      if (b < lo || a > hi) continue;
      const bool inside = lo <= a && b <= hi;
      const double c = a + (width - 1) / 2.0;
      const double h = width / 2.0;
      const bool excluded_here = exclude >= a && exclude <= b;
      if (inside && !excluded_here && std::abs(x - c) >= kappa * h) {
        far(&moments_[it.level][static_cast<std::size_t>(it.index) * (kOrder + 1)], c, h);
        continue;
      }
      if (it.level == 0) {
        const std::int64_t from = std::max(a, lo);
        const std::int64_t to = std::min(b, hi);
        for (std::int64_t n = from; n <= to; ++n) {
          const std::uint32_t w = weights_[static_cast<std::size_t>(n)];
          if (w == 0 || n == exclude) continue;
          near(n, w);
        }
        continue;
      }
      // Push the child farther from x first so the nearer one is handled next.
      const Item left{it.level - 1, 2 * it.index};
      const Item right{it.level - 1, 2 * it.index + 1};
      if (x < c) {
        stack.push_back(right);
        stack.push_back(left);
      } else {
        stack.push_back(left);
        stack.push_back(right);
      }
    }
  }

  std::span<const std::uint32_t> weights_;
  int levels_ = 1;
  std::vector<std::vector<double>> moments_;
};

}  // namespace seba
