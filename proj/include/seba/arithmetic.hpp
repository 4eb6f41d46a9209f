#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "seba/error.hpp"
#include "seba/lattice_sum_tree.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"

namespace seba {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

struct TableLimits {
  /// Upper bound on the resident size of a sieved table.
  std::size_t max_bytes = std::size_t{3} << 30;
};

/// Sieved arithmetic of the square lattice on [0, x_max]: the representation
/// numbers r₂(n), the count ω₁(n) of distinct prime factors ≡ 1 (mod 4), and
/// the ascending set 𝒩 of n with r₂(n) > 0 (0 included).
///
/// Immutable once built and cheap to copy; copies share storage, so one table
/// may be read concurrently from any number of threads. The multipole tree
/// used for lattice sums is built on first use.
class ArithmeticTable {
 public:
  ArithmeticTable() = default;

  /// Table with arbitrary weights, for synthetic or toy spectra. Such tables
  /// are treated as finitely supported: lattice-sum tails beyond x_max are
  /// zero rather than estimated from the circle law.
  static ArithmeticTable from_weights(std::vector<std::uint32_t> r2,
                                      std::vector<std::uint8_t> omega1 = {}) {
    if (r2.empty()) throw DomainError("from_weights: empty weight vector");
    if (omega1.empty()) omega1.assign(r2.size(), 0);
    if (omega1.size() != r2.size()) throw DomainError("from_weights: omega1 size mismatch");
    return ArithmeticTable(std::move(r2), std::move(omega1), /*lattice=*/false);
  }

  std::int64_t x_max() const { return static_cast<std::int64_t>(data_->r2.size()) - 1; }

  /// True when the weights are the sieved r₂ of ℤ², so circle-law tail
  /// estimates beyond x_max apply.
  bool lattice() const { return data_->lattice; }

  std::uint32_t r2(std::int64_t n) const {
    check_range(n);
    return data_->r2[static_cast<std::size_t>(n)];
  }

  /// ω₁(n), defined here for n ∈ 𝒩 only.
  int omega1(std::int64_t n) const {
    if (!is_representable(n)) throw DomainError("omega1: " + std::to_string(n) + " is not in N");
    return data_->omega1[static_cast<std::size_t>(n)];
  }

  bool is_representable(std::int64_t n) const {
    return n >= 0 && n <= x_max() && data_->r2[static_cast<std::size_t>(n)] > 0;
  }

  std::span<const std::int64_t> representable() const { return data_->representable; }
  std::span<const std::uint32_t> r2_values() const { return data_->r2; }
  std::span<const std::uint8_t> omega1_values() const { return data_->omega1; }

  /// Position of n in 𝒩.
  std::size_t index_of(std::int64_t n) const {
    const auto& rep = data_->representable;
    auto it = std::lower_bound(rep.begin(), rep.end(), n);
    if (it == rep.end() || *it != n) throw DomainError("index_of: " + std::to_string(n) + " is not in N");
    return static_cast<std::size_t>(it - rep.begin());
  }

  /// First position in 𝒩 whose element is ≥ x.
  std::size_t lower_index(double x) const {
    const auto& rep = data_->representable;
    return static_cast<std::size_t>(
        std::lower_bound(rep.begin(), rep.end(), x,
                         [](std::int64_t n, double v) { return static_cast<double>(n) < v; }) -
        rep.begin());
  }

  const LatticeSumTree& sums() const {
    std::call_once(data_->tree_once, [this] { data_->tree = std::make_unique<LatticeSumTree>(data_->r2); });
    return *data_->tree;
  }

  friend bool operator==(const ArithmeticTable& a, const ArithmeticTable& b) {
    return a.data_->lattice == b.data_->lattice && a.data_->r2 == b.data_->r2 &&
           a.data_->omega1 == b.data_->omega1;
  }

 private:
  friend ArithmeticTable build_table(std::int64_t x_max, TableLimits limits);
  friend ArithmeticTable assemble_table(std::vector<std::uint32_t>, std::vector<std::uint8_t>, bool);

  struct Data {
    std::vector<std::uint32_t> r2;
    std::vector<std::uint8_t> omega1;
    std::vector<std::int64_t> representable;
    bool lattice = true;
    mutable std::once_flag tree_once;
    mutable std::unique_ptr<LatticeSumTree> tree;
  };

  ArithmeticTable(std::vector<std::uint32_t> r2, std::vector<std::uint8_t> omega1, bool lattice)
      : data_(std::make_shared<Data>()) {
    data_->r2 = std::move(r2);
    data_->omega1 = std::move(omega1);
    data_->lattice = lattice;
    for (std::size_t n = 0; n < data_->r2.size(); ++n) {
      if (data_->r2[n] > 0) data_->representable.push_back(static_cast<std::int64_t>(n));
      else data_->omega1[n] = 0;
    }
  }

  void check_range(std::int64_t n) const {
    if (n < 0 || n > x_max())
      throw RangeError("n = " + std::to_string(n) + " outside table [0, " + std::to_string(x_max()) + "]");
  }

  std::shared_ptr<Data> data_;
};

/// Internal constructor used by the cache reader.
inline ArithmeticTable assemble_table(std::vector<std::uint32_t> r2, std::vector<std::uint8_t> omega1,
                                      bool lattice) {
  return ArithmeticTable(std::move(r2), std::move(omega1), lattice);
}

/// Smallest-prime-factor table on [0, limit]; spf[0] = spf[1] = 0.
inline std::vector<std::uint32_t> smallest_prime_factors(std::int64_t limit) {
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(limit) + 1, 0);
  for (std::int64_t i = 2; i <= limit; ++i) {
    if (spf[static_cast<std::size_t>(i)] != 0) continue;
    spf[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
    for (std::int64_t j = i * i; j <= limit; j += i) {
      if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(i);
    }
  }
  return spf;
}

/// Builds the table with a factorization sieve. For n ≥ 1,
/// r₂(n) = 4 Σ_{d|n} χ₄(d) = 4 Π_{p≡1(4)} (e_p + 1) · [all e_p even for p≡3(4)],
/// which falls out of the smallest-prime-factor factorization together
/// with ω₁(n). Each n is factored independently, so the index range is
/// processed in parallel chunks without changing the result.
inline ArithmeticTable build_table(std::int64_t x_max, TableLimits limits = {}) {
  if (x_max < 0) throw DomainError("build_table: x_max must be nonnegative");
  // r2 + omega1 + spf scratch + representable (≈ 1/4 of n at most).
  const double bytes = 11.0 * (static_cast<double>(x_max) + 1.0);
  if (bytes > static_cast<double>(limits.max_bytes))
    throw CapacityError("build_table: x_max = " + std::to_string(x_max) + " needs ~" +
                        std::to_string(static_cast<long long>(bytes)) + " bytes, budget is " +
                        std::to_string(limits.max_bytes));
  const auto spf = smallest_prime_factors(x_max);
  std::vector<std::uint32_t> r2(static_cast<std::size_t>(x_max) + 1, 0);
  std::vector<std::uint8_t> omega1(static_cast<std::size_t>(x_max) + 1, 0);
  r2[0] = 1;

  constexpr std::int64_t kChunk = 1 << 16;
  const std::size_t chunks = static_cast<std::size_t>((x_max + kChunk) / kChunk);
  parallel_for(chunks, [&](std::size_t c) {
    const std::int64_t from = std::max<std::int64_t>(1, static_cast<std::int64_t>(c) * kChunk);
    const std::int64_t to = std::min<std::int64_t>(x_max, (static_cast<std::int64_t>(c) + 1) * kChunk - 1);
    for (std::int64_t n = from; n <= to; ++n) {
      std::int64_t m = n;
      std::uint32_t count = 1;
      std::uint8_t w1 = 0;
      while (m > 1) {
        const std::uint32_t p = spf[static_cast<std::size_t>(m)];
        int e = 0;
        while (m % p == 0) {
          m /= p;
          ++e;
        }
        if (p % 4 == 1) {
          count *= static_cast<std::uint32_t>(e + 1);
          ++w1;
        } else if (p % 4 == 3 && e % 2 == 1) {
          count = 0;
        }
      }
      r2[static_cast<std::size_t>(n)] = 4 * count;
      omega1[static_cast<std::size_t>(n)] = w1;
    }
  });
  return ArithmeticTable(std::move(r2), std::move(omega1), true);
}

/// r₂ on [0, x_max] by direct accumulation over lattice shells: every
/// (x, y) with x² + y² ≤ x_max increments r₂(x² + y²). Independent of the
/// factorization route and used to cross-validate it.
inline std::vector<std::uint32_t> lattice_shell_r2(std::int64_t x_max) {
  std::vector<std::uint32_t> r2(static_cast<std::size_t>(x_max) + 1, 0);
  const auto radius = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x_max))) + 1;
  for (std::int64_t x = -radius; x <= radius; ++x) {
    for (std::int64_t y = -radius; y <= radius; ++y) {
      const std::int64_t n = x * x + y * y;
      if (n <= x_max) ++r2[static_cast<std::size_t>(n)];
    }
  }
  return r2;
}

/// r₂(n) / (4 · 2^{ω₁(n)}) for n ∈ 𝒩, n ≥ 1.
inline Rational f_value(const ArithmeticTable& table, std::int64_t n) {
  if (n <= 0 || !table.is_representable(n))
    throw DomainError("f_value: n = " + std::to_string(n) + " must be a positive element of N");
  return make_rational(table.r2(n), std::int64_t{4} << table.omega1(n));
}

/// Σ_{0 ≤ n ≤ x} r₂(n), exact.
inline std::int64_t summatory_r2(const ArithmeticTable& table, std::int64_t x) {
  if (x > table.x_max())
    throw RangeError("summatory_r2: x = " + std::to_string(x) + " exceeds x_max = " + std::to_string(table.x_max()));
  if (x < 0) return 0;
  const auto vals = table.r2_values().first(static_cast<std::size_t>(x) + 1);
  return std::accumulate(vals.begin(), vals.end(), std::int64_t{0});
}

/// Elements n ≥ n_min of 𝒩 with |log r₂(n)/log log n − ½ log 2| ≤ epsilon.
inline std::vector<std::int64_t> normal_order_filter(const ArithmeticTable& table, double epsilon,
                                                     std::int64_t n_min) {
  if (n_min < 16) throw DomainError("normal_order_filter: n_min must be at least 16");
  if (!(epsilon > 0)) throw DomainError("normal_order_filter: epsilon must be positive");
  std::vector<std::int64_t> out;
  const auto rep = table.representable();
  for (auto it = std::lower_bound(rep.begin(), rep.end(), n_min); it != rep.end(); ++it) {
    const auto n = *it;
    const double ratio = std::log(static_cast<double>(table.r2(n))) / std::log(std::log(static_cast<double>(n)));
    if (std::abs(ratio - 0.5 * kLog2) <= epsilon) out.push_back(n);
  }
  return out;
}

/// k ↦ #{n ∈ 𝒩, n ≤ x : ω₁(n) = k}.
inline std::map<int, std::int64_t> omega1_histogram(const ArithmeticTable& table, std::int64_t x) {
  if (x > table.x_max())
    throw RangeError("omega1_histogram: x = " + std::to_string(x) + " exceeds x_max = " + std::to_string(table.x_max()));
  std::map<int, std::int64_t> hist;
  for (const auto n : table.representable()) {
    if (n > x) break;
    ++hist[table.omega1(n)];
  }
  return hist;
}

/// |𝒩 ∩ [0, x]| · √(log x) / x, the empirical constant in Landau's count.
inline double landau_constant_estimate(const ArithmeticTable& table, std::int64_t x) {
  if (x < 3 || x > table.x_max()) throw RangeError("landau_constant_estimate: x outside [3, x_max]");
  const auto count = static_cast<double>(table.lower_index(static_cast<double>(x) + 0.5));
  return count * std::sqrt(std::log(static_cast<double>(x))) / static_cast<double>(x);
}

}  // namespace seba
