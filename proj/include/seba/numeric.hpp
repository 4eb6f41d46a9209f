#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace seba {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kLog2 = std::numbers::ln2;

/// Neumaier-compensated running sum. Addition order is the caller's, so the
/// result is reproducible whenever the order is.
template <typename Real = double>
class CompensatedSum {
 public:
  CompensatedSum() = default;
  explicit CompensatedSum(Real init) : sum_(init) {}

  void add(Real x) {
    const Real t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(Real x) {
    add(x);
    return *this;
  }

  CompensatedSum& operator+=(const CompensatedSum& other) {
    add(other.sum_);
    add(other.comp_);
    return *this;
  }

  Real value() const { return sum_ + comp_; }

 private:
  Real sum_ = 0;
  Real comp_ = 0;
};

/// Pairwise reduction in a fixed tree order. Used to combine per-chunk
/// partial sums so the result does not depend on how chunks were scheduled.
inline double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  std::vector<double> level(xs.begin(), xs.end());
  while (level.size() > 1) {
    std::vector<double> next((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next[i / 2] = level[i] + level[i + 1];
    if (level.size() % 2 == 1) next.back() = level.back();
    level.swap(next);
  }
  return level.front();
}

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// ∫_{u0}^∞ u^{-p} (A + B log u) du for p > 1, u0 > 0.
inline double power_log_integral(double u0, double p, double A, double B) {
  const double pm1 = p - 1.0;
  const double head = std::pow(u0, -pm1);
  return head * (A / pm1 + B * (std::log(u0) / pm1 + 1.0 / (pm1 * pm1)));
}

}  // namespace seba
