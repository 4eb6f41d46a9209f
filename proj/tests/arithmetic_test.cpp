#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "seba/arithmetic.hpp"

namespace {

const seba::ArithmeticTable& table_1e6() {
  static const auto t = seba::build_table(1'000'000);
  return t;
}

TEST(BuildTable, ZeroBoundHoldsOnlyOrigin) {
  const auto t = seba::build_table(0);
  EXPECT_EQ(t.r2(0), 1u);
  EXPECT_EQ(t.representable().size(), 1u);
}

TEST(BuildTable, SmallValuesMatchEnumeration) {
  EXPECT_EQ(seba::build_table(10).r2(5), oracle::r2_brute(5));
  EXPECT_EQ(seba::build_table(10).r2(5), 8u);
  EXPECT_EQ(seba::build_table(10).r2(3), 0u);
  EXPECT_EQ(seba::build_table(30).r2(25), oracle::r2_brute(25));
  EXPECT_EQ(seba::build_table(30).r2(25), 12u);
}

TEST(BuildTable, RepresentableSetPrefix) {
  const auto t = seba::build_table(20);
  const std::vector<std::int64_t> expected{0, 1, 2, 4, 5, 8, 9, 10, 13, 16};
  const auto rep = t.representable();
  ASSERT_GE(rep.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(rep[i], expected[i]);
}

TEST(BuildTable, SieveMatchesEnumerationAndCharacterFormula) {
  const auto t = seba::build_table(10000);
  const auto shells = seba::lattice_shell_r2(10000);
  for (std::int64_t n = 0; n <= 10000; ++n) {
    ASSERT_EQ(t.r2(n), oracle::r2_brute(n)) << n;
    ASSERT_EQ(t.r2(n), shells[n]) << n;
    if (n >= 1) {
      ASSERT_EQ(static_cast<std::int64_t>(t.r2(n)), oracle::r2_divisor_character(n)) << n;
    }
  }
}

TEST(BuildTable, StructuralInvariants) {
  const auto& t = table_1e6();
  gen::Source src(3);
  for (int i = 0; i < 5000; ++i) {
    const auto n = src.integer(1, t.x_max());
    EXPECT_EQ(t.r2(n) % 4, 0u);
    // r₂(n) > 0 iff every prime ≡ 3 (mod 4) has even exponent.
    std::int64_t m = n;
    while (m % 2 == 0) m /= 2;
    bool ok = true;
    for (std::int64_t p = 3; p * p <= m; p += 2) {
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (p % 4 == 3 && e % 2) ok = false;
    }
    if (m > 1 && m % 4 == 3) ok = false;
    EXPECT_EQ(t.r2(n) > 0, ok) << n;
    if (t.is_representable(n)) {
      EXPECT_EQ(t.omega1(n), oracle::omega1_trial(n)) << n;
    }
  }
  const auto rep = t.representable();
  for (std::size_t i = 1; i < rep.size(); ++i) ASSERT_LT(rep[i - 1], rep[i]);
}

TEST(BuildTable, ResultIndependentOfThreadCount) {
  ::setenv("SEBA_THREADS", "1", 1);
  const auto one = seba::build_table(300000);
  ::setenv("SEBA_THREADS", "5", 1);
  const auto five = seba::build_table(300000);
  ::unsetenv("SEBA_THREADS");
  EXPECT_TRUE(one == five);
}

TEST(BuildTable, RejectsNegativeAndOverBudget) {
  EXPECT_THROW(seba::build_table(-1), seba::DomainError);
  EXPECT_THROW(seba::build_table(1'000'000, seba::TableLimits{1000}), seba::CapacityError);
}

TEST(Table, AccessorsValidate) {
  const auto t = seba::build_table(100);
  EXPECT_THROW(t.r2(101), seba::RangeError);
  EXPECT_THROW(t.omega1(3), seba::DomainError);
  EXPECT_EQ(t.omega1(0), 0);
  EXPECT_EQ(t.index_of(5), 4u);
  EXPECT_THROW(t.index_of(6), seba::DomainError);
}

TEST(FValue, ExactRationals) {
  const auto t = seba::build_table(100);
  EXPECT_EQ(seba::f_value(t, 1), (seba::Rational{1, 1}));
  EXPECT_EQ(seba::f_value(t, 5), (seba::Rational{1, 1}));
  EXPECT_EQ(seba::f_value(t, 25), (seba::Rational{3, 2}));
  EXPECT_THROW(seba::f_value(t, 0), seba::DomainError);
  EXPECT_THROW(seba::f_value(t, 3), seba::DomainError);
}

TEST(FValue, ReconstructsRepresentationNumber) {
  const auto& t = table_1e6();
  for (const auto n : t.representable()) {
    if (n == 0) continue;
    const auto f = seba::f_value(t, n);
    ASSERT_EQ(f.num * 4 * (std::int64_t{1} << t.omega1(n)), static_cast<std::int64_t>(t.r2(n)) * f.den);
  }
}

TEST(SummatoryR2, SmallValuesAndRange) {
  const auto t = seba::build_table(100);
  EXPECT_EQ(seba::summatory_r2(t, 0), 1);
  EXPECT_EQ(seba::summatory_r2(t, 10), 37);
  EXPECT_THROW(seba::summatory_r2(t, 101), seba::RangeError);
}

TEST(SummatoryR2, CircleLaw) {
  const auto& t = table_1e6();
  EXPECT_NEAR(seba::summatory_r2(t, 1'000'000) / (seba::kPi * 1e6), 1.0, 1e-3);
  // Running check of |A(x) − πx| ≤ 10 x^{3/4} over every integer x in range.
  std::int64_t acc = 0;
  const auto r2 = t.r2_values();
  for (std::int64_t x = 0; x <= t.x_max(); ++x) {
    acc += r2[x];
    if (x >= 1000) {
      ASSERT_LE(std::abs(acc - seba::kPi * x), 10 * std::pow(x, 0.75)) << x;
    }
  }
}

TEST(NormalOrderFilter, BoundaryBehaviour) {
  const auto& t = table_1e6();
  const auto all = seba::normal_order_filter(t, 10.0, 16);
  EXPECT_EQ(all.size(), t.representable().size() - t.lower_index(16));
  EXPECT_TRUE(seba::normal_order_filter(t, 1e-12, 16).empty());
  EXPECT_THROW(seba::normal_order_filter(t, 0.3, 15), seba::DomainError);
}

TEST(NormalOrderFilter, MonotoneInEpsilonAndSubsetOfN) {
  const auto& t = table_1e6();
  std::vector<std::int64_t> prev;
  for (const double eps : {0.05, 0.1, 0.2, 0.3, 0.5, 1.0}) {
    const auto cur = seba::normal_order_filter(t, eps, 16);
    EXPECT_TRUE(std::is_sorted(cur.begin(), cur.end()));
    EXPECT_TRUE(std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()));
    for (const auto n : cur) ASSERT_TRUE(t.is_representable(n));
    prev = cur;
  }
}

TEST(Omega1Histogram, SmallCaseAndPartition) {
  const auto t = seba::build_table(100);
  const auto h = seba::omega1_histogram(t, 10);
  EXPECT_EQ(h.at(0), 6);  // 0, 1, 2, 4, 8, 9
  EXPECT_EQ(h.at(1), 2);  // 5, 10
  const auto& big = table_1e6();
  const auto hb = seba::omega1_histogram(big, 1'000'000);
  std::int64_t total = 0;
  int mode = 0;
  std::int64_t best = 0;
  for (const auto& [k, c] : hb) {
    total += c;
    if (c > best) {
      best = c;
      mode = k;
    }
  }
  EXPECT_EQ(total, static_cast<std::int64_t>(big.representable().size()));
  // Qualitative: the mode sits within one of ½ log log x ≈ 1.3.
  EXPECT_LE(std::abs(mode - 0.5 * std::log(std::log(1e6))), 1.0);
  EXPECT_THROW(seba::omega1_histogram(t, 101), seba::RangeError);
}

TEST(Landau, EmpiricalConstantIsReportedAndPlausible) {
  const double b = seba::landau_constant_estimate(table_1e6(), 1'000'000);
  EXPECT_GT(b, 0.5);
  EXPECT_LT(b, 1.2);
}

TEST(FromWeights, CustomTablesAreFinitelySupported) {
  const auto t = seba::ArithmeticTable::from_weights({0, 0, 0, 7, 0});
  EXPECT_FALSE(t.lattice());
  EXPECT_EQ(t.representable().size(), 1u);
  EXPECT_EQ(t.r2(3), 7u);
  EXPECT_THROW(seba::ArithmeticTable::from_weights({}), seba::DomainError);
}

}  // namespace
