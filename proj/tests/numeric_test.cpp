#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <vector>

#include "generators.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"

namespace {

TEST(CompensatedSum, RecoversCancelledLowOrderBits) {
  seba::CompensatedSum<double> s;
  s += 1.0;
  for (int i = 0; i < 1000; ++i) s += 1e-16;
  s += -1.0;
  EXPECT_NEAR(s.value(), 1e-13, 1e-26);
  // Plain summation loses all of it.
  double naive = 1.0;
  for (int i = 0; i < 1000; ++i) naive += 1e-16;
  EXPECT_EQ(naive - 1.0, 0.0);
}

TEST(PairwiseSum, FixedOrderMatchesExactIntegers) {
  std::vector<double> xs;
  for (int i = 1; i <= 1001; ++i) xs.push_back(i);
  EXPECT_EQ(seba::pairwise_sum(xs), 1001.0 * 1002.0 / 2);
  EXPECT_EQ(seba::pairwise_sum({}), 0.0);
}

TEST(FormatDouble, RoundTripsExactly) {
  gen::Source src(7);
  for (int i = 0; i < 2000; ++i) {
    const double x = src.uniform(-1, 1) * std::pow(10.0, src.integer(-300, 300));
    EXPECT_EQ(std::strtod(seba::format_double(x).c_str(), nullptr), x);
  }
  EXPECT_EQ(seba::format_double(0.5), "0.5");
  EXPECT_EQ(seba::format_double(std::nan("")), "nan");
}

TEST(PowerLogIntegral, MatchesClosedFormSpecialCases) {
  // ∫_1^∞ u^{-2} du = 1; ∫_1^∞ u^{-2} log u du = 1.
  EXPECT_NEAR(seba::power_log_integral(1.0, 2.0, 1.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(seba::power_log_integral(1.0, 2.0, 0.0, 1.0), 1.0, 1e-15);
  // ∫_e^∞ u^{-3} log u du = e^{-2}(1/2 + 1/4).
  EXPECT_NEAR(seba::power_log_integral(std::exp(1.0), 3.0, 0.0, 1.0), std::exp(-2.0) * 0.75, 1e-15);
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(5000);
  seba::parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelFor, PropagatesExceptions) {
  EXPECT_THROW(seba::parallel_for(100, [](std::size_t i) { if (i == 42) throw std::runtime_error("x"); }, 3),
               std::runtime_error);
}

TEST(DeterministicSum, IndependentOfThreadCount) {
  auto term = [](std::size_t i) { return 1.0 / (1.0 + static_cast<double>(i) * 0.37); };
  const double one = seba::deterministic_sum(200000, term, 1 << 10, 1);
  for (unsigned t : {2u, 3u, 8u}) EXPECT_EQ(seba::deterministic_sum(200000, term, 1 << 10, t), one);
}

}  // namespace
