// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "seba/seba.hpp"

namespace {

using seba::kLog2;
using seba::kPi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

const seba::ArithmeticTable& table_3e6() {
  static const auto t = seba::build_table(3'000'000);
  return t;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

// 1. Sieved r2 against lattice enumeration for n ≤ 1e4.
Outcome arithmetic_exactness() {
  const std::int64_t x = 10'000;
  const auto table = seba::build_table(x);
  std::vector<std::uint32_t> count(x + 1, 0);
  for (std::int64_t a = -100; a <= 100; ++a)
    for (std::int64_t b = -100; b <= 100; ++b)
      if (a * a + b * b <= x) ++count[a * a + b * b];
  std::int64_t bad = 0;
  for (std::int64_t n = 0; n <= x; ++n)
    if (table.r2(n) != count[n]) ++bad;
  return {bad == 0, std::to_string(bad) + " mismatches over n <= 1e4"};
}

// 2. |A(x) − πx| ≤ 10 x^{3/4}.
Outcome circle_law() {
  const auto& t = table_3e6();
  bool ok = true;
  std::string d;
  for (const std::int64_t x : {1'000, 10'000, 100'000, 1'000'000}) {
    const double err = std::abs(static_cast<double>(seba::summatory_r2(t, x)) - kPi * static_cast<double>(x));
    const double bound = 10.0 * std::pow(static_cast<double>(x), 0.75);
    ok = ok && err <= bound;
    d += "x=" + std::to_string(x) + " err/bound=" + fmt(err / bound) + " ";
  }
  return {ok, d};
}

seba::SebaSpectrum first_intervals(seba::CouplingMode mode, std::size_t count) {
  seba::CouplingConfig cc;
  cc.mode = mode;
  const seba::SpectrumSolver solver(table_3e6(), cc);
  std::vector<std::size_t> js(count);
  for (std::size_t i = 0; i < count; ++i) js[i] = i;
  return seba::solve_indices(js, solver);
}

// 3. Strict interlacing for 1e4 intervals in both modes.
Outcome interlacing() {
  std::string d;
  bool ok = true;
  for (const auto mode : {seba::CouplingMode::weak, seba::CouplingMode::strong}) {
    const auto spec = first_intervals(mode, 10'000);
    std::int64_t bad = 0;
    for (const auto& r : spec.records)
      if (!(static_cast<double>(r.n_j) < r.lambda && r.lambda < static_cast<double>(r.n_next))) ++bad;
    ok = ok && bad == 0 && spec.records.size() == 10'000;
    d += std::string(mode == seba::CouplingMode::weak ? "weak" : "strong") + ": " +
         std::to_string(spec.records.size()) + " solved, " + std::to_string(bad) + " violations; ";
  }
  return {ok, d};
}

// 4. Mean tail against (2π/(2q−1)) G^{1−2q} at T = 1e6, G = T^{0.3}.
Outcome mean_tail_ratio() {
  const double T = 1e6, G = std::pow(T, 0.3);
  bool ok = true;
  std::string d;
  for (const double q : {1.0, 1.5, 2.0}) {
    const auto m = seba::mean_tail(T, G, q, table_3e6());
    ok = ok && m.ratio >= 0.95 && m.ratio <= 1.05;
    d += "q=" + fmt(q) + " ratio=" + fmt(m.ratio) + " ";
  }
  return {ok, d};
}

// 5. M_q = m_q / m_1^q on 1e3 weak-coupling profiles.
Outcome moment_identity() {
  const auto spec = first_intervals(seba::CouplingMode::weak, 1'000);
  const std::vector<double> qs{1.0, 1.25, 1.5, 2.0, 3.0};
  double worst = 0;
  std::size_t n = 0;
  for (const auto& r : spec.records) {
    const auto p = seba::moment_profile(r, qs, table_3e6());
    for (const double q : qs) {
      const double rhs = p.m_q.at(q) / std::pow(p.m_q.at(1.0), q);
      worst = std::max(worst, std::abs(p.M_q.at(q) - rhs) / std::abs(rhs));
    }
    ++n;
  }
  return {n == 1'000 && worst < 1e-10, std::to_string(n) + " profiles, worst relative " + fmt(worst)};
}

// 6. ζ_Q = 4ζβ at a = 1 and the functional-equation residual.
Outcome epstein_oracle() {
  bool ok = true;
  double worst_oracle = 0, worst_fe = 0;
  const seba::RectangularForm sq(1.0);
  for (const double s : {2.0, 3.0, 4.0}) {
    const double ref = 4.0 * oracle::riemann_zeta(s) * oracle::dirichlet_beta(s);
    worst_oracle = std::max(worst_oracle, std::abs(seba::zeta_Q(sq, s) - ref));
  }
  for (const double a : {1.0, 1.2}) {
    const seba::RectangularForm Q(a);
    for (const double s : {-0.5, 0.25, 0.75, 1.5}) {
      const auto lhs = seba::epstein_continued(Q, s).value;
      const auto rhs = seba::phi_Q(s) * seba::epstein_continued(Q, 1.0 - s).value;
      worst_fe = std::max(worst_fe, std::abs(lhs - rhs));
    }
  }
  ok = worst_oracle < 1e-10 && worst_fe < 1e-10;
  return {ok, "oracle " + fmt(worst_oracle) + ", functional equation " + fmt(worst_fe)};
}

// 7. D* symmetry under q → ½ − q, and the fixed point q = ¼.
Outcome symmetry() {
  double worst = 0;
  bool fixed = true;
  for (const double a : {1.0, 1.2}) {
    const seba::RectangularForm Q(a);
    for (const double q : {0.05, 0.15, 0.25, 0.35, 0.45}) worst = std::max(worst, seba::symmetry_check(Q, q).residual);
    const auto c = seba::symmetry_check(Q, 0.25);
    const auto g = seba::ground_exponents(Q, 0.25, seba::LogPolicy::modulus);
    fixed = fixed && c.residual == 0.0 && c.log_phi == 0.0 && c.lhs == g.D_star;
  }
  return {worst < 1e-8 && fixed, "worst residual " + fmt(worst) + (fixed ? ", fixed point exact" : ", fixed point off")};
}

// 8. Shannon limit of D* and the derivative of ζ_Q at 2.
Outcome shannon_limit() {
  double worst_limit = 0, worst_deriv = 0;
  for (const double a : {1.0, 1.2}) {
    const seba::RectangularForm Q(a);
    const double z2 = seba::zeta_Q(Q, 2.0);
    const auto d = seba::zeta_Q_derivative(Q, 2.0, 1e-9);
    const double shannon = std::log(z2) - 2.0 * d.value / z2;
    for (const double q : {1.0 - 1e-4, 1.0 + 1e-4})
      worst_limit = std::max(worst_limit, std::abs(seba::ground_exponents(Q, q).D_star - shannon));
    const double h = 1e-4;
    const double fd = (seba::zeta_Q(Q, 2.0 + h) - seba::zeta_Q(Q, 2.0 - h)) / (2.0 * h);
    worst_deriv = std::max(worst_deriv, std::abs(d.value - fd));
  }
  return {worst_limit < 1e-3 && worst_deriv < 1e-6,
          "limit gap " + fmt(worst_limit) + ", derivative vs difference " + fmt(worst_deriv)};
}

// 9a. Estimator on a synthetic spectrum with prescribed moments and gaps.
bool synthetic_estimator(std::string& d) {
  const std::vector<double> qs{1.25, 1.5, 2.0};
  double worst = 0;
  for (const double alpha : {0.3, 0.4, 0.45}) {
    std::vector<seba::ProfiledRecord> rows;
    std::vector<double> running;
    double acc = 0;
    for (std::int64_t n = 1000, j = 0; n <= 1'000'000; n += 97, ++j) {
      const double ln = std::log(static_cast<double>(n));
      const double Delta = std::pow(ln, alpha);
      auto r = seba::make_record(j, n, n + 97, static_cast<double>(n) + Delta);
      seba::MomentProfile p;
      p.lambda = r.lambda;
      p.Delta = r.Delta;
      p.n_tilde = n;
      p.q_grid = qs;
      const double h = 0.5 * kLog2 * std::log(ln);
      for (const double q : qs) {
        p.m_q[q] = std::exp(h);
        p.h_q[q] = h;
        p.H_q[q] = h;
      }
      p.h_1 = h;
      rows.push_back({r, p});
      acc += r.Delta;
      running.push_back(acc / static_cast<double>(j + 1));
    }
    seba::EstimatorConfig cfg;
    cfg.normalization = seba::Normalization::asymptotic;
    const auto rep = seba::fractal_estimates_from_profiles(rows, running, qs, cfg);
    for (const double q : qs) {
      const double expect = (1.0 / (2.0 * alpha)) * (1.0 - 1.0 / (2.0 * q)) * kLog2;
      worst = std::max(worst, std::abs(rep.d_hat.at(q) - expect));
    }
  }
  d += "(a) worst |d - formula| " + fmt(worst) + "; ";
  return worst < 1e-6;
}

// 9b. Median Δ·√log λ over dyadic windows of the weak spectrum up to 1e6.
bool scaled_gap_medians(std::string& d) {
  seba::CouplingConfig cc;
  const auto table = seba::build_table(seba::required_table_bound(1'000'000, cc));
  const auto spec = seba::solve_range(0, 1'000'000, table, cc);
  std::vector<std::pair<double, double>> blocks;
  for (double lo = 1024; lo < 1e6; lo *= 2) blocks.push_back({lo, std::min(2 * lo, 1e6)});
  const auto meds = seba::scaled_delta_medians(spec, blocks);
  double hi = 0;
  int rises = 0;
  for (std::size_t i = 0; i < meds.size(); ++i) {
    hi = std::max(hi, meds[i].median);
    if (i > 0 && meds[i].median > meds[i - 1].median) ++rises;
  }
  const bool bounded = hi < 2.0;
  d += "(b) medians " + fmt(meds.front().median) + " .. " + fmt(meds.back().median) + " over " +
       std::to_string(meds.size()) + " windows, max " + fmt(hi) + (bounded ? " bounded" : " unbounded") + ", " +
       std::to_string(rises) + " increases; ";
  return bounded && rises == 0;
}

// 9c. D_q = d_q at c = ½ log 2.
bool collapse(std::string& d) {
  double worst = 0;
  for (const double alpha : {0.3, 0.4, 0.45}) {
    const auto range = seba::admissible_q_range(alpha);
    for (int i = 1; i <= 20; ++i) {
      const double q = range->first + (range->second - range->first) * i / 20.0;
      const auto t = seba::theory_exponents(alpha, 0.5 * kLog2, i == 20 ? range->second : q);
      worst = std::max(worst, std::abs(t.D_q - t.d_q) / std::abs(t.d_q));
    }
  }
  d += "(c) worst relative |D - d| " + fmt(worst);
  return worst < 1e-13;
}

Outcome fractal_substitutes() {
  std::string d;
  const bool a = synthetic_estimator(d);
  const bool b = scaled_gap_medians(d);
  const bool c = collapse(d);
  return {a && b && c, d};
}

// 10. Tail-lemma numeric form on 100 filtered elements.
Outcome lemma_tail() {
  const auto& t = table_3e6();
  const auto kept = seba::density_filter(t, 10'000, 1'000'000);
  if (kept.size() < 100) return {false, "only " + std::to_string(kept.size()) + " elements pass the filters"};
  std::string d = std::to_string(kept.size()) + " pass the filters; ";
  bool ok = true;
  for (const double q : {1.5, 2.0}) {
    int fails = 0;
    for (int i = 0; i < 100; ++i) {
      const auto m = kept[static_cast<std::size_t>(i) * (kept.size() - 1) / 99];
      if (!seba::lemma_tail_check(t, m, q).holds) ++fails;
    }
    ok = ok && fails == 0;
    d += "q=" + fmt(q) + ": " + std::to_string(fails) + "/100 violate; ";
  }
  return {ok, d};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "arithmetic exactness", 10, arithmetic_exactness},
      {2, "circle law", 30, circle_law},
      {3, "interlacing", 60, interlacing},
      {4, "mean tail constant", 300, mean_tail_ratio},
      {5, "moment identity", 1e9, moment_identity},
      {6, "Epstein oracle", 10, epstein_oracle},
      {7, "D* symmetry", 10, symmetry},
      {8, "Shannon limit", 1e9, shannon_limit},
      {9, "fractal-exponent substitutes", 1e9, fractal_substitutes},
      {10, "tail lemma numeric form", 120, lemma_tail},
  };
  int failed = 0;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool timely = secs <= c.seconds;
    const bool pass = o.pass && timely;
    while (!o.detail.empty() && (o.detail.back() == ' ' || o.detail.back() == ';')) o.detail.pop_back();
    if (!pass) ++failed;
    std::printf("%s %d %s: %s [%.1f s%s]\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                timely ? "" : ", over time limit");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
