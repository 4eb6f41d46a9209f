#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "seba/error.hpp"
#include "seba/numeric.hpp"
#include "seba/parallel.hpp"
#include "seba/special_functions.hpp"

namespace seba {

/// Q(m, n) = a²m² + a⁻²n², the unimodular rectangular form.
struct RectangularForm {
  double a = 1.0;

  explicit RectangularForm(double a_ = 1.0) : a(a_) {
    if (!(a > 0) || !std::isfinite(a)) throw DomainError("rectangular form needs a > 0");
  }

  double operator()(std::int64_t m, std::int64_t n) const {
    const double x = a * static_cast<double>(m);
    const double y = static_cast<double>(n) / a;
    return x * x + y * y;
  }

  /// Smallest nonzero value of Q.
  double min_value() const { return std::min(a * a, 1.0 / (a * a)); }

  /// Half-diagonal of the fundamental cell in the coordinates where Q is
  /// Euclidean; bounds the lattice-point discrepancy
  ///   |#{Q ≤ t} − πt| ≤ 2πδ√t + πδ².
  double cell_radius() const { return 0.5 * std::sqrt(a * a + 1.0 / (a * a)); }

  double discrepancy_bound(double t) const {
    const double d = cell_radius();
    return 2.0 * kPi * d * std::sqrt(t) + kPi * d * d;
  }
};

enum class EpsteinMethod { direct, continued };

struct EpsteinValue {
  cplx s;
  cplx value;
  EpsteinMethod method = EpsteinMethod::continued;
  double certified_error = 0.0;
};

namespace detail {

/// Fills n_max[m], m = 0, 1, …, with the largest n ≥ 0 such that Q(m, n) ≤ R,
/// decided with the same floating evaluation of Q that the summands use.
inline std::int64_t quadrant_rows(const RectangularForm& Q, double R, std::vector<std::int64_t>& n_max) {
  n_max.clear();
  for (std::int64_t m = 0;; ++m) {
    const double rem = R - Q(m, 0);
    if (rem < 0) break;
    auto n = static_cast<std::int64_t>(std::floor(Q.a * std::sqrt(rem)));
    while (Q(m, n + 1) <= R) ++n;
    while (n >= 0 && Q(m, n) > R) --n;
    n_max.push_back(n);
  }
  return static_cast<std::int64_t>(n_max.size());
}

/// Σ over (m, n) ≠ 0 with Q ≤ R of term(Q), grouped by quadrant symmetry and
/// reduced row by row in a fixed order.
template <typename Term>
cplx lattice_sum(const RectangularForm& Q, double R, Term&& term, double* abs_sum = nullptr) {
  std::vector<std::int64_t> n_max;
  const auto rows = quadrant_rows(Q, R, n_max);
  std::vector<double> re(static_cast<std::size_t>(rows)), im(static_cast<std::size_t>(rows)),
      ab(static_cast<std::size_t>(rows));
  parallel_for(static_cast<std::size_t>(rows), [&](std::size_t mi) {
    const auto m = static_cast<std::int64_t>(mi);
    CompensatedSum<double> r, i, a;
    for (std::int64_t n = (m == 0 ? 1 : 0); n <= n_max[mi]; ++n) {
      const double w = (m > 0 ? 2.0 : 1.0) * (n > 0 ? 2.0 : 1.0);
      const cplx t = w * term(Q(m, n));
      r += t.real();
      i += t.imag();
      a += std::abs(t);
    }
    re[mi] = r.value();
    im[mi] = i.value();
    ab[mi] = a.value();
  });
  if (abs_sum) *abs_sum = pairwise_sum(ab);
  return {pairwise_sum(re), pairwise_sum(im)};
}

inline std::int64_t quadrant_count_estimate(const RectangularForm& Q, double R) {
  return static_cast<std::int64_t>(0.25 * kPi * R + Q.discrepancy_bound(R)) + 1;
}

}  // namespace detail

/// Default budget on the number of quadrant lattice points visited by the
/// direct (shell) summations.
inline constexpr std::int64_t kShellBudget = 200'000'000;

/// ζ_Q(s) = Σ_{(m,n)≠0} Q(m,n)^{-s} for Re s > 1 by direct summation over the
/// ellipse Q ≤ R, completed with the circle-law integral πR^{1−s}/(s−1).
/// The certified error bounds what the completion misses:
///   E(R)R^{-σ} + |s| ∫_R^∞ E(t) t^{-σ-1} dt,  E(t) = 2πδ√t + πδ².
/// R is doubled until that bound is below `tol`.
inline EpsteinValue epstein_direct(const RectangularForm& Q, cplx s, double tol = 1e-10,
                                   std::int64_t budget = kShellBudget) {
  const double sigma = s.real();
  if (!(sigma > 1.0)) throw DomainError("epstein_direct needs Re s > 1");
  if (!(tol > 0)) throw DomainError("epstein_direct needs tol > 0");
  const double d = Q.cell_radius();
  auto bound = [&](double R) {
    const double head = Q.discrepancy_bound(R) * std::pow(R, -sigma);
    const double integral =
        2.0 * kPi * d * std::pow(R, 0.5 - sigma) / (sigma - 0.5) + kPi * d * d * std::pow(R, -sigma) / sigma;
    return head + std::abs(s) * integral;
  };
  double R = 64.0;
  while (bound(R) > tol) {
    R *= 2.0;
    if (detail::quadrant_count_estimate(Q, R) > budget)
      throw ConvergenceError("epstein_direct: tolerance " + format_double(tol) + " at Re s = " +
                             format_double(sigma) + " exceeds the shell budget");
  }
  double abs_sum = 0.0;
  const cplx head = detail::lattice_sum(Q, R, [&](double q) { return std::exp(-s * std::log(q)); }, &abs_sum);
  const cplx tail = kPi * std::exp((1.0 - s) * std::log(R)) / (s - 1.0);
  EpsteinValue v;
  v.s = s;
  v.value = head + tail;
  v.method = EpsteinMethod::direct;
  v.certified_error = bound(R) + 8.0 * std::numeric_limits<double>::epsilon() * (abs_sum + std::abs(tail));
  return v;
}

/// Completed theta function
///   Λ(s) = −1/s − 1/(1−s) + Σ_{ξ≠0} e^{−πQ}[K(s, πQ) + K(1−s, πQ)],
/// K(a, x) = x^{−a}Γ(a, x) e^{x}. For a unimodular form that is its own dual
/// this equals π^{−s}Γ(s)ζ_Q(s) for all s ∉ {0, 1}. Returns Λ and a bound on
/// its absolute error.
inline std::pair<cplx, double> epstein_completed(const RectangularForm& Q, cplx s) {
  if (s == cplx(0.0) || s == cplx(1.0)) throw PoleError("Epstein zeta has a pole at s = 0 and s = 1");
  const cplx s1 = 1.0 - s;
  const double d = Q.cell_radius();
  // Tail over Q > R: |terms| ≤ e^{−πQ}(c_s + c_{1−s})/(πQ), summed against
  // the counting bound #{Q ≤ t} ≤ π(√t + δ)² ≤ π(2t + 2δ²).
  auto tail_bound = [&](double R) {
    const double x = kPi * R;
    const double c = scaled_upper_gamma_bound_factor(s.real(), x) + scaled_upper_gamma_bound_factor(s1.real(), x);
    return c / x * kPi * (2.0 * R + 2.0 / kPi + 2.0 * d * d) * std::exp(-x);
  };
  double R = 4.0;
  while (!(tail_bound(R) < 1e-19)) R += 1.0;
  double abs_sum = 0.0;
  const cplx sum = detail::lattice_sum(
      Q, R,
      [&](double q) {
        const double x = kPi * q;
        return scaled_upper_gamma(s, x) + scaled_upper_gamma(s1, x);
      },
      &abs_sum);
  const cplx poles = -1.0 / s - 1.0 / s1;
  const cplx lambda = poles + sum;
  const double eps = std::numeric_limits<double>::epsilon();
  const double err = tail_bound(R) + 16.0 * eps * (abs_sum + std::abs(poles));
  return {lambda, err};
}

/// ζ_Q(s) on ℂ ∖ {0, 1} through ζ_Q(s) = π^s Λ(s)/Γ(s).
inline EpsteinValue epstein_continued(const RectangularForm& Q, cplx s) {
  const auto [lambda, err] = epstein_completed(Q, s);
  const cplx pref = std::exp(s * std::log(kPi)) * rgamma_complex(s);
  EpsteinValue v;
  v.s = s;
  v.value = pref * lambda;
  v.method = EpsteinMethod::continued;
  v.certified_error = std::abs(pref) * err + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(v.value);
  return v;
}

/// Real ζ_Q(s) from the continued evaluator.
inline double zeta_Q(const RectangularForm& Q, double s) { return epstein_continued(Q, s).value.real(); }

/// φ_Q(s) = π^{2s−1} Γ(1−s)/Γ(s). Poles at the positive integers (from
/// Γ(1−s)); zero at the nonpositive integers (from 1/Γ(s)).
inline cplx phi_Q(cplx s) {
  if (s.imag() == 0.0 && s.real() >= 1.0 && std::floor(s.real()) == s.real())
    throw PoleError("phi_Q has a pole at the positive integer s = " + format_double(s.real()));
  if (is_nonpositive_integer(s)) return 0.0;
  if (s.imag() == 0.0) {
    const double x = s.real();
    return std::pow(kPi, 2.0 * x - 1.0) * std::tgamma(1.0 - x) / std::tgamma(x);
  }
  return std::exp((2.0 * s - 1.0) * std::log(kPi) + lgamma_complex(1.0 - s) - lgamma_complex(s));
}

/// log |φ_Q(s)| for real s; raises at integers, where φ_Q is 0 or infinite.
inline double log_abs_phi_Q(double s) {
  if (std::floor(s) == s) throw PoleError("log phi_Q is singular at integer s");
  return (2.0 * s - 1.0) * std::log(kPi) + std::lgamma(1.0 - s) - std::lgamma(s);
}

/// ζ_Q'(s) = −Σ Q^{−s} log Q for real s > 1.05 by shell summation, completed
/// with −π∫_R^∞ t^{−s} log t dt. With g(t) = t^{−s} log t the completion
/// error is at most E(R)g(R) + ∫_R^∞ E(t)|g'(t)| dt, |g'| ≤ t^{−s−1}(1 + s log t).
struct DerivativeValue {
  double value = 0.0;
  double certified_error = 0.0;
  double radius = 0.0;
};

inline DerivativeValue zeta_Q_derivative(const RectangularForm& Q, double s, double tol = 1e-8,
                                         std::int64_t budget = kShellBudget) {
  if (!(s > 1.05)) throw DomainError("zeta_Q_derivative needs s > 1.05");
  const double d = Q.cell_radius();
  auto bound = [&](double R) {
    const double g = std::pow(R, -s) * std::log(R);
    return Q.discrepancy_bound(R) * g + 2.0 * kPi * d * power_log_integral(R, s + 0.5, 1.0, s) +
           kPi * d * d * power_log_integral(R, s + 1.0, 1.0, s);
  };
  double R = 64.0;
  while (bound(R) > tol) {
    R *= 2.0;
    if (detail::quadrant_count_estimate(Q, R) > budget)
      throw ConvergenceError("zeta_Q_derivative: tolerance " + format_double(tol) + " exceeds the shell budget");
  }
  double abs_sum = 0.0;
  const double head = detail::lattice_sum(
                          Q, R,
                          [&](double q) {
                            const double l = std::log(q);
                            return cplx(-std::exp(-s * l) * l);
                          },
                          &abs_sum)
                          .real();
  const double tail = -kPi * power_log_integral(R, s, 0.0, 1.0);
  return {head + tail, bound(R) + 8.0 * std::numeric_limits<double>::epsilon() * (abs_sum + std::abs(tail)), R};
}

// ---------------------------------------------------------------------------
// Ground-state exponents

enum class LogPolicy {
  strict,   ///< log ζ_Q(2q) only where ζ_Q(2q) > 0
  modulus,  ///< log |ζ_Q(2q)|
};

struct GroundExponents {
  double q = 0.0;
  double d_star = 0.0;
  double D_star = 0.0;
  double zeta_2q = 0.0;
  bool shannon_branch = false;
};

/// ζ_Q(2) and the Shannon limit log ζ_Q(2) − 2ζ_Q'(2)/ζ_Q(2).
inline double ground_shannon(const RectangularForm& Q, double derivative_tol = 1e-9) {
  const double z2 = zeta_Q(Q, 2.0);
  const double dz2 = zeta_Q_derivative(Q, 2.0, derivative_tol).value;
  return std::log(z2) - 2.0 * dz2 / z2;
}

inline GroundExponents ground_exponents(const RectangularForm& Q, double q, LogPolicy policy = LogPolicy::strict) {
  GroundExponents g;
  g.q = q;
  if (q == 0.0 || q == 0.5) throw PoleError("ground exponents: 2q is a pole of zeta_Q");
  const double z2 = zeta_Q(Q, 2.0);
  if (q == 1.0) {
    g.zeta_2q = z2;
    g.d_star = std::log(z2);
    g.D_star = ground_shannon(Q);
    g.shannon_branch = true;
    return g;
  }
  g.zeta_2q = zeta_Q(Q, 2.0 * q);
  if (policy == LogPolicy::strict && !(g.zeta_2q > 0))
    throw DomainError("ground exponents: zeta_Q(2q) = " + format_double(g.zeta_2q) + " is not positive at q = " +
                      format_double(q));
  if (g.zeta_2q == 0.0) throw DomainError("ground exponents: zeta_Q(2q) vanishes");
  g.d_star = std::log(std::abs(g.zeta_2q));
  g.D_star = (g.d_star - q * std::log(z2)) / (1.0 - q);
  return g;
}

/// Symmetry of D* under q ↦ ½ − q. The functional equation gives
///   d*_{½−q} = d*_q − log φ_Q(2q)
/// and therefore
///   D*_{½−q} = (1−q)/(½+q) · (D*_q + (−log φ_Q(2q) + (2q−½) log ζ_Q(2))/(1−q)).
/// `residual` measures that relation. `literal_residual` measures the same
/// display with +log φ_Q(2q), which holds only where log φ_Q(2q) = 0.
/// Logarithms are taken of moduli: ζ_Q is negative on (0, 1).
struct SymmetryResult {
  double q = 0.0;
  double lhs = 0.0;          ///< D*_{½−q}
  double rhs = 0.0;          ///< relation with −log φ_Q(2q)
  double rhs_literal = 0.0;  ///< relation with +log φ_Q(2q)
  double residual = 0.0;
  double literal_residual = 0.0;
  double log_phi = 0.0;
};

inline SymmetryResult symmetry_check(const RectangularForm& Q, double q) {
  if (q == 1.0 || q == -0.5) throw DomainError("symmetry_check: q and 1/2 - q must both differ from 1");
  const auto gq = ground_exponents(Q, q, LogPolicy::modulus);
  const auto gp = ground_exponents(Q, 0.5 - q, LogPolicy::modulus);
  const double L = std::log(zeta_Q(Q, 2.0));
  const double lphi = log_abs_phi_Q(2.0 * q);
  const double k = (1.0 - q) / (0.5 + q);
  SymmetryResult r;
  r.q = q;
  r.lhs = gp.D_star;
  r.log_phi = lphi;
  r.rhs = k * (gq.D_star + (-lphi + (2.0 * q - 0.5) * L) / (1.0 - q));
  r.rhs_literal = k * (gq.D_star + (lphi + (2.0 * q - 0.5) * L) / (1.0 - q));
  r.residual = std::abs(r.lhs - r.rhs);
  r.literal_residual = std::abs(r.lhs - r.rhs_literal);
  return r;
}

// ---------------------------------------------------------------------------
// Modified moments near the ground state

/// ζ*_λ(s) = Σ_{ξ≠0} |Q(ξ) − λ|^{−s} for 0 ≤ λ < min Q, s > 1, written as
/// ζ_Q(s) plus the rapidly convergent correction Σ[(Q−λ)^{−s} − Q^{−s}],
/// which decays like sλQ^{−s−1}.
inline double modified_zeta(const RectangularForm& Q, double lambda, double s) {
  if (!(s > 1.0)) throw DomainError("modified moment needs s > 1");
  if (!(lambda >= 0.0)) throw DomainError("modified moment needs lambda >= 0");
  if (!(lambda < Q.min_value()))
    throw DomainError("modified moment: lambda = " + format_double(lambda) + " reaches the first nonzero value of Q");
  const double base = zeta_Q(Q, s);
  if (lambda == 0.0) return base;
  const double R = std::max(1e4, 4.0 * lambda);
  const double corr = detail::lattice_sum(Q, R, [&](double q) {
                        return cplx(std::exp(-s * std::log(q - lambda)) - std::exp(-s * std::log(q)));
                      }).real();
  const double tail = kPi * (std::pow(R - lambda, 1.0 - s) - std::pow(R, 1.0 - s)) / (s - 1.0);
  return base + corr + tail;
}

/// M*_{s/2}(λ) = ζ*_λ(s)/ζ*_λ(2)^{s/2}.
inline double modified_moment(const RectangularForm& Q, double lambda, double s) {
  return modified_zeta(Q, lambda, s) / std::pow(modified_zeta(Q, lambda, 2.0), 0.5 * s);
}

/// d/dλ M*_{s/2}(λ) at λ = 0:
///   F(s) = sζ_Q(s+1)/ζ_Q(2)^{s/2} − sζ_Q(s)ζ_Q(3)/ζ_Q(2)^{s/2+1}.
inline double modified_moment_slope(const RectangularForm& Q, double s) {
  const double z2 = zeta_Q(Q, 2.0);
  return s * zeta_Q(Q, s + 1.0) / std::pow(z2, 0.5 * s) -
         s * zeta_Q(Q, s) * zeta_Q(Q, 3.0) / std::pow(z2, 0.5 * s + 1.0);
}

}  // namespace seba
