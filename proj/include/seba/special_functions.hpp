#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>

#include "seba/error.hpp"
#include "seba/numeric.hpp"

namespace seba {

using cplx = std::complex<double>;

inline bool is_nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real();
}

/// log Γ(z) on the principal sheet of the Lanczos form (g = 7, nine terms),
/// with reflection for Re z < ½. The imaginary part is only defined modulo
/// 2π; callers exponentiate.
inline cplx lgamma_complex(cplx z) {
  static constexpr std::array<double, 9> p{0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                           771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                           -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
  if (is_nonpositive_integer(z)) throw PoleError("log-gamma at a nonpositive integer");
  if (z.real() < 0.5) {
    return std::log(kPi) - std::log(std::sin(kPi * z)) - lgamma_complex(1.0 - z);
  }
  z -= 1.0;
  cplx x = p[0];
  for (int i = 1; i < 9; ++i) x += p[i] / (z + static_cast<double>(i));
  const cplx t = z + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

/// Γ(z). Real arguments go through std::tgamma.
inline cplx gamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) throw PoleError("gamma at a nonpositive integer");
  if (z.imag() == 0.0) return std::tgamma(z.real());
  return std::exp(lgamma_complex(z));
}

/// 1/Γ(z), entire; exactly zero at the nonpositive integers.
inline cplx rgamma_complex(cplx z) {
  if (is_nonpositive_integer(z)) return 0.0;
  if (z.imag() == 0.0) return 1.0 / std::tgamma(z.real());
  return std::exp(-lgamma_complex(z));
}

/// x^{-a} Γ(a, x) for x > 0 and complex a. For Re a ≥ 1 and x < Re a the
/// lower function is small, so Γ(a) − γ(a, x) is taken with the power
/// series of γ. Everywhere else Legendre's continued fraction
///   Γ(a,x) = e^{-x} x^a / (x+1−a − 1(1−a)/(x+3−a − 2(2−a)/(x+5−a − …)))
/// is evaluated with the modified Lentz method.
inline cplx scaled_upper_gamma(cplx a, double x, int max_iter = 20000) {
  if (!(x > 0)) throw DomainError("scaled_upper_gamma needs x > 0");
  if (a.real() >= 1.0 && x < a.real()) {
    // x^{-a}γ(a,x) = e^{-x} Σ_n x^n / (a(a+1)…(a+n))
    cplx term = 1.0 / a;
    cplx sum = term;
    for (int n = 1; n < max_iter; ++n) {
      term *= x / (a + static_cast<double>(n));
      sum += term;
      if (std::abs(term) < 1e-17 * std::abs(sum)) {
        const cplx lg = a.imag() == 0.0 ? cplx(std::lgamma(a.real())) : lgamma_complex(a);
        return std::exp(lg - a * std::log(x)) - std::exp(-x) * sum;
      }
    }
    throw ConvergenceError("incomplete gamma series did not converge");
  }
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-17;
  cplx b = x + 1.0 - a;
  cplx c = 1.0 / tiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 1; i <= max_iter; ++i) {
    const cplx an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const cplx del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) return std::exp(-x) * h;
  }
  throw ConvergenceError("incomplete gamma continued fraction did not converge");
}

/// Upper bound on |x^{-a} Γ(a, x)| e^{x} x valid for x > max(Re a − 1, 0):
/// 1 when Re a ≤ 1, else 1/(1 − (Re a − 1)/x).
inline double scaled_upper_gamma_bound_factor(double re_a, double x) {
  if (re_a <= 1.0) return 1.0;
  const double r = (re_a - 1.0) / x;
  if (r >= 1.0) return std::numeric_limits<double>::infinity();
  return 1.0 / (1.0 - r);
}

}  // namespace seba
