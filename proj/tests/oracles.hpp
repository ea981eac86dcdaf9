// Independent reference implementations used only by the tests.  Everything in
// here is deliberately written by a *different* route than the library code it
// checks: Bessel functions via Miller's downward recurrence instead of
// std::sph_bessel, Legendre polynomials as explicit Horner forms instead of the
// upward recurrence, and the Yukawa moment integrals in closed form instead of
// quadrature.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

// Spherical Bessel j_l(x) by Miller's algorithm: recurse j_{n-1} = (2n+1)/x *
// j_n - j_{n+1} downward from a seed far above l, then normalize against the
// known j_0 = sin(x)/x.  Accurate to ~1e-13 for the moderate arguments the
// tests use.
inline double sph_bessel_miller(int l, double x) {
  if (l < 0) throw std::invalid_argument("sph_bessel_miller: l < 0");
  if (x == 0.0) return l == 0 ? 1.0 : 0.0;
  if (x < 0.0) throw std::invalid_argument("sph_bessel_miller: x < 0");
  const int start = static_cast<int>(std::ceil(x)) + (l > static_cast<int>(x) ? l : static_cast<int>(x)) + 25;
  double jp = 0.0;          // j_{n+1}
  double jc = 1e-200;       // j_n, arbitrary seed; normalization fixes scale
  double result = (l >= start) ? jc : 0.0;
  for (int n = start - 1; n >= 0; --n) {
    const double jm = (2.0 * n + 3.0) / x * jc - jp;
    jp = jc;
    jc = jm;
    if (n == l) result = jc;
    if (std::abs(jc) > 1e250) {  // rescale before overflow
      jc *= 1e-250;
      jp *= 1e-250;
      if (n <= l) result *= 1e-250;  // rescale only once captured
    }
  }
  const double j0_exact = std::sin(x) / x;
  return result * (j0_exact / jc);
}

// Explicit Legendre polynomials, Horner form in x, up to l = 10.
inline double legendre_explicit(int l, double x) {
  const double x2 = x * x;
  switch (l) {
    case 0: return 1.0;
    case 1: return x;
    case 2: return (3.0 * x2 - 1.0) / 2.0;
    case 3: return x * (5.0 * x2 - 3.0) / 2.0;
    case 4: return ((35.0 * x2 - 30.0) * x2 + 3.0) / 8.0;
    case 5: return x * ((63.0 * x2 - 70.0) * x2 + 15.0) / 8.0;
    case 6: return (((231.0 * x2 - 315.0) * x2 + 105.0) * x2 - 5.0) / 16.0;
    case 7: return x * (((429.0 * x2 - 693.0) * x2 + 315.0) * x2 - 35.0) / 16.0;
    case 8: return ((((6435.0 * x2 - 12012.0) * x2 + 6930.0) * x2 - 1260.0) * x2 + 35.0) / 128.0;
    case 9: return x * ((((12155.0 * x2 - 25740.0) * x2 + 18018.0) * x2 - 4620.0) * x2 + 315.0) / 128.0;
    case 10: return (((((46189.0 * x2 - 109395.0) * x2 + 90090.0) * x2 - 30030.0) * x2 + 3465.0) * x2 - 63.0) / 256.0;
    default: throw std::invalid_argument("legendre_explicit: l > 10");
  }
}

// Closed forms for the radial moments that appear in the Born phase-shift and
// amplitude integrals (all for r from 0 to infinity):
//   int e^{-lam r} sin^2(k r) / r dr = (1/4) ln(1 + 4 k^2 / lam^2)
//   int e^{-lam r} sin(q r)     dr  = q / (q^2 + lam^2)
//   int e^{-lam r} sin(q r) / r dr  = arctan(q / lam)
inline double yukawa_sin2_over_r(double k, double lam) {
  return 0.25 * std::log1p(4.0 * k * k / (lam * lam));
}
inline double yukawa_sin(double q, double lam) {
  return q / (q * q + lam * lam);
}
inline double yukawa_sin_over_r(double q, double lam) {
  return std::atan2(q, lam);
}

// Legendre function of the second kind Q_l(z) for z > 1, upward recurrence:
//   Q_0 = (1/2) ln((z+1)/(z-1)),  Q_1 = z Q_0 - 1,
//   (l+1) Q_{l+1} = (2l+1) z Q_l - l Q_{l-1}.
// Stable upward for z > 1 at the small l the tests need.
inline double legendre_q(int l, double z) {
  if (z <= 1.0) throw std::invalid_argument("legendre_q: z <= 1");
  double qm = 0.5 * std::log((z + 1.0) / (z - 1.0));
  if (l == 0) return qm;
  double qc = z * qm - 1.0;
  for (int n = 1; n < l; ++n) {
    const double qn = ((2.0 * n + 1.0) * z * qc - n * qm) / (n + 1.0);
    qm = qc;
    qc = qn;
  }
  return qc;
}

// Plain composite Simpson on [a, b]; n must be even.  Used as a crude
// independent cross-check on smooth compactly supported integrands.
template <typename F>
double simpson(F&& f, double a, double b, std::size_t n) {
  if (n % 2 != 0) throw std::invalid_argument("simpson: n must be even");
  const double h = (b - a) / static_cast<double>(n);
  double acc = f(a) + f(b);
  for (std::size_t i = 1; i < n; ++i) {
    acc += f(a + h * static_cast<double>(i)) * ((i % 2 == 1) ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace oracles
