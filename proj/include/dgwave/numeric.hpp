#pragma once

#include <complex>
#include <cmath>
#include <utility>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace dgwave {

/// Extended-precision real used where the dispersion errors fall far below
/// double-precision rounding (errors of order 1e-40 and smaller).
using HighPrecision = boost::multiprecision::cpp_bin_float_100;

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
inline Real pi() {
  return boost::math::constants::pi<Real>();
}

/// e^{i theta}
template <typename Real>
inline Complex<Real> cis(const Real& theta) {
  using std::cos;
  using std::sin;
  return Complex<Real>(cos(theta), sin(theta));
}

template <typename Real>
inline Complex<Real> imag_unit() {
  return Complex<Real>(Real(0), Real(1));
}

/// Roots of a x^2 + b x + c = 0 (a != 0) without cancellation between -b and
/// the square root of the discriminant.
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> solve_quadratic(const Complex<Real>& a,
                                                        const Complex<Real>& b,
                                                        const Complex<Real>& c) {
  using std::sqrt;
  Complex<Real> root = sqrt(b * b - Real(4) * a * c);
  if (std::real(std::conj(b) * root) < Real(0)) root = -root;
  Complex<Real> q = Real(-0.5) * (b + root);
  if (q == Complex<Real>(Real(0))) {
    // b == 0 and c == 0: double root at zero
    return {q, q};
  }
  return {q / a, c / q};
}

/// Roots of lambda^2 - z lambda + 1 = 0, i.e. lambda + 1/lambda = z.
/// For real z in (-2, 2) the roots are returned on the unit circle exactly up to
/// rounding, with the positive-imaginary root first.
template <typename Real>
std::pair<Complex<Real>, Complex<Real>> solve_reciprocal_pair(const Complex<Real>& z) {
  using std::abs;
  using std::sqrt;
  if (std::imag(z) == Real(0) && abs(std::real(z)) < Real(2)) {
    const Real x = std::real(z);
    const Real y = sqrt(Real(4) - x * x);
    return {Complex<Real>(x / 2, y / 2), Complex<Real>(x / 2, -y / 2)};
  }
  auto [r1, r2] = solve_quadratic<Real>(Complex<Real>(Real(1)), -z, Complex<Real>(Real(1)));
  return {r1, r2};
}

}  // namespace dgwave
