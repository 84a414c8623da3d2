#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "dgwave/numeric.hpp"

// Polynomial kernels on the reference interval [-1, 1]: Jacobi and Legendre
// polynomials, Gauss-Legendre quadrature, terminating 1F1 series and the
// polynomial eigenfunctions of the Bloch-wave problem.

namespace dgwave {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  int exact_degree = 0;  // integrates polynomials up to this degree exactly

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule (exact to degree 2n-1).
QuadratureRule gauss_legendre(int n_points);

/// Rule used for every bilinear form at polynomial degree N: N+2 points.
inline QuadratureRule bilinear_rule(int degree) { return gauss_legendre(degree + 2); }

/// Jacobi polynomial P_m^{(p,q)}(s) by the standard three-term recurrence.
template <typename Real>
Real jacobi(int m, const Real& p, const Real& q, const Real& s) {
  if (m < 0) throw std::invalid_argument("jacobi: negative degree");
  if (!(p > Real(-1)) || !(q > Real(-1))) {
    throw std::invalid_argument("jacobi: parameters must exceed -1");
  }
  Real prev(1);
  if (m == 0) return prev;
  Real cur = (p - q) / 2 + (p + q + 2) * s / 2;
  for (int k = 2; k <= m; ++k) {
    const Real n(k);
    const Real c = 2 * n + p + q;
    const Real a1 = 2 * n * (n + p + q) * (c - 2);
    const Real a2 = (c - 1) * (p * p - q * q);
    const Real a3 = (c - 2) * (c - 1) * c;
    const Real a4 = 2 * (n + p - 1) * (n + q - 1) * c;
    const Real next = ((a2 + a3 * s) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Orthonormal Legendre basis phi_k = sqrt((2k+1)/2) P_k on [-1, 1]:
/// values of phi_0..phi_N at s.
Eigen::VectorXd legendre_values(int degree, double s);
/// Derivatives phi_0'..phi_N' at s.
Eigen::VectorXd legendre_derivatives(int degree, double s);

/// K(l, k) = integral of phi_l' phi_k over [-1, 1]; the weak derivative in the
/// orthonormal basis. The projection of v' has coefficients K^T c.
Eigen::MatrixXd derivative_matrix(int degree);

/// Terminating confluent hypergeometric series sum_{m=0}^{|a|} (a)_m/(b)_m z^m/m!
/// for a <= 0. Throws std::domain_error if (b)_m vanishes before the series ends.
template <typename Real>
Complex<Real> hyp1f1_terminating(int a, int b, const Complex<Real>& z) {
  if (a > 0) throw std::domain_error("hyp1f1_terminating: a must be a non-positive integer");
  const int terms = -a;
  if (b <= 0 && -b < terms) {
    throw std::domain_error("hyp1f1_terminating: (b)_m vanishes for m <= |a| (a=" +
                            std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  Complex<Real> term(Real(1));
  Complex<Real> sum = term;
  for (int m = 0; m < terms; ++m) {
    term *= Real(a + m) / Real(b + m) / Real(m + 1);
    term *= z;
    sum += term;
  }
  return sum;
}

/// F_N^{-+} = 1F1(-N, -2N-1, -+ i Omega), F_{N+1}^{-+} = 1F1(-N-1, -2N-1, -+ i Omega).
template <typename Real>
struct HypergeometricQuartet {
  Complex<Real> omega;
  Complex<Real> fN_minus;
  Complex<Real> fN_plus;
  Complex<Real> fNp1_minus;
  Complex<Real> fNp1_plus;
};

template <typename Real>
HypergeometricQuartet<Real> quartet(int degree, const Complex<Real>& omega) {
  if (degree < 0) throw std::invalid_argument("quartet: negative degree");
  const Complex<Real> iw = imag_unit<Real>() * omega;
  const int b = -2 * degree - 1;
  return {omega,
          hyp1f1_terminating<Real>(-degree, b, -iw),
          hyp1f1_terminating<Real>(-degree, b, iw),
          hyp1f1_terminating<Real>(-degree - 1, b, -iw),
          hyp1f1_terminating<Real>(-degree - 1, b, iw)};
}

template <typename Real>
HypergeometricQuartet<Real> quartet(int degree, const Real& omega) {
  return quartet<Real>(degree, Complex<Real>(omega, Real(0)));
}

/// N!/(2N+1)! as a running product.
template <typename Real>
Real factorial_ratio(int degree) {
  Real r(1);
  for (int k = degree + 1; k <= 2 * degree + 1; ++k) r /= Real(k);
  return r;
}

enum class PsiKind { OnePlus, TwoPlus, OneMinus, TwoMinus };

/// Psi_N^{i,+-}(s) = sum_m (+-i Omega)^m (2N+1-m)!/(2N+1)! P_m^{(a,b)}(s) with
/// (a,b) = (N-m, N-m+1) for i=1 and (N-m+1, N-m) for i=2.
template <typename Real>
Complex<Real> eigenfunction_value(int degree, const Real& omega, PsiKind kind, const Real& s) {
  const bool plus = kind == PsiKind::OnePlus || kind == PsiKind::TwoPlus;
  const bool first = kind == PsiKind::OnePlus || kind == PsiKind::OneMinus;
  const Complex<Real> z = Complex<Real>(Real(0), plus ? omega : -omega);
  Complex<Real> power(Real(1));
  Real ratio(1);  // (2N+1-m)!/(2N+1)!
  Complex<Real> sum(Real(0));
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) {
      power *= z;
      ratio /= Real(2 * degree + 2 - m);
    }
    const Real p(first ? degree - m : degree - m + 1);
    const Real q(first ? degree - m + 1 : degree - m);
    sum += power * ratio * jacobi<Real>(m, p, q, s);
  }
  return sum;
}

struct EndpointValues {
  std::complex<double> at_minus_one;
  std::complex<double> at_plus_one;
};

/// The four eigenfunctions in the orthonormal Legendre basis with their
/// endpoint values.
struct EigenfunctionFrame {
  int degree = 0;
  double omega = 0.0;
  Eigen::VectorXcd psi1p, psi2p, psi1m, psi2m;
  EndpointValues end1p, end2p, end1m, end2m;

  const Eigen::VectorXcd& coefficients(PsiKind kind) const;
  const EndpointValues& endpoints(PsiKind kind) const;
};

EigenfunctionFrame eigenfunctions(int degree, double omega);

/// Legendre coefficients of L^{+-} v = -+ (i Omega / 2) v + v'.
Eigen::VectorXcd apply_wave_operator(int sign, double omega, const Eigen::VectorXcd& coefficients);

/// Legendre coefficients of a function sampled through the rule (projection).
Eigen::VectorXcd project_to_legendre(int degree, const QuadratureRule& rule,
                                     const Eigen::VectorXcd& samples_at_nodes);

/// Evaluate a Legendre expansion at s.
std::complex<double> evaluate_legendre(const Eigen::VectorXcd& coefficients, double s);

}  // namespace dgwave
