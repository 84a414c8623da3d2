#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dgwave/numeric.hpp"
#include "dgwave/polylib.hpp"
#include "dgwave/scheme.hpp"

// Bloch-wave analysis of the semi-discrete schemes. A discrete Bloch wave
// oscillating in time as exp(-i omega t) is translated by one cell by the
// Floquet multiplier lambda; the exact multiplier is exp(i Omega), Omega = omega h.
//
// The kernels are templated on the real scalar: double for everyday use,
// HighPrecision when the errors sit far below double rounding.

namespace dgwave {

template <typename Real>
Real epsilon_of() {
  return std::numeric_limits<Real>::epsilon();
}

// ---------------------------------------------------------------------------
// Characteristic equation
// ---------------------------------------------------------------------------

template <typename Real>
struct CharacteristicCoefficients {
  int degree = 0;
  Real omega{0};
  Real alpha{0};
  Complex<Real> xi;  // Xi_N, real for real Omega
  Complex<Real> z;   // Z_N, purely imaginary for real Omega
  bool xi_degenerate = false;
  bool z_degenerate = false;
  // f(z) = a z^2 + b z + c with z = lambda + 1/lambda
  Real a{0}, b{0}, c{0};
};

namespace detail {

template <typename Real>
struct QuadraticInZ {
  Complex<Real> a, b, c;
};

template <typename Real>
QuadraticInZ<Real> quadratic_in_z(int degree, const HypergeometricQuartet<Real>& f, const Real& alpha) {
  const Real sign(degree % 2 == 0 ? 1 : -1);
  const Real one_minus = Real(1) - alpha * alpha;
  const Real one_plus = Real(1) + alpha * alpha;
  const auto& fm = f.fN_minus;
  const auto& fp = f.fN_plus;
  const auto& gm = f.fNp1_minus;
  const auto& gp = f.fNp1_plus;
  QuadraticInZ<Real> q;
  q.a = sign * one_minus * fm * fp;
  q.b = -sign * one_minus * (fm * gm + fp * gp) + one_plus * (fp * gm + fm * gp);
  q.c = Real(2) * sign * one_minus * (gm * gp - fm * fp) - one_plus * (fm * fm + fp * fp + gm * gm + gp * gp);
  return q;
}

template <typename Real>
Real magnitude(const Complex<Real>& v) {
  using std::abs;
  return abs(v);
}

template <typename Real>
Complex<Real> xi_ratio(const HypergeometricQuartet<Real>& f, bool& degenerate) {
  const Complex<Real> num =
      f.fN_minus * f.fN_minus + f.fN_plus * f.fN_plus + f.fNp1_minus * f.fNp1_minus + f.fNp1_plus * f.fNp1_plus;
  const Complex<Real> den = f.fN_minus * f.fNp1_plus + f.fN_plus * f.fNp1_minus;
  degenerate = magnitude(den) <= Real(64) * epsilon_of<Real>() * magnitude(num);
  return num / den;
}

// Eliminating lambda from the alpha = 1 system gives this numerator; the
// alternating-sign variant would make Z_N real.
template <typename Real>
Complex<Real> z_ratio(const HypergeometricQuartet<Real>& f, bool& degenerate) {
  const Complex<Real> num =
      f.fN_minus * f.fN_minus + f.fN_plus * f.fN_plus - f.fNp1_minus * f.fNp1_minus - f.fNp1_plus * f.fNp1_plus;
  const Complex<Real> den = f.fN_minus * f.fNp1_minus - f.fN_plus * f.fNp1_plus;
  const Real scale = magnitude(f.fN_minus) * magnitude(f.fNp1_minus);
  degenerate = magnitude(den) <= Real(64) * epsilon_of<Real>() * scale;
  return num / den;
}

template <typename Real>
Real realness_tolerance(const Complex<Real>& v) {
  return Real(1000) * epsilon_of<Real>() * (Real(1) + magnitude(v));
}

}  // namespace detail

/// Xi_N, Z_N and the coefficients a_N, b_N, c_N at real Omega. Throws
/// std::logic_error if the realness invariants fail beyond rounding.
template <typename Real>
CharacteristicCoefficients<Real> characteristic_coefficients(int degree, const Real& omega, const Real& alpha) {
  using std::abs;
  const auto f = quartet<Real>(degree, omega);
  CharacteristicCoefficients<Real> cc;
  cc.degree = degree;
  cc.omega = omega;
  cc.alpha = alpha;
  cc.xi = detail::xi_ratio(f, cc.xi_degenerate);
  cc.z = detail::z_ratio(f, cc.z_degenerate);
  const auto q = detail::quadratic_in_z(degree, f, alpha);
  for (const auto* v : {&q.a, &q.b, &q.c}) {
    if (abs(std::imag(*v)) > detail::realness_tolerance(*v)) {
      throw std::logic_error("characteristic_coefficients: a, b, c not real");
    }
  }
  if (!cc.xi_degenerate && abs(std::imag(cc.xi)) > detail::realness_tolerance(cc.xi)) {
    throw std::logic_error("characteristic_coefficients: Xi_N not real");
  }
  if (!cc.z_degenerate && abs(std::real(cc.z)) > detail::realness_tolerance(cc.z)) {
    throw std::logic_error("characteristic_coefficients: Z_N not imaginary");
  }
  cc.a = std::real(q.a);
  cc.b = std::real(q.b);
  cc.c = std::real(q.c);
  return cc;
}

/// The 4x4 matrix M(lambda) whose determinant divided by lambda^2 equals
/// a (lambda + 1/lambda)^2 + b (lambda + 1/lambda) + c.
Eigen::Matrix4cd build_M(int degree, double omega, double alpha, std::complex<double> lambda);

/// det M(lambda) / lambda^2.
std::complex<double> characteristic_determinant(int degree, double omega, double alpha, std::complex<double> lambda);

// ---------------------------------------------------------------------------
// Floquet multipliers
// ---------------------------------------------------------------------------

enum class RootRole { PhysicalPlus, PhysicalMinus, Spurious, Unpaired };

template <typename Real>
struct FloquetSolution {
  Method method = Method::A;
  int degree = 0;
  Complex<Real> omega;
  Real alpha{0};
  std::vector<Complex<Real>> roots;
  std::vector<RootRole> roles;
  std::vector<Complex<Real>> wavenumbers;  // k_{h,N} h with real part in [-pi, pi]
  std::optional<std::size_t> plus;         // index of the root approximating e^{+i Omega}
  std::optional<std::size_t> minus;        // index of the root approximating e^{-i Omega}
  std::optional<std::pair<Complex<Real>, Complex<Real>>> mu;  // (mu^+, mu^-), alpha = 1 only
  bool repeated = false;

  const Complex<Real>& lambda_plus() const {
    if (!plus) throw std::logic_error("FloquetSolution: no root paired with e^{+i Omega}");
    return roots[*plus];
  }
  std::size_t n_spurious() const {
    std::size_t n = 0;
    for (auto r : roles) n += r == RootRole::Spurious ? 1 : 0;
    return n;
  }
};

namespace detail {

template <typename Real>
std::size_t nearest(const std::vector<Complex<Real>>& roots, const Complex<Real>& target,
                    std::optional<std::size_t> skip = std::nullopt) {
  std::size_t best = roots.size();
  Real best_distance(0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (skip && *skip == i) continue;
    const Real d = magnitude(Complex<Real>(roots[i] - target));
    if (best == roots.size() || d < best_distance) {
      best = i;
      best_distance = d;
    }
  }
  return best;
}

template <typename Real>
bool coincide(const Complex<Real>& x, const Complex<Real>& y) {
  using std::max;
  using std::sqrt;
  const Real scale = max(Real(1), max(magnitude(x), magnitude(y)));
  return magnitude(Complex<Real>(x - y)) <= sqrt(epsilon_of<Real>()) * Real(1e-3) * scale;
}

template <typename Real>
void finish(FloquetSolution<Real>& sol) {
  using std::log;
  sol.wavenumbers.clear();
  for (const auto& r : sol.roots) {
    // e^{i k h} = lambda
    const Complex<Real> logr = log(r);
    sol.wavenumbers.push_back(Complex<Real>(std::imag(logr), -std::real(logr)));
  }
  for (std::size_t i = 0; i < sol.roots.size(); ++i) {
    for (std::size_t j = i + 1; j < sol.roots.size(); ++j) {
      if (coincide(sol.roots[i], sol.roots[j])) sol.repeated = true;
    }
  }
  sol.roles.assign(sol.roots.size(), RootRole::Spurious);
  if (sol.repeated) {
    sol.plus.reset();
    sol.minus.reset();
    sol.roles.assign(sol.roots.size(), RootRole::Unpaired);
    return;
  }
  if (sol.plus) sol.roles[*sol.plus] = RootRole::PhysicalPlus;
  if (sol.minus) sol.roles[*sol.minus] = RootRole::PhysicalMinus;
}

/// Roots of the auxiliary scheme's characteristic equation at (possibly
/// complex) Omega. alpha = 1 uses lambda^2 - Xi lambda + 1 = 0 with the
/// sin(Omega) branch rule, otherwise the quadratic in z = lambda + 1/lambda.
template <typename Real>
FloquetSolution<Real> aux_roots(int degree, const Complex<Real>& omega, const Real& alpha) {
  using std::abs;
  using std::sqrt;
  FloquetSolution<Real> sol;
  sol.method = Method::A;
  sol.degree = degree;
  sol.omega = omega;
  sol.alpha = alpha;
  const auto f = quartet<Real>(degree, omega);
  const Complex<Real> target_plus = std::exp(imag_unit<Real>() * omega);
  const Complex<Real> target_minus = std::exp(-imag_unit<Real>() * omega);

  if (alpha == Real(1)) {
    bool xi_bad = false;
    bool z_bad = false;
    const Complex<Real> xi = xi_ratio(f, xi_bad);
    const Complex<Real> zz = z_ratio(f, z_bad);
    const Real branch = std::real(std::sin(omega)) >= Real(0) ? Real(1) : Real(-1);
    if (std::imag(omega) == Real(0)) {
      // Xi_N is real; keep the unit-modulus pair exactly conjugate
      const Real x = std::real(xi);
      if (abs(x) < Real(2)) {
        const Complex<Real> root(Real(0), sqrt(Real(4) - x * x));
        sol.roots = {(x + branch * root) / Real(2), (x - branch * root) / Real(2)};
      } else {
        const Real root = sqrt(x * x - Real(4));
        sol.roots = {Complex<Real>((x + branch * root) / Real(2)), Complex<Real>((x - branch * root) / Real(2))};
      }
    } else {
      const Complex<Real> root = sqrt(Complex<Real>(xi * xi - Real(4)));
      sol.roots = {(xi + branch * root) / Real(2), (xi - branch * root) / Real(2)};
    }
    if (!z_bad) {
      const Complex<Real> mroot = sqrt(Complex<Real>(zz * zz + Real(4)));
      sol.mu = std::make_pair((zz - mroot) / Real(2), (zz + mroot) / Real(2));
    }
    sol.plus = 0;
    sol.minus = 1;
    finish(sol);
    return sol;
  }

  const auto q = quadratic_in_z(degree, f, alpha);
  std::vector<Complex<Real>> zs;
  if (magnitude(q.a) <= Real(64) * epsilon_of<Real>() * (magnitude(q.b) + magnitude(q.c))) {
    zs = {-q.c / q.b};
  } else {
    auto [z1, z2] = solve_quadratic<Real>(q.a, q.b, q.c);
    zs = {z1, z2};
  }
  for (auto& z : zs) {
    if (std::imag(omega) == Real(0)) z = Complex<Real>(std::real(z));  // real for real Omega
    auto [r1, r2] = solve_reciprocal_pair<Real>(z);
    sol.roots.push_back(r1);
    sol.roots.push_back(r2);
  }
  sol.plus = nearest(sol.roots, target_plus);
  sol.minus = nearest(sol.roots, target_minus, sol.plus);
  finish(sol);
  return sol;
}

/// Upwind: U = Psi_N^{1,+} and testing with v = 1 gives lambda = F_N^+ / F_{N+1}^-.
template <typename Real>
FloquetSolution<Real> upwind_roots(int degree, const Complex<Real>& omega) {
  FloquetSolution<Real> sol;
  sol.method = Method::U;
  sol.degree = degree;
  sol.omega = omega;
  const auto f = quartet<Real>(degree, omega);
  sol.roots = {f.fN_plus / f.fNp1_minus};
  sol.plus = 0;
  finish(sol);
  return sol;
}

/// Centered: the (a+, b+) block of M(lambda) at alpha = 0,
/// s F_N^- lambda^2 + (F_{N+1}^- - s F_{N+1}^+) lambda - F_N^+ = 0, s = (-1)^N.
template <typename Real>
FloquetSolution<Real> centered_roots(int degree, const Complex<Real>& omega) {
  FloquetSolution<Real> sol;
  sol.method = Method::C;
  sol.degree = degree;
  sol.omega = omega;
  const auto f = quartet<Real>(degree, omega);
  const Real s(degree % 2 == 0 ? 1 : -1);
  auto [r1, r2] = solve_quadratic<Real>(s * f.fN_minus, f.fNp1_minus - s * f.fNp1_plus, -f.fN_plus);
  sol.roots = {r1, r2};
  sol.plus = nearest(sol.roots, Complex<Real>(std::exp(imag_unit<Real>() * omega)));
  finish(sol);
  return sol;
}

}  // namespace detail

/// Roots at complex Omega (used when Omega comes from a dissipative operator).
template <typename Real>
FloquetSolution<Real> floquet_roots(Method method, int degree, const Complex<Real>& omega) {
  switch (method) {
    case Method::U: return detail::upwind_roots<Real>(degree, omega);
    case Method::C: return detail::centered_roots<Real>(degree, omega);
    case Method::A: return detail::aux_roots<Real>(degree, omega, Real(1));
    case Method::AStar: {
      auto sol = detail::aux_roots<Real>(degree, omega, alpha_star<Real>(degree));
      sol.method = Method::AStar;
      return sol;
    }
  }
  throw std::invalid_argument("floquet_roots: unknown method");
}

/// Auxiliary scheme with coupling alpha at real Omega > 0.
template <typename Real>
FloquetSolution<Real> solve_floquet(int degree, const Real& omega, const Real& alpha) {
  if (!(omega > Real(0))) throw std::invalid_argument("solve_floquet: Omega must be positive");
  auto sol = detail::aux_roots<Real>(degree, Complex<Real>(omega), alpha);
  return sol;
}

/// Any of the four methods at real Omega > 0 (A* uses alpha_star in Real).
template <typename Real>
FloquetSolution<Real> solve_floquet(Method method, int degree, const Real& omega) {
  if (!(omega > Real(0))) throw std::invalid_argument("solve_floquet: Omega must be positive");
  return floquet_roots<Real>(method, degree, Complex<Real>(omega));
}

template <typename Real>
struct RelativeError {
  Complex<Real> r_plus;                     // (e^{i Omega} - lambda_h) / e^{i Omega}
  Complex<Real> rho_plus;                   // same for the root labelled lambda_N^+
  std::optional<Complex<Real>> rho_minus;   // (e^{-i Omega} - lambda_N^-) / e^{-i Omega}
  Real dispersion{0};                       // Re((k - k_h) h)
  Real dissipation{0};                      // Im((k - k_h) h)
};

/// Relative errors of the paired roots.
template <typename Real>
RelativeError<Real> relative_error(const FloquetSolution<Real>& sol) {
  const Complex<Real> iw = imag_unit<Real>() * sol.omega;
  const Complex<Real> ep = std::exp(iw);
  const Complex<Real> em = std::exp(-iw);
  RelativeError<Real> e;
  const auto& lp = sol.lambda_plus();
  e.r_plus = (ep - lp) / ep;
  e.rho_plus = e.r_plus;
  if (sol.minus) e.rho_minus = (em - sol.roots[*sol.minus]) / em;
  const Complex<Real> diff = sol.omega - sol.wavenumbers[*sol.plus];
  e.dispersion = std::real(diff);
  e.dissipation = std::imag(diff);
  return e;
}

// ---------------------------------------------------------------------------
// Pade remainder
// ---------------------------------------------------------------------------

template <typename Real>
struct PadeRemainder {
  Complex<Real> remainder;  // (e^{i Omega} - F_{N+1}^+/F_N^-) / e^{i Omega}
  Real theta{0};            // Im E + Re E * Im H / Re H, H = (F_N^-)^2 e^{i Omega}
  bool degenerate = false;  // Re H vanishes
};

template <typename Real>
PadeRemainder<Real> pade_remainder(int degree, const Real& omega) {
  using std::abs;
  const auto f = quartet<Real>(degree, omega);
  const Complex<Real> e = cis<Real>(omega);
  PadeRemainder<Real> p;
  p.remainder = (e - f.fNp1_plus / f.fN_minus) / e;
  const Complex<Real> h = f.fN_minus * f.fN_minus * e;
  p.degenerate = abs(std::real(h)) <= Real(64) * epsilon_of<Real>() * abs(h);
  if (!p.degenerate) p.theta = std::imag(p.remainder) + std::real(p.remainder) * std::imag(h) / std::real(h);
  return p;
}

// ---------------------------------------------------------------------------
// Leading-order error models
// ---------------------------------------------------------------------------

enum class ErrorPart { Real, Imag };

struct Rational {
  long long num = 0;
  long long den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Leading term coefficient * Omega^order (times i for the imaginary part) of R.
struct LeadingTermModel {
  Method method = Method::A;
  int degree = 0;
  int order = 0;
  ErrorPart part = ErrorPart::Imag;
  double coefficient = 0.0;            // signed
  std::optional<Rational> tabulated;   // printed rational, degrees 0..2
  // second term of the upwind error, i * coefficient * Omega^order
  std::optional<int> secondary_order;
  std::optional<double> secondary_coefficient;
  std::optional<Rational> secondary_tabulated;
  double c_n = 0.0;                    // 1/2 [N!/(2N+1)!]^2
  double d_n = 0.0;
  std::optional<double> e_n;           // A* only

  std::complex<double> evaluate(double omega) const;
};

/// E_N to four digits, N = 0..17.
double tabulated_e_n(int degree);

LeadingTermModel leading_term(Method method, int degree);

// ---------------------------------------------------------------------------
// Measured error laws (evaluated in HighPrecision, returned as double)
// ---------------------------------------------------------------------------

/// Re or Im of R for the root paired with e^{+i Omega}.
double error_component(Method method, int degree, double omega, ErrorPart part);

/// Least-squares slope of log10 |y| against log10 x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Observed order of an error component over `points` log-spaced Omega in
/// [10^log10_lo, 10^log10_hi].
double observed_order(Method method, int degree, ErrorPart part, double log10_lo = -3.0, double log10_hi = -1.5,
                      int points = 13);

/// component / Omega^order at the given Omega.
double observed_coefficient(Method method, int degree, ErrorPart part, int order, double omega = 1e-2);

/// E_N = -Im R (2N+1)^{2N+2} / Omega^{2N+5} for A* at small Omega.
double fitted_e_n(int degree, double omega = 1e-3);

/// log10 |rho_N^+| for alpha = 1; NaN if the roots are repeated.
double log10_rho_plus(int degree, double omega);

/// |Pade remainder| at Omega.
double pade_remainder_magnitude(int degree, double omega);

// ---------------------------------------------------------------------------
// Large-N behaviour
// ---------------------------------------------------------------------------

enum class Regime { Oscillatory, Transition, Exponential, SuperExponential };

std::string to_string(Regime regime);

struct AsymptoticRegime {
  double kappa = 0.0;  // (2N+1)/Omega
  Regime regime = Regime::Oscillatory;
  std::optional<double> predicted_magnitude;            // super-exponential regime
  std::optional<double> predicted_log10_magnitude;
};

/// Transition band |2N+1 - Omega| <= Omega^{1/3}; super-exponential once
/// kappa >= e (the predicted base e Omega / (2 sqrt((2N+1)(2N+3))) is then
/// below 1/2).
AsymptoticRegime classify_regime(int degree, double omega);

/// log10 of the super-exponential prediction (finite even below 1e-308).
double super_exponential_log10(int degree, double omega);

// ---------------------------------------------------------------------------
// Cross-validation against the assembled DG operator
// ---------------------------------------------------------------------------

struct SymbolSample {
  double theta = 0.0;
  std::complex<double> eigenvalue;  // of the Bloch symbol
  std::complex<double> omega;       // i * eigenvalue * h
  double discrepancy = 0.0;         // min over Floquet roots |lambda - e^{i theta}|
};

struct CrossValidationReport {
  std::vector<SymbolSample> samples;
  double max_discrepancy = 0.0;
};

/// Eigenvalues of the assembled operator's Bloch symbol at theta_k =
/// -pi + (k + 1/2) 2 pi / n_theta; each mapped to Omega = i sigma h must admit
/// e^{i theta} among the Floquet roots.
CrossValidationReport cross_validate(const SchemeConfig& config, int n_cells = 8, int n_theta = 16);

/// Relative error R at real Omega from the operator route: solve
/// i sigma(theta) h = Omega for theta by secant iteration on the physical
/// symbol eigenvalue, then R = 1 - e^{i(theta - Omega)}.
std::complex<double> symbol_relative_error(const SchemeConfig& config, double omega, int n_cells = 8);

Method method_of(const SchemeConfig& config);

/// Rows scheme,N,alpha,omega,re_R,im_R,k_h_re,k_h_im,n_spurious.
void write_dispersion_sweep_csv(const std::string& path, const std::vector<Method>& methods,
                                const std::vector<int>& degrees, const std::vector<double>& omegas);

}  // namespace dgwave
