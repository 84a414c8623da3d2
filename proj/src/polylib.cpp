#include "dgwave/polylib.hpp"

#include <numbers>

namespace dgwave {

QuadratureRule gauss_legendre(int n_points) {
  if (n_points < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  QuadratureRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  rule.exact_degree = 2 * n_points - 1;

  const int half = (n_points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n_points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n_points; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n_points * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n_points; ++k) {
      const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n_points * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n_points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) rule.nodes[n_points / 2] = 0.0;
  return rule;
}

Eigen::VectorXd legendre_values(int degree, double s) {
  Eigen::VectorXd p(degree + 1);
  p[0] = 1.0;
  if (degree >= 1) p[1] = s;
  for (int k = 2; k <= degree; ++k) {
    p[k] = ((2 * k - 1) * s * p[k - 1] - (k - 1) * p[k - 2]) / k;
  }
  for (int k = 0; k <= degree; ++k) p[k] *= std::sqrt((2 * k + 1) / 2.0);
  return p;
}

Eigen::VectorXd legendre_derivatives(int degree, double s) {
  // P_k' = (k+1)/2 P_{k-1}^{(1,1)}
  Eigen::VectorXd d(degree + 1);
  d[0] = 0.0;
  for (int k = 1; k <= degree; ++k) {
    d[k] = std::sqrt((2 * k + 1) / 2.0) * 0.5 * (k + 1) * jacobi<double>(k - 1, 1.0, 1.0, s);
  }
  return d;
}

Eigen::MatrixXd derivative_matrix(int degree) {
  const QuadratureRule rule = bilinear_rule(degree);
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(degree + 1, degree + 1);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::VectorXd phi = legendre_values(degree, rule.nodes[q]);
    const Eigen::VectorXd dphi = legendre_derivatives(degree, rule.nodes[q]);
    k.noalias() += rule.weights[q] * dphi * phi.transpose();
  }
  return k;
}

const Eigen::VectorXcd& EigenfunctionFrame::coefficients(PsiKind kind) const {
  switch (kind) {
    case PsiKind::OnePlus: return psi1p;
    case PsiKind::TwoPlus: return psi2p;
    case PsiKind::OneMinus: return psi1m;
    case PsiKind::TwoMinus: return psi2m;
  }
  throw std::logic_error("unknown PsiKind");
}

const EndpointValues& EigenfunctionFrame::endpoints(PsiKind kind) const {
  switch (kind) {
    case PsiKind::OnePlus: return end1p;
    case PsiKind::TwoPlus: return end2p;
    case PsiKind::OneMinus: return end1m;
    case PsiKind::TwoMinus: return end2m;
  }
  throw std::logic_error("unknown PsiKind");
}

Eigen::VectorXcd project_to_legendre(int degree, const QuadratureRule& rule,
                                     const Eigen::VectorXcd& samples_at_nodes) {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(degree + 1);
  for (int q = 0; q < rule.size(); ++q) {
    c += (rule.weights[q] * samples_at_nodes[q]) * legendre_values(degree, rule.nodes[q]).cast<std::complex<double>>();
  }
  return c;
}

std::complex<double> evaluate_legendre(const Eigen::VectorXcd& coefficients, double s) {
  const int degree = static_cast<int>(coefficients.size()) - 1;
  return (legendre_values(degree, s).cast<std::complex<double>>().transpose() * coefficients)(0);
}

EigenfunctionFrame eigenfunctions(int degree, double omega) {
  if (degree < 0) throw std::invalid_argument("eigenfunctions: negative degree");
  EigenfunctionFrame frame;
  frame.degree = degree;
  frame.omega = omega;
  const QuadratureRule rule = bilinear_rule(degree);

  auto build = [&](PsiKind kind, Eigen::VectorXcd& coeffs, EndpointValues& ends) {
    Eigen::VectorXcd samples(rule.size());
    for (int q = 0; q < rule.size(); ++q) {
      samples[q] = eigenfunction_value<double>(degree, omega, kind, rule.nodes[q]);
    }
    coeffs = project_to_legendre(degree, rule, samples);
    ends.at_minus_one = eigenfunction_value<double>(degree, omega, kind, -1.0);
    ends.at_plus_one = eigenfunction_value<double>(degree, omega, kind, 1.0);
  };
  build(PsiKind::OnePlus, frame.psi1p, frame.end1p);
  build(PsiKind::TwoPlus, frame.psi2p, frame.end2p);
  build(PsiKind::OneMinus, frame.psi1m, frame.end1m);
  build(PsiKind::TwoMinus, frame.psi2m, frame.end2m);
  return frame;
}

Eigen::VectorXcd apply_wave_operator(int sign, double omega, const Eigen::VectorXcd& coefficients) {
  const int degree = static_cast<int>(coefficients.size()) - 1;
  const Eigen::MatrixXd k = derivative_matrix(degree);
  const std::complex<double> shift(0.0, -0.5 * sign * omega);
  return shift * coefficients + k.transpose().cast<std::complex<double>>() * coefficients;
}

}  // namespace dgwave
