#include "dgwave/dispersion.hpp"

#include <Eigen/Eigenvalues>

#include "dgwave/csv.hpp"
#include "dgwave/dg_core.hpp"
#include "dgwave/mesh.hpp"

namespace dgwave {

Eigen::Matrix4cd build_M(int degree, double omega, double alpha, std::complex<double> lambda) {
  if (lambda == 0.0) throw std::invalid_argument("build_M: lambda must be nonzero");
  const auto f = quartet<double>(degree, omega);
  const double s = degree % 2 == 0 ? 1.0 : -1.0;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = lambda * f.fNp1_minus - f.fN_plus;
  m(0, 1) = lambda * f.fN_minus - f.fNp1_plus;
  m(1, 2) = lambda * f.fNp1_plus - f.fN_minus;
  m(1, 3) = lambda * f.fN_plus - f.fNp1_minus;
  m(2, 0) = lambda * s;
  m(2, 1) = -1.0;
  m(2, 2) = -alpha * lambda;
  m(2, 3) = -alpha * s;
  m(3, 0) = alpha * lambda * s;
  m(3, 1) = alpha;
  m(3, 2) = -lambda;
  m(3, 3) = s;
  return m;
}

std::complex<double> characteristic_determinant(int degree, double omega, double alpha, std::complex<double> lambda) {
  return build_M(degree, omega, alpha, lambda).determinant() / (lambda * lambda);
}

// ---------------------------------------------------------------------------

std::complex<double> LeadingTermModel::evaluate(double omega) const {
  const double lead = coefficient * std::pow(omega, order);
  std::complex<double> r = part == ErrorPart::Real ? std::complex<double>(lead, 0.0) : std::complex<double>(0.0, lead);
  if (secondary_order) r += std::complex<double>(0.0, *secondary_coefficient * std::pow(omega, *secondary_order));
  return r;
}

double tabulated_e_n(int degree) {
  static constexpr double table[] = {5.555e-03, 1.419e-02, 1.008e-02, 9.693e-03, 1.139e-02, 1.474e-02,
                                     2.023e-02, 2.892e-02, 4.261e-02, 6.429e-02, 9.886e-02, 1.544e-01,
                                     2.444e-01, 3.912e-01, 6.322e-01, 1.030e+00, 1.692e+00, 2.796e+00};
  if (degree < 0 || degree > 17) throw std::out_of_range("tabulated_e_n: E_N is tabulated for N <= 17 only");
  return table[degree];
}

namespace {

// Rows N = 0, 1, 2 of the leading-term table as printed.
struct PrintedRow {
  Rational u_real, u_imag, c, a, astar;
};

constexpr PrintedRow kPrinted[3] = {
    {{1, 2}, {1, 3}, {-1, 6}, {-1, 24}, {-1, 180}},
    {{1, 72}, {1, 270}, {1, 48}, {-1, 1080}, {-53, 302400}},
    {{1, 7200}, {1, 42000}, {-1, 16800}, {-1, 252000}, {-41, 63504000}},
};

}  // namespace

LeadingTermModel leading_term(Method method, int degree) {
  if (degree < 0) throw std::invalid_argument("leading_term: negative degree");
  LeadingTermModel m;
  m.method = method;
  m.degree = degree;
  const double n = degree;
  const double ratio = factorial_ratio<double>(degree);
  m.c_n = 0.5 * ratio * ratio;
  m.d_n = degree == 0 ? 1.0 / 24.0 : m.c_n / ((2 * n + 1) * (2 * n + 3));
  const PrintedRow* row = degree <= 2 ? &kPrinted[degree] : nullptr;

  switch (method) {
    case Method::U:
      m.part = ErrorPart::Real;
      m.order = 2 * degree + 2;
      m.coefficient = m.c_n;
      m.secondary_order = 2 * degree + 3;
      m.secondary_coefficient = m.c_n * (2 * n + 2) / ((2 * n + 1) * (2 * n + 3));
      if (row) {
        m.tabulated = row->u_real;
        m.secondary_tabulated = row->u_imag;
      }
      break;
    case Method::C:
      m.part = ErrorPart::Imag;
      if (degree % 2 == 0) {
        m.order = 2 * degree + 3;
        m.coefficient = -m.c_n * (n + 1) / (2 * n + 3);
      } else {
        m.order = 2 * degree + 1;
        m.coefficient = m.c_n * (2 * n + 1) / (n + 1);
      }
      if (row) m.tabulated = row->c;
      break;
    case Method::A:
      m.part = ErrorPart::Imag;
      m.order = 2 * degree + 3;
      m.coefficient = -m.d_n;
      if (row) m.tabulated = row->a;
      break;
    case Method::AStar:
      m.part = ErrorPart::Imag;
      m.order = 2 * degree + 5;
      m.e_n = tabulated_e_n(degree);
      m.coefficient = -*m.e_n / std::pow(2 * n + 1, 2 * n + 2);
      if (row) m.tabulated = row->astar;
      break;
  }
  return m;
}

// ---------------------------------------------------------------------------

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Oscillatory: return "OSCILLATORY";
    case Regime::Transition: return "TRANSITION";
    case Regime::Exponential: return "EXPONENTIAL";
    case Regime::SuperExponential: return "SUPER_EXPONENTIAL";
  }
  return "?";
}

double super_exponential_log10(int degree, double omega) {
  const double a = 2.0 * degree + 1.0;
  const double b = 2.0 * degree + 3.0;
  const double base = std::exp(1.0) * omega / (2.0 * std::sqrt(a * b));
  return (2.0 * degree + 2.0) * std::log10(base) + std::log10(2.0 * omega / (a * b));
}

AsymptoticRegime classify_regime(int degree, double omega) {
  if (!(omega > 0.0)) throw std::invalid_argument("classify_regime: Omega must be positive");
  AsymptoticRegime r;
  const double width = 2.0 * degree + 1.0;
  r.kappa = width / omega;
  const double band = std::cbrt(omega);
  if (width < omega - band) {
    r.regime = Regime::Oscillatory;
  } else if (width <= omega + band) {
    r.regime = Regime::Transition;
  } else if (r.kappa >= std::exp(1.0)) {
    r.regime = Regime::SuperExponential;
    r.predicted_log10_magnitude = super_exponential_log10(degree, omega);
    r.predicted_magnitude = std::pow(10.0, *r.predicted_log10_magnitude);
  } else {
    r.regime = Regime::Exponential;
  }
  return r;
}

// ---------------------------------------------------------------------------

Method method_of(const SchemeConfig& config) {
  switch (config.flux) {
    case FluxKind::Upwind: return Method::U;
    case FluxKind::Centered: return Method::C;
    case FluxKind::Aux:
      if (config.alpha == 1.0) return Method::A;
      if (config.alpha == alpha_star<double>(config.degree)) return Method::AStar;
      break;
  }
  throw std::invalid_argument("method_of: auxiliary coupling is neither 1 nor the optimal value");
}

namespace {

FloquetSolution<double> roots_for(const SchemeConfig& config, std::complex<double> omega) {
  switch (config.flux) {
    case FluxKind::Upwind: return detail::upwind_roots<double>(config.degree, omega);
    case FluxKind::Centered: return detail::centered_roots<double>(config.degree, omega);
    case FluxKind::Aux: return detail::aux_roots<double>(config.degree, omega, config.alpha);
  }
  throw std::invalid_argument("unknown flux");
}

}  // namespace

CrossValidationReport cross_validate(const SchemeConfig& config, int n_cells, int n_theta) {
  if (n_theta < 1) throw std::invalid_argument("cross_validate: need at least one theta");
  const DGOperator op(uniform_mesh(n_cells), config);
  const double h = 1.0 / n_cells;
  const std::complex<double> i(0.0, 1.0);
  CrossValidationReport report;
  for (int k = 0; k < n_theta; ++k) {
    const double theta = -pi<double>() + (k + 0.5) * 2.0 * pi<double>() / n_theta;
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(op.bloch_symbol(theta), false);
    const std::complex<double> target = std::exp(i * theta);
    for (const auto& sigma : eig.eigenvalues()) {
      SymbolSample s;
      s.theta = theta;
      s.eigenvalue = sigma;
      s.omega = i * sigma * h;
      const auto sol = roots_for(config, s.omega);
      s.discrepancy = std::abs(sol.roots[detail::nearest(sol.roots, target)] - target);
      report.max_discrepancy = std::max(report.max_discrepancy, s.discrepancy);
      report.samples.push_back(s);
    }
  }
  return report;
}

std::complex<double> symbol_relative_error(const SchemeConfig& config, double omega, int n_cells) {
  const DGOperator op(uniform_mesh(n_cells), config);
  const double h = 1.0 / n_cells;
  const std::complex<double> i(0.0, 1.0);

  // residual i sigma(theta) h - Omega on the branch closest to the target
  auto residual = [&](std::complex<double> theta) {
    const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(op.bloch_symbol(theta), false);
    std::complex<double> best = eig.eigenvalues()[0];
    for (const auto& sigma : eig.eigenvalues()) {
      if (std::abs(i * sigma * h - omega) < std::abs(i * best * h - omega)) best = sigma;
    }
    return i * best * h - omega;
  };

  std::complex<double> t0 = omega;
  std::complex<double> t1 = omega * (1.0 + 1e-3);
  std::complex<double> f0 = residual(t0);
  std::complex<double> f1 = residual(t1);
  for (int iter = 0; iter < 60 && std::abs(f1) > 1e-16 * omega; ++iter) {
    if (f1 == f0) break;
    const std::complex<double> t2 = t1 - f1 * (t1 - t0) / (f1 - f0);
    t0 = t1;
    f0 = f1;
    t1 = t2;
    f1 = residual(t1);
  }
  // R = 1 - e^{i delta} = -2i e^{i delta/2} sin(delta/2)
  const std::complex<double> delta = t1 - omega;
  return -2.0 * i * std::exp(0.5 * i * delta) * std::sin(0.5 * delta);
}

void write_dispersion_sweep_csv(const std::string& path, const std::vector<Method>& methods,
                                const std::vector<int>& degrees, const std::vector<double>& omegas) {
  CsvWriter csv(path, {"scheme", "N", "alpha", "omega", "re_R", "im_R", "k_h_re", "k_h_im", "n_spurious"});
  for (Method method : methods) {
    for (int degree : degrees) {
      const double alpha = method == Method::A       ? 1.0
                           : method == Method::AStar ? alpha_star<double>(degree)
                                                     : 0.0;
      for (double omega : omegas) {
        const auto sol = solve_floquet<HighPrecision>(method, degree, HighPrecision(omega));
        if (!sol.plus) continue;
        const auto err = relative_error(sol);
        const auto& kh = sol.wavenumbers[*sol.plus];
        csv.row(to_string(method), degree, alpha, omega, static_cast<double>(std::real(err.r_plus)),
                static_cast<double>(std::imag(err.r_plus)), static_cast<double>(std::real(kh)),
                static_cast<double>(std::imag(kh)), sol.n_spurious());
      }
    }
  }
}

// ---------------------------------------------------------------------------

double error_component(Method method, int degree, double omega, ErrorPart part) {
  const auto sol = solve_floquet<HighPrecision>(method, degree, HighPrecision(omega));
  const auto e = relative_error(sol);
  return static_cast<double>(part == ErrorPart::Real ? std::real(e.r_plus) : std::imag(e.r_plus));
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("log_log_slope: need matching samples");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log10(x[i]);
    const double ly = std::log10(std::abs(y[i]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double observed_order(Method method, int degree, ErrorPart part, double log10_lo, double log10_hi, int points) {
  std::vector<double> x, y;
  for (int k = 0; k < points; ++k) {
    const double w = std::pow(10.0, log10_lo + (log10_hi - log10_lo) * k / (points - 1));
    x.push_back(w);
    y.push_back(error_component(method, degree, w, part));
  }
  return log_log_slope(x, y);
}

double observed_coefficient(Method method, int degree, ErrorPart part, int order, double omega) {
  const auto sol = solve_floquet<HighPrecision>(method, degree, HighPrecision(omega));
  const auto e = relative_error(sol);
  const HighPrecision c = part == ErrorPart::Real ? std::real(e.r_plus) : std::imag(e.r_plus);
  return static_cast<double>(c / pow(HighPrecision(omega), order));
}

double fitted_e_n(int degree, double omega) {
  const HighPrecision w(omega);
  const auto sol = solve_floquet<HighPrecision>(Method::AStar, degree, w);
  const HighPrecision im = std::imag(relative_error(sol).r_plus);
  return static_cast<double>(-im * pow(HighPrecision(2 * degree + 1), 2 * degree + 2) / pow(w, 2 * degree + 5));
}

double log10_rho_plus(int degree, double omega) {
  using std::abs;
  using std::log10;
  const auto sol = solve_floquet<HighPrecision>(Method::A, degree, HighPrecision(omega));
  if (!sol.plus) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(log10(abs(relative_error(sol).rho_plus)));
}

double pade_remainder_magnitude(int degree, double omega) {
  using std::abs;
  return static_cast<double>(abs(pade_remainder<HighPrecision>(degree, HighPrecision(omega)).remainder));
}

}  // namespace dgwave
