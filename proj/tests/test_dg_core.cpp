#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "dgwave/dg_core.hpp"

using namespace dgwave;
constexpr double kPi = std::numbers::pi;

namespace {

TraceValues single_node(double um, double up, double pm = 0.0, double pp = 0.0, bool aux = false) {
  TraceValues t;
  t.u_minus = Eigen::VectorXd::Constant(1, um);
  t.u_plus = Eigen::VectorXd::Constant(1, up);
  if (aux) {
    t.phi_minus = Eigen::VectorXd::Constant(1, pm);
    t.phi_plus = Eigen::VectorXd::Constant(1, pp);
  }
  return t;
}

DGState random_state(const PeriodicMesh1D& mesh, const SchemeConfig& config, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  DGState s = zero_state(mesh, config);
  s.u = s.u.unaryExpr([&](double) { return coeff(rng); });
  if (s.phi) *s.phi = s.phi->unaryExpr([&](double) { return coeff(rng); });
  return s;
}

// diag(h_j / 2) in the assembled ordering
Eigen::VectorXd mass_diagonal(const DGOperator& op) {
  const int b = op.block_size();
  Eigen::VectorXd w(b * op.mesh().n_cells());
  for (int j = 0; j < op.mesh().n_cells(); ++j) w.segment(j * b, b).setConstant(op.mesh().width(j) / 2);
  return w;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

const SchemeConfig kConfigs[] = {SchemeConfig::upwind(2), SchemeConfig::centered(2), SchemeConfig::aux(2, 1.0),
                                 SchemeConfig::aux(2, alpha_star<double>(2)), SchemeConfig::aux(1, 0.5)};

}  // namespace

TEST_CASE("numerical_flux: continuous traces are reproduced") {
  const auto t = single_node(0.7, 0.7, -0.2, -0.2, true);
  for (const auto& c : {SchemeConfig::upwind(1), SchemeConfig::centered(1), SchemeConfig::aux(1, 0.8)}) {
    const auto f = numerical_flux(t, c);
    CHECK(f.u_hat[0] == doctest::Approx(0.7));
    if (c.has_aux()) CHECK(f.phi_hat[0] == doctest::Approx(-0.2));
  }
}

TEST_CASE("numerical_flux: upwind takes the left trace, centered the mean") {
  CHECK(numerical_flux(single_node(1.0, 0.0), SchemeConfig::upwind(0)).u_hat[0] == 1.0);
  CHECK(numerical_flux(single_node(1.0, 0.0), SchemeConfig::centered(0)).u_hat[0] == 0.5);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d(-5, 5);
  for (int i = 0; i < 50; ++i) {
    const double a = d(rng), b = d(rng);
    CHECK(numerical_flux(single_node(a, b), SchemeConfig::upwind(0)).u_hat[0] == doctest::Approx(a));
  }
}

TEST_CASE("numerical_flux: auxiliary example") {
  const auto f = numerical_flux(single_node(1.0, 0.0, 0.0, 0.0, true), SchemeConfig::aux(0, 1.0));
  CHECK(f.u_hat[0] == doctest::Approx(0.5));
  CHECK(f.phi_hat[0] == doctest::Approx(-0.5));
}

TEST_CASE("constant states are steady") {
  const auto mesh = perturbed_mesh(9, 0.2, 5);
  for (const auto& c : kConfigs) {
    const DGOperator op(mesh, c);
    const auto s = project_initial(mesh, c, [](double) { return 3.0; }, [](double) { return -1.0; });
    const auto r = op.rhs(s);
    CHECK(r.u.cwiseAbs().maxCoeff() < 1e-12);
    if (r.phi) CHECK(r.phi->cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("degree zero upwind is the one-sided difference") {
  const auto mesh = perturbed_mesh(6, 0.2, 11);
  const DGOperator op(mesh, SchemeConfig::upwind(0));
  std::mt19937_64 rng(1);
  const auto s = random_state(mesh, op.config(), rng);
  const auto r = op.rhs(s);
  for (int j = 0; j < 6; ++j) {
    const int l = mesh.left_neighbor(j);
    CHECK(r.u(j, 0) == doctest::Approx(-(s.u(j, 0) - s.u(l, 0)) / mesh.width(j)));
  }
}

TEST_CASE("degree zero auxiliary scheme matches the hand-written stencil") {
  const auto mesh = uniform_mesh(5);
  const double alpha = 0.7;
  const DGOperator op(mesh, SchemeConfig::aux(0, alpha));
  std::mt19937_64 rng(2);
  const auto s = random_state(mesh, op.config(), rng);
  const auto r = op.rhs(s);
  const double h = mesh.width(0);
  const auto& u = s.u;
  const auto& p = *s.phi;
  // flux at the left node of cell j, between j-1 and j
  auto uh = [&](int j) {
    const int l = mesh.left_neighbor(j);
    return 0.5 * (u(l, 0) + u(j, 0)) + 0.5 * alpha * (p(j, 0) - p(l, 0));
  };
  auto ph = [&](int j) {
    const int l = mesh.left_neighbor(j);
    return 0.5 * (p(l, 0) + p(j, 0)) + 0.5 * alpha * (u(j, 0) - u(l, 0));
  };
  for (int j = 0; j < 5; ++j) {
    const int rgt = mesh.right_neighbor(j);
    CHECK(r.u(j, 0) == doctest::Approx(-(uh(rgt) - uh(j)) / h));
    CHECK((*r.phi)(j, 0) == doctest::Approx((ph(rgt) - ph(j)) / h));
  }
}

TEST_CASE("project_initial: constants and polynomials are exact") {
  const auto mesh = perturbed_mesh(7, 0.1, 4);
  const auto c = SchemeConfig::aux(3, 1.0);
  const auto s = project_initial(mesh, c, [](double x) { return 1 + x - 2 * x * x * x; });
  CHECK(s.phi.has_value());
  CHECK(s.phi->cwiseAbs().maxCoeff() == 0.0);
  for (double x : {0.03, 0.41, 0.77, 0.99}) {
    CHECK(evaluate(mesh, s, x).first == doctest::Approx(1 + x - 2 * x * x * x).epsilon(1e-13));
  }
}

TEST_CASE("project_initial: sin(2 pi x) matches a fine-quadrature oracle") {
  const auto mesh = uniform_mesh(4);
  const auto c = SchemeConfig::upwind(2);
  const auto s = project_initial(mesh, c, [](double x) { return std::sin(2 * kPi * x); });
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k <= 2; ++k) {
      const double x0 = mesh.x_left(j), h = mesh.width(j);
      const double oracle = simpson(
          [&](double t) { return std::sin(2 * kPi * (x0 + 0.5 * h * (t + 1))) * legendre_values(2, t)[k]; }, -1.0,
          1.0, 4000);
      CHECK(std::abs(s.u(j, k) - oracle) < 1e-10);
    }
  }
}

TEST_CASE("energy: examples") {
  const auto mesh = perturbed_mesh(12, 0.1, 2);
  const auto c = SchemeConfig::aux(2, 1.0);
  CHECK(energy(mesh, zero_state(mesh, c)).total() == 0.0);
  const auto one = project_initial(mesh, c, [](double) { return 1.0; });
  CHECK(energy(mesh, one).u == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(energy(mesh, one).phi == 0.0);
  const auto fine = uniform_mesh(40);
  const auto sine = project_initial(fine, SchemeConfig::centered(2), [](double x) { return std::sin(2 * kPi * x); });
  CHECK(energy(fine, sine).u == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("energy laws hold for random states") {
  std::mt19937_64 rng(99);
  for (const auto& mesh : {uniform_mesh(8), perturbed_mesh(8, 0.3, 6), perturbed_mesh(13, 0.45, 9)}) {
    for (int n = 0; n <= 4; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        {
          const DGOperator op(mesh, SchemeConfig::upwind(n));
          const auto s = random_state(mesh, op.config(), rng);
          const double rate = inner_product(mesh, s, op.rhs(s));
          CHECK(rate == doctest::Approx(-0.5 * traces(s).u_jump().squaredNorm()).epsilon(1e-12));
          CHECK(rate <= 1e-14);
        }
        {
          const DGOperator op(mesh, SchemeConfig::centered(n));
          const auto s = random_state(mesh, op.config(), rng);
          CHECK(std::abs(inner_product(mesh, s, op.rhs(s))) < 1e-12);
        }
        for (double alpha : {1.0, alpha_star<double>(n), 0.5, 2.0}) {
          const DGOperator op(mesh, SchemeConfig::aux(n, alpha));
          const auto s = random_state(mesh, op.config(), rng);
          CHECK(std::abs(inner_product(mesh, s, op.rhs(s))) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("mass-weighted operator is skew for C and A, negative semidefinite for U") {
  const auto mesh = perturbed_mesh(6, 0.2, 8);
  for (const auto& c : kConfigs) {
    const DGOperator op(mesh, c);
    const Eigen::MatrixXd a = op.assemble();
    const Eigen::MatrixXd wa = mass_diagonal(op).asDiagonal() * a;
    const Eigen::MatrixXd sym = wa + wa.transpose();
    if (c.flux == FluxKind::Upwind) {
      const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(sym).eigenvalues();
      CHECK(ev.maxCoeff() < 1e-12);
      CHECK(ev.minCoeff() < -1e-3);
    } else {
      CHECK(sym.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("rhs is linear") {
  std::mt19937_64 rng(5);
  const auto mesh = perturbed_mesh(7, 0.1, 3);
  for (const auto& c : kConfigs) {
    const DGOperator op(mesh, c);
    const auto a = random_state(mesh, c, rng);
    const auto b = random_state(mesh, c, rng);
    const double s = 1.7, t = -0.4;
    const Eigen::VectorXd lhs = op.flatten(op.rhs(op.unflatten(s * op.flatten(a) + t * op.flatten(b))));
    const Eigen::VectorXd rhs = s * op.flatten(op.rhs(a)) + t * op.flatten(op.rhs(b));
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-13 * std::max(1.0, rhs.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("rhs commutes with cell shifts on uniform meshes") {
  std::mt19937_64 rng(8);
  const auto mesh = uniform_mesh(9);
  for (const auto& c : kConfigs) {
    const DGOperator op(mesh, c);
    const auto s = random_state(mesh, c, rng);
    auto shift = [](const DGState& x) {
      DGState y = x;
      const int n = x.n_cells();
      for (int j = 0; j < n; ++j) {
        y.u.row((j + 1) % n) = x.u.row(j);
        if (x.phi) y.phi->row((j + 1) % n) = x.phi->row(j);
      }
      return y;
    };
    const auto a = op.rhs(shift(s));
    const auto b = shift(op.rhs(s));
    CHECK((a.u - b.u).cwiseAbs().maxCoeff() < 1e-12);
    if (a.phi) CHECK((*a.phi - *b.phi).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("assembled matrix agrees with apply") {
  std::mt19937_64 rng(12);
  const auto mesh = perturbed_mesh(5, 0.2, 1);
  for (const auto& c : kConfigs) {
    const DGOperator op(mesh, c);
    const auto s = random_state(mesh, c, rng);
    const Eigen::VectorXd direct = op.flatten(op.rhs(s));
    CHECK((op.assemble() * op.flatten(s) - direct).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("bloch symbol: degree zero upwind") {
  const auto mesh = uniform_mesh(8);
  const DGOperator op(mesh, SchemeConfig::upwind(0));
  const double h = mesh.width(0);
  for (double th : {0.3, 1.1, -2.0}) {
    const std::complex<double> expected = -(1.0 - std::exp(std::complex<double>(0, -th))) / h;
    CHECK(std::abs(op.bloch_symbol(th)(0, 0) - expected) < 1e-12);
  }
}

TEST_CASE("state checks") {
  const auto mesh = uniform_mesh(4);
  const DGOperator aux(mesh, SchemeConfig::aux(1, 1.0));
  DGState bad = zero_state(mesh, SchemeConfig::upwind(1));
  CHECK_THROWS_AS(aux.rhs(bad), std::invalid_argument);
  const DGOperator up(mesh, SchemeConfig::upwind(2));
  CHECK_THROWS_AS(up.rhs(bad), std::invalid_argument);
  CHECK_THROWS_AS(SchemeConfig::upwind(-1), std::invalid_argument);
  CHECK_THROWS_AS(SchemeConfig::aux(1, NAN), std::invalid_argument);
}

TEST_CASE("alpha_star values") {
  CHECK(alpha_star<double>(0) == doctest::Approx(1.154700).epsilon(1e-6));
  CHECK(alpha_star<double>(1) == doctest::Approx(0.912871).epsilon(1e-6));
  CHECK(alpha_star<double>(2) == doctest::Approx(1.035098).epsilon(1e-6));
}

TEST_CASE("write_snapshot_csv layout") {
  const auto mesh = uniform_mesh(5);
  const auto s = project_initial(mesh, SchemeConfig::centered(1), [](double x) { return x; });
  const auto path = std::filesystem::temp_directory_path() / "dgwave_test_snapshot.csv";
  write_snapshot_csv(mesh, s, path.string(), 8);
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,u_h,phi_h");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 40);
  std::filesystem::remove(path);
}
