#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "dgwave/time_march.hpp"

using namespace dgwave;
constexpr double kPi = std::numbers::pi;

namespace {

double sine(double x) { return std::sin(2 * kPi * x); }
double travelling(double x, double t) { return std::sin(2 * kPi * (x - t)); }

struct Run {
  MarchResult result;
  ErrorMeasure error;
};

Run sine_run(const PeriodicMesh1D& mesh, const SchemeConfig& c, double t, double cfl, double interval = 0.0) {
  const DGOperator op(mesh, c);
  MarchConfig m;
  m.final_time = t;
  m.cfl = cfl;
  m.output_interval = interval;
  auto r = advance(op, project_initial(mesh, c, sine), m);
  const auto e = measure_error(mesh, r.state, travelling, t);
  return {std::move(r), e};
}

}  // namespace

TEST_CASE("stable_step formula") {
  const auto mesh = perturbed_mesh(10, 0.2, 1);
  CHECK(stable_step(mesh, SchemeConfig::centered(3), 0.05) == doctest::Approx(0.05 * mesh.min_width() / 7));
  CHECK_THROWS_AS(stable_step(mesh, SchemeConfig::centered(3), 0.0), std::invalid_argument);
}

TEST_CASE("zero final time returns the initial state") {
  const auto mesh = uniform_mesh(6);
  const auto c = SchemeConfig::aux(1, 1.0);
  const auto s0 = project_initial(mesh, c, sine);
  MarchConfig m;
  m.final_time = 0.0;
  const auto r = advance(DGOperator(mesh, c), s0, m);
  CHECK((r.state.u - s0.u).cwiseAbs().maxCoeff() == 0.0);
  CHECK(r.trajectory.steps == 0);
}

TEST_CASE("last step lands on the final time") {
  const auto mesh = uniform_mesh(7);
  const auto r = sine_run(mesh, SchemeConfig::centered(1), 0.3337, 0.05);
  CHECK(r.result.state.time == doctest::Approx(0.3337).epsilon(1e-14));
  CHECK(r.result.trajectory.points.back().time == doctest::Approx(0.3337).epsilon(1e-14));
  CHECK(r.result.trajectory.dt * r.result.trajectory.steps == doctest::Approx(0.3337).epsilon(1e-12));
}

TEST_CASE("centered scheme conserves energy") {
  const auto r = sine_run(uniform_mesh(10), SchemeConfig::centered(1), 1.0, 0.05, 0.1);
  CHECK(r.result.trajectory.max_energy_drift() < 1e-8);
}

TEST_CASE("upwind degree zero: dissipated amplitude and monotone energy") {
  const auto r = sine_run(uniform_mesh(20), SchemeConfig::upwind(0), 1.0, 0.05, 0.01);
  CHECK(std::abs(r.error.amplitude - std::exp(-kPi * kPi / 10)) < 0.02);
  const auto& pts = r.result.trajectory.points;
  REQUIRE(pts.size() > 50);
  for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].energy_u <= pts[i - 1].energy_u + 1e-15);
}

TEST_CASE("auxiliary schemes: phase lag and energy conservation") {
  const auto mesh = uniform_mesh(20);
  const auto a = sine_run(mesh, SchemeConfig::aux(0, 1.0), 20.0, 0.05, 0.5);
  REQUIRE(a.error.phase_lag.has_value());
  CHECK(std::abs(*a.error.phase_lag - 0.08) < 0.01);
  CHECK(a.result.trajectory.max_energy_drift() < 1e-7);
  CHECK(a.result.trajectory.max_energy_leakage() > 1e-4);

  // long run at the halved step used for T > 100
  const auto s = sine_run(mesh, SchemeConfig::aux(0, alpha_star<double>(0)), 1500.0, 0.025, 10.0);
  REQUIRE(s.error.phase_lag.has_value());
  CHECK(std::abs(*s.error.phase_lag - 0.08) < 0.01);
  CHECK(s.result.trajectory.max_energy_drift() < 1e-7);
}

TEST_CASE("halving the step barely changes the error") {
  const auto mesh = uniform_mesh(20);
  struct Case {
    SchemeConfig c;
    double t;
  };
  for (const auto& k : {Case{SchemeConfig::upwind(0), 1.0}, Case{SchemeConfig::centered(0), 5.0},
                        Case{SchemeConfig::aux(0, 1.0), 20.0}}) {
    const double e1 = sine_run(mesh, k.c, k.t, 0.05).error.l2_error;
    const double e2 = sine_run(mesh, k.c, k.t, 0.025).error.l2_error;
    CHECK(std::abs(e1 - e2) < 0.01 * e2);
  }
}

TEST_CASE("blow-up is reported") {
  const auto mesh = uniform_mesh(10);
  const DGOperator op(mesh, SchemeConfig::upwind(2));
  MarchConfig m;
  m.final_time = 50.0;
  m.cfl = 40.0;
  CHECK_THROWS_AS(advance(op, project_initial(mesh, op.config(), sine), m), std::runtime_error);
  m.cfl = 0.05;
  m.rk_order = 3;
  CHECK_THROWS_AS(advance(op, project_initial(mesh, op.config(), sine), m), std::invalid_argument);
}

TEST_CASE("measure_error: exact projection has no lag, shifted data recovers it") {
  const auto mesh = uniform_mesh(40);
  const auto c = SchemeConfig::centered(3);
  const double t = 0.37;
  const auto exact = project_initial(mesh, c, [&](double x) { return travelling(x, t); });
  const auto e = measure_error(mesh, exact, travelling, t);
  REQUIRE(e.phase_lag.has_value());
  CHECK(std::abs(*e.phase_lag) < 1e-8);
  CHECK(e.l2_error < 1e-6);
  CHECK(e.amplitude == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(e.fitted_amplitude == doctest::Approx(1.0).epsilon(1e-6));

  const double lag = 0.013;
  const auto behind = project_initial(mesh, c, [&](double x) { return 0.8 * travelling(x, t - lag); });
  const auto eb = measure_error(mesh, behind, travelling, t);
  REQUIRE(eb.phase_lag.has_value());
  CHECK(*eb.phase_lag == doctest::Approx(lag).epsilon(1e-5));
  CHECK(eb.fitted_amplitude == doctest::Approx(0.8).epsilon(1e-5));

  const auto flat = zero_state(mesh, c);
  CHECK_FALSE(measure_error(mesh, flat, travelling, t).phase_lag.has_value());
}

TEST_CASE("write_trajectory_csv layout") {
  const auto r = sine_run(uniform_mesh(5), SchemeConfig::aux(1, 1.0), 0.5, 0.05, 0.1);
  const auto path = std::filesystem::temp_directory_path() / "dgwave_test_traj.csv";
  write_trajectory_csv(r.result.trajectory, path.string());
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "t,E_u,E_phi");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == static_cast<int>(r.result.trajectory.points.size()));
  CHECK(rows >= 6);
  std::filesystem::remove(path);
}
