#include "dgwave/time_march.hpp"

#include <cmath>
#include <stdexcept>

#include "dgwave/csv.hpp"

namespace dgwave {

double Trajectory::max_energy_drift() const {
  if (points.empty() || points.front().energy_u == 0.0) return 0.0;
  const double e0 = points.front().energy_u + points.front().energy_phi;
  double drift = 0.0;
  for (const auto& p : points) drift = std::max(drift, std::abs(p.energy_u + p.energy_phi - e0));
  return drift / points.front().energy_u;
}

double Trajectory::max_energy_leakage() const {
  if (points.empty() || points.front().energy_u == 0.0) return 0.0;
  double leak = 0.0;
  for (const auto& p : points) leak = std::max(leak, p.energy_phi);
  return leak / points.front().energy_u;
}

double stable_step(const PeriodicMesh1D& mesh, const SchemeConfig& config, double cfl) {
  if (!(cfl > 0.0)) throw std::invalid_argument("stable_step: CFL must be positive");
  return cfl * mesh.min_width() / (2 * config.degree + 1);
}

namespace {

void axpy(DGState& y, double a, const DGState& x) {
  y.u += a * x.u;
  if (y.phi) *y.phi += a * *x.phi;
}

bool finite(const DGState& s) {
  return s.u.allFinite() && (!s.phi || s.phi->allFinite());
}

TrajectoryPoint record(const PeriodicMesh1D& mesh, const DGState& s, bool keep) {
  const Energy e = energy(mesh, s);
  TrajectoryPoint p{s.time, e.u, e.phi, std::nullopt};
  if (keep) p.snapshot = s;
  return p;
}

}  // namespace

MarchResult advance(const DGOperator& op, const DGState& state0, const MarchConfig& march) {
  if (march.rk_order != 4) throw std::invalid_argument("advance: only the classical RK4 is provided");
  if (!(march.final_time >= state0.time)) throw std::invalid_argument("advance: final time precedes the state time");

  MarchResult result{state0, {}};
  Trajectory& traj = result.trajectory;
  traj.points.push_back(record(op.mesh(), state0, march.keep_snapshots));

  const double span = march.final_time - state0.time;
  if (span == 0.0) return result;

  const double dt_max = stable_step(op.mesh(), op.config(), march.cfl);
  const long steps = static_cast<long>(std::ceil(span / dt_max - 1e-12));
  const double dt = span / static_cast<double>(steps);
  traj.dt = dt;
  traj.steps = steps;
  const long cadence =
      march.output_interval > 0.0 ? std::max(1L, std::lround(march.output_interval / dt)) : steps;

  DGState& y = result.state;
  DGState k1 = y, k2 = y, k3 = y, k4 = y, stage = y;
  for (long n = 1; n <= steps; ++n) {
    op.apply(y, k1);
    stage.u = y.u;
    if (stage.phi) *stage.phi = *y.phi;
    axpy(stage, 0.5 * dt, k1);
    op.apply(stage, k2);
    stage.u = y.u;
    if (stage.phi) *stage.phi = *y.phi;
    axpy(stage, 0.5 * dt, k2);
    op.apply(stage, k3);
    stage.u = y.u;
    if (stage.phi) *stage.phi = *y.phi;
    axpy(stage, dt, k3);
    op.apply(stage, k4);

    axpy(y, dt / 6.0, k1);
    axpy(y, dt / 3.0, k2);
    axpy(y, dt / 3.0, k3);
    axpy(y, dt / 6.0, k4);
    y.time = n == steps ? march.final_time : state0.time + n * dt;

    if (!finite(y)) {
      throw std::runtime_error("advance: non-finite state at t = " + std::to_string(y.time) + " (step " +
                               std::to_string(n) + ", dt = " + std::to_string(dt) +
                               "); the CFL number is likely too large");
    }
    if (n % cadence == 0 || n == steps) traj.points.push_back(record(op.mesh(), y, march.keep_snapshots));
  }
  return result;
}

ErrorMeasure measure_error(const PeriodicMesh1D& mesh, const DGState& state,
                           const std::function<double(double, double)>& exact, double t, double omega,
                           int samples_per_cell) {
  ErrorMeasure m;
  const int degree = state.n_modes() - 1;
  const QuadratureRule rule = gauss_legendre(std::max(20, degree + 2));
  double err2 = 0.0;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    for (int q = 0; q < rule.size(); ++q) {
      const double x = mesh.x_left(j) + 0.5 * mesh.width(j) * (rule.nodes[q] + 1.0);
      const double uh = state.u.row(j).dot(legendre_values(degree, rule.nodes[q]));
      const double d = uh - exact(x, t);
      err2 += 0.5 * mesh.width(j) * rule.weights[q] * d * d;
    }
  }
  m.l2_error = std::sqrt(err2);

  // least squares for a sin(w(x-t)) + b cos(w(x-t)) on symmetric samples
  Eigen::Matrix2d normal = Eigen::Matrix2d::Zero();
  Eigen::Vector2d rhs = Eigen::Vector2d::Zero();
  for (int j = 0; j < mesh.n_cells(); ++j) {
    for (int k = 0; k < samples_per_cell; ++k) {
      const double s = -1.0 + (2.0 * k + 1.0) / samples_per_cell;
      const double x = mesh.x_left(j) + 0.5 * mesh.width(j) * (s + 1.0);
      const double uh = state.u.row(j).dot(legendre_values(degree, s));
      m.amplitude = std::max(m.amplitude, std::abs(uh));
      const double w = mesh.width(j);
      const Eigen::Vector2d basis(std::sin(omega * (x - t)), std::cos(omega * (x - t)));
      normal += w * basis * basis.transpose();
      rhs += w * uh * basis;
    }
  }
  const Eigen::Vector2d ab = normal.ldlt().solve(rhs);
  m.fitted_amplitude = ab.norm();
  if (m.fitted_amplitude >= 1e-6) {
    const double delta = std::atan2(ab[1], ab[0]);
    m.phase_lag = delta / omega;
  }
  return m;
}

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path) {
  CsvWriter csv(path, {"t", "E_u", "E_phi"});
  for (const auto& p : trajectory.points) csv.row(p.time, p.energy_u, p.energy_phi);
}

}  // namespace dgwave
