#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgwave/dg_core.hpp"

namespace dgwave {

struct MarchConfig {
  double final_time = 0.0;
  double cfl = 0.05;
  int rk_order = 4;               // classical four-stage RK is the only choice
  double output_interval = 0.0;   // <= 0: record only the endpoints
  bool keep_snapshots = false;
};

struct TrajectoryPoint {
  double time = 0.0;
  double energy_u = 0.0;
  double energy_phi = 0.0;
  std::optional<DGState> snapshot;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  double dt = 0.0;
  long steps = 0;

  /// max_t |E(t) - E(0)| / E_u(0) with E = E_u + E_phi.
  double max_energy_drift() const;
  /// max_t E_phi(t) / E_u(0).
  double max_energy_leakage() const;
};

/// Step size CFL * min_j h_j / (2N + 1).
double stable_step(const PeriodicMesh1D& mesh, const SchemeConfig& config, double cfl);

struct MarchResult {
  DGState state;
  Trajectory trajectory;
};

/// Classical RK4 from state0.time to march.final_time; the step is shrunk so
/// the last step lands on the final time. Throws std::runtime_error if the
/// state becomes non-finite.
MarchResult advance(const DGOperator& op, const DGState& state0, const MarchConfig& march);

struct ErrorMeasure {
  double l2_error = 0.0;
  double amplitude = 0.0;
  std::optional<double> phase_lag;  // absent when the amplitude is too small to fit
  double fitted_amplitude = 0.0;
};

/// L2 error against `exact` at time t, the maximum of |u_h| over dense
/// samples, and the lag of the least-squares fit A sin(omega (x - t) + delta)
/// reported as delta/omega, positive when the numerical wave trails.
ErrorMeasure measure_error(const PeriodicMesh1D& mesh, const DGState& state,
                           const std::function<double(double, double)>& exact, double t,
                           double omega = 2.0 * 3.14159265358979323846, int samples_per_cell = 32);

void write_trajectory_csv(const Trajectory& trajectory, const std::string& path);

}  // namespace dgwave
