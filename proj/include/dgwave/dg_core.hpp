#pragma once

#include <functional>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "dgwave/mesh.hpp"
#include "dgwave/polylib.hpp"
#include "dgwave/scheme.hpp"

namespace dgwave {

/// Modal coefficients in the orthonormal Legendre basis, one row per cell.
/// phi is present exactly for the auxiliary scheme.
struct DGState {
  Eigen::MatrixXd u;
  std::optional<Eigen::MatrixXd> phi;
  double time = 0.0;

  int n_cells() const { return static_cast<int>(u.rows()); }
  int n_modes() const { return static_cast<int>(u.cols()); }
};

/// Zero state shaped for the mesh and scheme.
DGState zero_state(const PeriodicMesh1D& mesh, const SchemeConfig& config);

/// One-sided traces at every node; node j sits between cells j-1 and j, so
/// the minus trace comes from cell j-1 and the plus trace from cell j.
struct TraceValues {
  Eigen::VectorXd u_minus, u_plus;
  Eigen::VectorXd phi_minus, phi_plus;  // empty unless the scheme is auxiliary

  Eigen::VectorXd u_jump() const { return u_plus - u_minus; }
  Eigen::VectorXd u_mean() const { return 0.5 * (u_plus + u_minus); }
  Eigen::VectorXd phi_jump() const { return phi_plus - phi_minus; }
  Eigen::VectorXd phi_mean() const { return 0.5 * (phi_plus + phi_minus); }
};

struct NodeFlux {
  Eigen::VectorXd u_hat;
  Eigen::VectorXd phi_hat;  // empty unless the scheme is auxiliary
};

TraceValues traces(const DGState& state);

/// Upwind: mean - jump/2 (the left trace). Centered: mean.
/// Auxiliary: u_hat = {{u}} + alpha/2 [[phi]], phi_hat = {{phi}} + alpha/2 [[u]].
NodeFlux numerical_flux(const TraceValues& traces, const SchemeConfig& config);

/// Semi-discrete DG operator for u_t + u_x = 0 (and phi_t - phi_x = 0 for the
/// auxiliary scheme) on a periodic mesh.
class DGOperator {
 public:
  DGOperator(PeriodicMesh1D mesh, SchemeConfig config);

  const PeriodicMesh1D& mesh() const { return mesh_; }
  const SchemeConfig& config() const { return config_; }

  /// Time derivative of the modal coefficients.
  DGState rhs(const DGState& state) const;
  /// Allocation-free variant; `out` must already have the state's shape.
  void apply(const DGState& state, DGState& out) const;

  /// Unknowns per cell: (N+1) for U and C, 2(N+1) for the auxiliary scheme.
  int block_size() const { return config_.n_vars() * config_.n_modes(); }
  /// Dense operator matrix, cell-major ordering [u modes, phi modes] per cell.
  Eigen::MatrixXd assemble() const;
  /// Bloch symbol sum_m B_{0,m} e^{i m theta} of the assembled operator
  /// (uniform meshes with at least three cells).
  Eigen::MatrixXcd bloch_symbol(std::complex<double> theta) const;

  /// Flatten / unflatten states in the assembled ordering.
  Eigen::VectorXd flatten(const DGState& state) const;
  DGState unflatten(const Eigen::VectorXd& values) const;

 private:
  void check_state(const DGState& state) const;

  PeriodicMesh1D mesh_;
  SchemeConfig config_;
  Eigen::MatrixXd stiffness_;  // K(l, k) = (phi_l', phi_k)
  Eigen::VectorXd right_;      // phi_k(1)
  Eigen::VectorXd left_;       // phi_k(-1)
};

using ScalarFunction = std::function<double(double)>;

/// Cellwise L2 projection of u0 (and phi0 for the auxiliary scheme, zero by
/// default) with an n_points Gauss-Legendre rule.
DGState project_initial(const PeriodicMesh1D& mesh, const SchemeConfig& config,
                        const ScalarFunction& u0, const ScalarFunction& phi0 = nullptr,
                        int n_points = 20);

struct Energy {
  double u = 0.0;    // integral of u_h^2
  double phi = 0.0;  // integral of phi_h^2
  double total() const { return u + phi; }
};

Energy energy(const PeriodicMesh1D& mesh, const DGState& state);

/// Discrete L2 inner product (both variables) of two coefficient sets.
double inner_product(const PeriodicMesh1D& mesh, const DGState& a, const DGState& b);

/// Point values (u_h(x), phi_h(x)).
std::pair<double, double> evaluate(const PeriodicMesh1D& mesh, const DGState& state, double x);

/// CSV x,u_h,phi_h sampled at samples_per_cell interior points of every cell.
void write_snapshot_csv(const PeriodicMesh1D& mesh, const DGState& state, const std::string& path,
                        int samples_per_cell = 8);

}  // namespace dgwave
