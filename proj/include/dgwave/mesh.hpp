#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace dgwave {

/// Periodic partition of [0, 1). Node j is the left end of cell j; cell n-1
/// wraps onto node 0.
class PeriodicMesh1D {
 public:
  PeriodicMesh1D(Eigen::VectorXd nodes, double length = 1.0);

  int n_cells() const { return static_cast<int>(nodes_.size()); }
  double length() const { return length_; }
  double x_left(int j) const { return nodes_[j]; }
  double width(int j) const { return widths_[j]; }
  double center(int j) const { return nodes_[j] + 0.5 * widths_[j]; }
  double min_width() const { return widths_.minCoeff(); }
  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& widths() const { return widths_; }
  bool is_uniform(double tol = 1e-14) const;

  int left_neighbor(int j) const { return j == 0 ? n_cells() - 1 : j - 1; }
  int right_neighbor(int j) const { return j + 1 == n_cells() ? 0 : j + 1; }
  /// Cell containing x (x taken modulo the domain length).
  int locate(double x) const;

  /// Seed recorded for perturbed meshes (0 and amplitude 0 for uniform ones).
  std::uint64_t seed = 0;
  double amplitude = 0.0;

 private:
  Eigen::VectorXd nodes_;
  Eigen::VectorXd widths_;
  double length_;
};

PeriodicMesh1D uniform_mesh(int n_cells);

/// Interior nodes displaced by independent uniform samples in
/// [-amplitude h, amplitude h]; node 0 stays at x = 0.
PeriodicMesh1D perturbed_mesh(int n_cells, double amplitude, std::uint64_t seed);

/// Counter-based uniform sample in [0, 1) (splitmix64 of seed and counter).
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// CSV with columns j,x_left,h_j.
void write_mesh_csv(const PeriodicMesh1D& mesh, const std::string& path);

}  // namespace dgwave
