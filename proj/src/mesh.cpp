#include "dgwave/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgwave/csv.hpp"

namespace dgwave {

PeriodicMesh1D::PeriodicMesh1D(Eigen::VectorXd nodes, double length)
    : nodes_(std::move(nodes)), length_(length) {
  const int n = static_cast<int>(nodes_.size());
  if (n < 2) throw std::invalid_argument("PeriodicMesh1D: need at least two cells");
  widths_.resize(n);
  for (int j = 0; j < n; ++j) {
    const double right = j + 1 < n ? nodes_[j + 1] : nodes_[0] + length_;
    widths_[j] = right - nodes_[j];
    if (!(widths_[j] > 0.0)) throw std::invalid_argument("PeriodicMesh1D: nodes must be strictly increasing");
  }
}

bool PeriodicMesh1D::is_uniform(double tol) const {
  return (widths_.array() - length_ / n_cells()).abs().maxCoeff() <= tol;
}

int PeriodicMesh1D::locate(double x) const {
  double y = std::fmod(x - nodes_[0], length_);
  if (y < 0) y += length_;
  y += nodes_[0];
  // nodes are sorted; binary search
  const double* first = nodes_.data();
  const double* last = first + nodes_.size();
  const double* it = std::upper_bound(first, last, y);
  const int j = static_cast<int>(it - first) - 1;
  return j < 0 ? 0 : j;
}

PeriodicMesh1D uniform_mesh(int n_cells) {
  if (n_cells < 2) throw std::invalid_argument("uniform_mesh: n_cells must be >= 2");
  Eigen::VectorXd nodes(n_cells);
  for (int j = 0; j < n_cells; ++j) nodes[j] = static_cast<double>(j) / n_cells;
  return PeriodicMesh1D(std::move(nodes));
}

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed * 0x9E3779B97F4A7C15ULL + (counter + 1) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

PeriodicMesh1D perturbed_mesh(int n_cells, double amplitude, std::uint64_t seed) {
  if (n_cells < 2) throw std::invalid_argument("perturbed_mesh: n_cells must be >= 2");
  if (!(amplitude >= 0.0) || amplitude >= 0.5) {
    throw std::invalid_argument("perturbed_mesh: amplitude must lie in [0, 0.5)");
  }
  const double h = 1.0 / n_cells;
  Eigen::VectorXd nodes(n_cells);
  nodes[0] = 0.0;
  for (int j = 1; j < n_cells; ++j) {
    const double u = counter_uniform(seed, static_cast<std::uint64_t>(j));
    nodes[j] = static_cast<double>(j) / n_cells + amplitude * h * (2.0 * u - 1.0);
  }
  PeriodicMesh1D mesh(std::move(nodes));
  mesh.seed = seed;
  mesh.amplitude = amplitude;
  return mesh;
}

void write_mesh_csv(const PeriodicMesh1D& mesh, const std::string& path) {
  CsvWriter csv(path, {"j", "x_left", "h_j"});
  for (int j = 0; j < mesh.n_cells(); ++j) csv.row(j, mesh.x_left(j), mesh.width(j));
}

}  // namespace dgwave
