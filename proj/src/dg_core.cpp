#include "dgwave/dg_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgwave/csv.hpp"

namespace dgwave {

DGState zero_state(const PeriodicMesh1D& mesh, const SchemeConfig& config) {
  DGState s;
  s.u = Eigen::MatrixXd::Zero(mesh.n_cells(), config.n_modes());
  if (config.has_aux()) s.phi = Eigen::MatrixXd::Zero(mesh.n_cells(), config.n_modes());
  return s;
}

TraceValues traces(const DGState& state) {
  const int n = state.n_cells();
  const int modes = state.n_modes();
  const Eigen::VectorXd right = legendre_values(modes - 1, 1.0);
  const Eigen::VectorXd left = legendre_values(modes - 1, -1.0);

  // values of each cell at its right and left ends
  const Eigen::VectorXd u_at_right = state.u * right;
  const Eigen::VectorXd u_at_left = state.u * left;

  TraceValues t;
  t.u_minus.resize(n);
  t.u_plus = u_at_left;
  for (int j = 0; j < n; ++j) t.u_minus[j] = u_at_right[j == 0 ? n - 1 : j - 1];
  if (state.phi) {
    const Eigen::VectorXd p_at_right = *state.phi * right;
    t.phi_plus = *state.phi * left;
    t.phi_minus.resize(n);
    for (int j = 0; j < n; ++j) t.phi_minus[j] = p_at_right[j == 0 ? n - 1 : j - 1];
  }
  return t;
}

NodeFlux numerical_flux(const TraceValues& t, const SchemeConfig& config) {
  NodeFlux f;
  switch (config.flux) {
    case FluxKind::Upwind:
      f.u_hat = t.u_mean() - 0.5 * t.u_jump();
      break;
    case FluxKind::Centered:
      f.u_hat = t.u_mean();
      break;
    case FluxKind::Aux:
      if (t.phi_minus.size() != t.u_minus.size()) {
        throw std::invalid_argument("numerical_flux: auxiliary scheme needs phi traces");
      }
      f.u_hat = t.u_mean() + 0.5 * config.alpha * t.phi_jump();
      f.phi_hat = t.phi_mean() + 0.5 * config.alpha * t.u_jump();
      break;
  }
  return f;
}

DGOperator::DGOperator(PeriodicMesh1D mesh, SchemeConfig config)
    : mesh_(std::move(mesh)),
      config_(config),
      stiffness_(derivative_matrix(config.degree)),
      right_(legendre_values(config.degree, 1.0)),
      left_(legendre_values(config.degree, -1.0)) {}

void DGOperator::check_state(const DGState& state) const {
  if (state.n_cells() != mesh_.n_cells() || state.n_modes() != config_.n_modes()) {
    throw std::invalid_argument("DGOperator: state shape does not match mesh and degree");
  }
  if (state.phi.has_value() != config_.has_aux()) {
    throw std::invalid_argument("DGOperator: auxiliary field present iff the scheme is auxiliary");
  }
  if (state.phi && (state.phi->rows() != state.u.rows() || state.phi->cols() != state.u.cols())) {
    throw std::invalid_argument("DGOperator: phi shape does not match u");
  }
}

DGState DGOperator::rhs(const DGState& state) const {
  DGState out = zero_state(mesh_, config_);
  apply(state, out);
  return out;
}

void DGOperator::apply(const DGState& state, DGState& out) const {
  check_state(state);
  const int n = mesh_.n_cells();
  const NodeFlux flux = numerical_flux(traces(state), config_);

  // volume term: (u, v') -> K c per cell, i.e. rows of u times K^T
  out.u.noalias() = state.u * stiffness_.transpose();
  for (int j = 0; j < n; ++j) {
    const double scale = 2.0 / mesh_.width(j);
    const double right_flux = flux.u_hat[mesh_.right_neighbor(j)];
    const double left_flux = flux.u_hat[j];
    out.u.row(j) = scale * (out.u.row(j) - right_flux * right_.transpose() + left_flux * left_.transpose());
  }
  if (config_.has_aux()) {
    out.phi->noalias() = -(*state.phi) * stiffness_.transpose();
    for (int j = 0; j < n; ++j) {
      const double scale = 2.0 / mesh_.width(j);
      const double right_flux = flux.phi_hat[mesh_.right_neighbor(j)];
      const double left_flux = flux.phi_hat[j];
      out.phi->row(j) =
          scale * (out.phi->row(j) + right_flux * right_.transpose() - left_flux * left_.transpose());
    }
  }
  out.time = state.time;
}

Eigen::VectorXd DGOperator::flatten(const DGState& state) const {
  check_state(state);
  const int b = block_size();
  const int m = config_.n_modes();
  Eigen::VectorXd v(mesh_.n_cells() * b);
  for (int j = 0; j < mesh_.n_cells(); ++j) {
    v.segment(j * b, m) = state.u.row(j).transpose();
    if (state.phi) v.segment(j * b + m, m) = state.phi->row(j).transpose();
  }
  return v;
}

DGState DGOperator::unflatten(const Eigen::VectorXd& values) const {
  const int b = block_size();
  const int m = config_.n_modes();
  if (values.size() != mesh_.n_cells() * b) throw std::invalid_argument("unflatten: size mismatch");
  DGState s = zero_state(mesh_, config_);
  for (int j = 0; j < mesh_.n_cells(); ++j) {
    s.u.row(j) = values.segment(j * b, m).transpose();
    if (s.phi) s.phi->row(j) = values.segment(j * b + m, m).transpose();
  }
  return s;
}

Eigen::MatrixXd DGOperator::assemble() const {
  // The operator is linear, so columns are images of unit vectors.
  const int dofs = mesh_.n_cells() * block_size();
  Eigen::MatrixXd a(dofs, dofs);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dofs);
  DGState out = zero_state(mesh_, config_);
  for (int col = 0; col < dofs; ++col) {
    e[col] = 1.0;
    apply(unflatten(e), out);
    a.col(col) = flatten(out);
    e[col] = 0.0;
  }
  return a;
}

Eigen::MatrixXcd DGOperator::bloch_symbol(std::complex<double> theta) const {
  if (mesh_.n_cells() < 3 || !mesh_.is_uniform()) {
    throw std::invalid_argument("bloch_symbol: needs a uniform mesh with at least three cells");
  }
  const int b = block_size();
  const int n = mesh_.n_cells();
  // Only the first block row is needed; assemble it from unit vectors placed in
  // cells n-1, 0 and 1.
  Eigen::MatrixXcd symbol = Eigen::MatrixXcd::Zero(b, b);
  const std::complex<double> i(0.0, 1.0);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n * b);
  DGState out = zero_state(mesh_, config_);
  for (int shift : {-1, 0, 1}) {
    const int cell = (shift + n) % n;
    const std::complex<double> factor = std::exp(i * (static_cast<double>(shift) * theta));
    for (int k = 0; k < b; ++k) {
      e[cell * b + k] = 1.0;
      apply(unflatten(e), out);
      symbol.col(k) += factor * flatten(out).head(b).cast<std::complex<double>>();
      e[cell * b + k] = 0.0;
    }
  }
  return symbol;
}

DGState project_initial(const PeriodicMesh1D& mesh, const SchemeConfig& config, const ScalarFunction& u0,
                        const ScalarFunction& phi0, int n_points) {
  const QuadratureRule rule = gauss_legendre(std::max(n_points, config.degree + 2));
  DGState s = zero_state(mesh, config);
  for (int q = 0; q < rule.size(); ++q) {
    const Eigen::RowVectorXd basis = legendre_values(config.degree, rule.nodes[q]).transpose();
    for (int j = 0; j < mesh.n_cells(); ++j) {
      const double x = mesh.x_left(j) + 0.5 * mesh.width(j) * (rule.nodes[q] + 1.0);
      s.u.row(j) += rule.weights[q] * u0(x) * basis;
      if (s.phi && phi0) s.phi->row(j) += rule.weights[q] * phi0(x) * basis;
    }
  }
  return s;
}

Energy energy(const PeriodicMesh1D& mesh, const DGState& state) {
  Energy e;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    const double jac = 0.5 * mesh.width(j);
    e.u += jac * state.u.row(j).squaredNorm();
    if (state.phi) e.phi += jac * state.phi->row(j).squaredNorm();
  }
  return e;
}

double inner_product(const PeriodicMesh1D& mesh, const DGState& a, const DGState& b) {
  double sum = 0.0;
  for (int j = 0; j < mesh.n_cells(); ++j) {
    const double jac = 0.5 * mesh.width(j);
    sum += jac * a.u.row(j).dot(b.u.row(j));
    if (a.phi && b.phi) sum += jac * a.phi->row(j).dot(b.phi->row(j));
  }
  return sum;
}

std::pair<double, double> evaluate(const PeriodicMesh1D& mesh, const DGState& state, double x) {
  const int j = mesh.locate(x);
  double local = x - mesh.x_left(j);
  local -= std::floor(local / mesh.length()) * mesh.length();
  const double s = std::clamp(2.0 * local / mesh.width(j) - 1.0, -1.0, 1.0);
  const Eigen::VectorXd basis = legendre_values(state.n_modes() - 1, s);
  const double u = state.u.row(j).dot(basis);
  const double phi = state.phi ? state.phi->row(j).dot(basis) : 0.0;
  return {u, phi};
}

void write_snapshot_csv(const PeriodicMesh1D& mesh, const DGState& state, const std::string& path,
                        int samples_per_cell) {
  if (samples_per_cell < 1) throw std::invalid_argument("write_snapshot_csv: need at least one sample per cell");
  CsvWriter csv(path, {"x", "u_h", "phi_h"});
  for (int j = 0; j < mesh.n_cells(); ++j) {
    for (int m = 0; m < samples_per_cell; ++m) {
      const double s = -1.0 + (2.0 * m + 1.0) / samples_per_cell;
      const Eigen::VectorXd basis = legendre_values(state.n_modes() - 1, s);
      const double x = mesh.x_left(j) + 0.5 * mesh.width(j) * (s + 1.0);
      csv.row(x, state.u.row(j).dot(basis), state.phi ? state.phi->row(j).dot(basis) : 0.0);
    }
  }
}

}  // namespace dgwave
