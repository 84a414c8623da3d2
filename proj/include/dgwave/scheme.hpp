#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace dgwave {

enum class FluxKind { Upwind, Centered, Aux };

/// The four methods compared throughout: upwind (U), centered (C), the
/// auxiliary-variable scheme with alpha = 1 (A) and with the optimal alpha (A*).
enum class Method { U, C, A, AStar };

/// Optimal coupling constant for the auxiliary scheme at degree N.
template <typename Real>
Real alpha_star(int degree) {
  using std::sqrt;
  if (degree < 0) throw std::invalid_argument("alpha_star: negative degree");
  const Real n(degree);
  if (degree == 0) return sqrt(Real(4) / Real(3));
  if (degree % 2 == 1) return sqrt(n * (2 * n + 3) / ((n + 1) * (2 * n + 1)));
  return sqrt((n + 1) * (2 * n + 1) / (n * (2 * n + 3)));
}

struct SchemeConfig {
  int degree = 0;
  FluxKind flux = FluxKind::Upwind;
  double alpha = 0.0;  // used by FluxKind::Aux only

  bool has_aux() const { return flux == FluxKind::Aux; }
  int n_modes() const { return degree + 1; }
  int n_vars() const { return has_aux() ? 2 : 1; }

  static SchemeConfig upwind(int degree) { return {check(degree), FluxKind::Upwind, 0.0}; }
  static SchemeConfig centered(int degree) { return {check(degree), FluxKind::Centered, 0.0}; }
  static SchemeConfig aux(int degree, double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("SchemeConfig: alpha must be finite");
    return {check(degree), FluxKind::Aux, alpha};
  }
  static SchemeConfig for_method(Method method, int degree) {
    switch (method) {
      case Method::U: return upwind(degree);
      case Method::C: return centered(degree);
      case Method::A: return aux(degree, 1.0);
      case Method::AStar: return aux(check(degree), alpha_star<double>(degree));
    }
    throw std::invalid_argument("unknown method");
  }

 private:
  static int check(int degree) {
    if (degree < 0) throw std::invalid_argument("SchemeConfig: degree must be >= 0");
    return degree;
  }
};

inline std::string to_string(Method method) {
  switch (method) {
    case Method::U: return "U";
    case Method::C: return "C";
    case Method::A: return "A";
    case Method::AStar: return "Astar";
  }
  return "?";
}

inline Method parse_method(const std::string& name) {
  if (name == "U") return Method::U;
  if (name == "C") return Method::C;
  if (name == "A") return Method::A;
  if (name == "Astar" || name == "A*") return Method::AStar;
  throw std::invalid_argument("unknown scheme '" + name + "' (expected U, C, A or Astar)");
}

inline constexpr Method kAllMethods[] = {Method::U, Method::C, Method::A, Method::AStar};

}  // namespace dgwave
