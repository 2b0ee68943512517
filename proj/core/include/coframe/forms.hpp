#pragma once

#include <array>
#include <optional>

#include "coframe/algebra3.hpp"
#include "coframe/fields.hpp"

namespace coframe {

/// Scalar-valued 1-form: coefficient fields on (du1, du2, du3).
using Cov1 = std::array<ScalarField, 3>;
/// Scalar-valued 2-form: coefficient fields on the cyclic basis
/// (du2^du3, du3^du1, du1^du2). All sign conventions in this module use this
/// basis order.
using Cov2 = std::array<ScalarField, 3>;

/// R^3-valued 1-form; c(i, a) is the du^(a+1)-coefficient of component i.
class VForm1 {
 public:
  VForm1() = default;
  static VForm1 zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const ScalarField& c(int i, int a) const { return c_[3 * i + a]; }
  void set(int i, int a, ScalarField f);

  /// Coefficient matrix at a node: A(i,a).
  Mat3 node_matrix(std::int64_t flat) const;
  /// Componentwise forced-sampled copy.
  VForm1 sampled() const;
  bool is_polynomial() const;

 private:
  Grid grid_;
  std::array<ScalarField, 9> c_;
};

/// R^3-valued 2-form; c(i, m) on the cyclic 2-form basis.
class VForm2 {
 public:
  VForm2() = default;
  static VForm2 zeros(const Grid& grid);

  const Grid& grid() const { return grid_; }
  const ScalarField& c(int i, int m) const { return c_[3 * i + m]; }
  void set(int i, int m, ScalarField f);

  Mat3 node_matrix(std::int64_t flat) const;
  VForm2 sampled() const;

 private:
  Grid grid_;
  std::array<ScalarField, 9> c_;
};

/// R^3-valued 3-form (one coefficient field per component).
struct VForm3 {
  Grid grid;
  std::array<ScalarField, 3> c;
};

/// Exterior derivative of a 1-form (3-dimensional domains only). Exact on
/// polynomial backends, 2nd-order finite differences on sampled backends.
VForm2 exterior_derivative(const VForm1& f);
/// Exterior derivative of a 2-form (the componentwise divergence).
VForm3 exterior_derivative(const VForm2& f);

/// Wedge of scalar 1-forms (bilinear, antisymmetric).
Cov2 wedge11(const Cov1& a, const Cov1& b);
/// Wedge of a scalar 1-form with a scalar 2-form; returns the volume-form
/// coefficient.
ScalarField wedge12(const Cov1& a, const Cov2& b);

/// A coframing: omega with pointwise invertible coefficient matrix.
/// The determinant keeps one sign on the (connected) grid and
/// |det| >= det_floor > 0 at every node.
class Coframing {
 public:
  Coframing() = default;  // empty; use make() to build a validated coframing
  static Coframing make(VForm1 form, double required_floor = 0.0);

  const VForm1& form() const { return form_; }
  double det_floor() const { return det_floor_; }
  int orientation() const { return orientation_; }

 private:
  VForm1 form_;
  double det_floor_ = 0.0;
  int orientation_ = 1;
};

/// Unique phi with d(omega) = -[phi] ^ omega, solved nodewise as a 9x9 linear
/// system for the 9 coefficients of phi. Throws SingularSystem when the
/// nodewise system's condition number exceeds cond_limit.
VForm1 solve_connection(const Coframing& omega, double cond_limit = 1e8);

/// Max flatness defect over nodes and components of
/// d(phi^i) - phi^j ^ phi^k (cyclic).
double curvature_residual(const VForm1& phi);

/// lambda = -(w1^dw1 + w2^dw2 + w3^dw3) / (2 w1^w2^w3), evaluated nodewise on
/// the sampled view of omega (finite-difference d).
ScalarField lambda_of(const Coframing& omega);

/// Nodewise rank-1 structure data of d(omega) expressed in the omega-basis:
/// coefficient matrix B = w tv with unit v (sign: first nonzero entry
/// positive), lambda = -tr(B)/2, mu = |w + 2 lambda v| >= 0,
/// residual_rank = max second singular value of B.
struct StructureData {
  ScalarField lambda;
  ScalarField mu;
  std::array<ScalarField, 3> v;
  double residual_rank = 0.0;
  double max_sigma1 = 0.0;
  bool omega_zero = false;  // d(omega) vanishes on the whole grid
};

StructureData decompose_structure(const Coframing& omega, double rank_tol_rel = 0.05);

}  // namespace coframe
