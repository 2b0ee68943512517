#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "coframe/algebra3.hpp"

namespace coframe {

/// The tableau A_Q = span{ [x] + [y]Q : x, y in R^3 }, spanned by the six
/// matrices [e_i], [e_i]Q. dimension is the numerical rank of the vectorized
/// basis; annihilator holds a Frobenius-orthonormal basis of the orthogonal
/// complement (9 - dimension functionals).
struct Tableau {
  Mat3 q;
  std::array<Mat3, 6> basis;
  int dimension = 0;
  std::vector<Mat3> annihilator;
  /// Frobenius-orthonormal basis of the span itself (kept for character
  /// computations).
  std::vector<Mat3> ortho_basis;
};

Tableau build_tableau(const Mat3& q);

/// Homogeneous cubic in (z1,z2,z3), coefficients stored on the monomial order
/// (3,0,0),(2,1,0),(2,0,1),(1,2,0),(1,1,1),(1,0,2),(0,3,0),(0,2,1),(0,1,2),(0,0,3).
struct CubicForm {
  std::array<double, 10> c{};

  static const std::array<std::array<int, 3>, 10>& exponents();
  double eval(const Vec3& z) const;
  Vec3 gradient(const Vec3& z) const;
  double max_abs() const;
  bool identically_zero(double tol = 1e-9) const { return max_abs() <= tol; }
};

/// det C_Q(z*) with C(z)_{a,i} = (L_a z)_i over the annihilator functionals;
/// exact polynomial expansion. Requires dimension 6 (throws LowDimension).
CubicForm characteristic_cubic(const Tableau& t);

/// Scale-free incidence cubic det[ normalized basis | x z^T slots ](z):
/// defined for every Q, proportional to characteristic_cubic when the
/// dimension is 6, and identically zero exactly when some covector line meets
/// A_Q for all z (in particular whenever dimension < 6).
CubicForm incidence_cubic(const Mat3& q);

enum class VerdictKind { Involutive, DegenerateConeRY0, DegenerateConeR2, LowDimension };

const char* verdict_kind_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::LowDimension;
  std::array<int, 3> characters{0, 0, 0};
  int dimension = 0;
  bool cubic_identically_zero = false;
  /// Normal-form parameters (x, y, r) for the degenerate cones.
  std::optional<std::array<double, 3>> witness;
  double residual_ry0 = 0.0;
  double residual_r2 = 0.0;
};

/// Prop. 2.4 trichotomy. Involutive iff the tableau has dimension 6 (then the
/// characteristic cubic is not identically zero and the characters are
/// (3,3,0)); dimension 3 means the trace-free part vanishes (LowDimension);
/// otherwise the trace-free part lies on one of the two degenerate cones,
/// discriminated through the diagonalized normal form.
Verdict classify(const Mat3& q);

struct CubicSampleReport {
  int roots_found = 0;
  double min_gradient_norm = std::numeric_limits<double>::infinity();
  Vec3 argmin = Vec3::Zero();
};

/// Samples the projective zero set of the cubic along random lines and
/// reports the smallest gradient norm seen at a root. Exploratory only; makes
/// no smoothness claim. Throws IdenticallyZero on the zero cubic.
CubicSampleReport cubic_gradient_sample(const CubicForm& c, int n, std::uint64_t seed);

}  // namespace coframe
