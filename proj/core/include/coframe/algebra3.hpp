#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>

#include "coframe/error.hpp"
#include "coframe/rng.hpp"

namespace coframe {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// The hat isomorphism R^3 -> so(3):
///   [x] = (  0   x3  -x2 )
///         ( -x3   0   x1 )
///         (  x2  -x1   0 )
/// so that [x]y = y x x (the negative of the usual cross product x x y).
Mat3 hat(const Vec3& v);

/// Inverse of hat on the skew part. Throws NotSkew if ||M + M^T|| exceeds tol.
Vec3 vee(const Mat3& m, double tol = 1e-9);

/// Special-orthogonal 3x3 matrix. Construction validates orthogonality
/// (||R^T R - I|| <= 1e-10) and det R = 1 (within 1e-10).
class Rot3 {
 public:
  Rot3() : m_(Mat3::Identity()) {}
  explicit Rot3(const Mat3& m);

  static Rot3 identity() { return Rot3(); }
  /// Rotation by `angle` about the (nonzero) axis, via Rodrigues' formula.
  static Rot3 axis_angle(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }
  Rot3 transpose() const;

  friend Rot3 operator*(const Rot3& a, const Rot3& b);
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  struct Unchecked {};
  Rot3(const Mat3& m, Unchecked) : m_(m) {}
  Mat3 m_;

  friend Rot3 project_rotation(const Mat3&, double);
};

/// Nearest special-orthogonal matrix (polar factor, via SVD).
/// Requires det m > tol; throws Degenerate otherwise.
Rot3 project_rotation(const Mat3& m, double tol = 1e-12);

/// Deterministic samplers on top of Rng.
Vec3 random_vec3(Rng& rng, double lo = -1.0, double hi = 1.0);
Mat3 random_mat3(Rng& rng, double lo = -1.0, double hi = 1.0);
Rot3 random_rotation(Rng& rng);

/// Max-abs defects of the hat-map identity block, the SO(3) conjugation
/// identity and the GL(3) wedge identity, evaluated on seeded random inputs
/// (forms are instantiated with constant coefficients).
struct IdentityReport {
  static constexpr int kCount = 10;
  std::array<double, kCount> defect{};
  int samples = 0;

  static const char* name(int i);
  double max_defect() const;
};

IdentityReport identity_suite(std::uint64_t seed, int samples = 10000);

}  // namespace coframe
