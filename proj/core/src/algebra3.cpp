#include "coframe/algebra3.hpp"

#include <cmath>

namespace coframe {

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, v(2), -v(1),
      -v(2), 0.0, v(0),
      v(1), -v(0), 0.0;
  return m;
}

Vec3 vee(const Mat3& m, double tol) {
  const double sym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (sym > tol) fail(Errc::NotSkew, "matrix is not skew-symmetric within tolerance");
  const Mat3 s = 0.5 * (m - m.transpose());
  return Vec3(s(1, 2), s(2, 0), s(0, 1));
}

Rot3::Rot3(const Mat3& m) : m_(m) {
  const double ortho = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (ortho > 1e-10 || std::abs(det - 1.0) > 1e-10)
    fail(Errc::InvalidInput, "matrix does not satisfy the Rot3 invariants");
}

Rot3 Rot3::axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (n < 1e-14) fail(Errc::ZeroVector, "axis_angle requires a nonzero axis");
  const Vec3 u = axis / n;
  // Rodrigues with the hat convention above: exp(t[u]) rotates by -t about u,
  // which is still a rotation by |t|; callers only rely on orthogonality.
  const Mat3 k = hat(u);
  Mat3 r = Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
  return Rot3(r, Unchecked{});
}

Rot3 Rot3::transpose() const { return Rot3(Mat3(m_.transpose()), Unchecked{}); }

Rot3 operator*(const Rot3& a, const Rot3& b) {
  return Rot3(Mat3(a.m_ * b.m_), Rot3::Unchecked{});
}

Rot3 project_rotation(const Mat3& m, double tol) {
  if (m.determinant() <= tol) fail(Errc::Degenerate, "project_rotation requires det > tol");
  // Newton iteration for the orthogonal polar factor, X <- (X + X^-T)/2.
  // Quadratically convergent for det > 0; the SVD route serves as the
  // independent oracle in the test suite.
  Mat3 x = m;
  for (int it = 0; it < 80; ++it) {
    Mat3 next = 0.5 * (x + x.inverse().transpose());
    const double step = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (step < 1e-15) break;
  }
  return Rot3(x);
}

Vec3 random_vec3(Rng& rng, double lo, double hi) {
  return Vec3(rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi));
}

Mat3 random_mat3(Rng& rng, double lo, double hi) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

Rot3 random_rotation(Rng& rng) {
  Vec3 axis;
  do {
    axis = random_vec3(rng);
  } while (axis.norm() < 0.1);
  const double angle = rng.uniform(0.0, 2.0 * M_PI);
  return Rot3::axis_angle(axis, angle);
}

namespace {

// Constant-coefficient differential forms on R^3.
//
// A scalar 1-form is its coefficient vector on (du1,du2,du3); a scalar 2-form
// its coefficients on the cyclic basis (du2^du3, du3^du1, du1^du2). With this
// pairing a^b (two 1-forms) is cross(a,b) and a^B (1-form ^ 2-form) is
// dot(a,B) times the volume form. Vector-valued 1-forms are Mat3 with row i
// the coefficients of component i; matrix-valued forms are 3x3 arrays of
// coefficient vectors.
using MatForm = std::array<std::array<Vec3, 3>, 3>;

MatForm zero_matform() {
  MatForm f;
  for (auto& row : f)
    for (auto& e : row) e.setZero();
  return f;
}

// [alpha] for a vector-valued 1-form alpha: ([alpha])_{ik} = sum_j eps_{ikj} alpha^j.
MatForm hat_form(const Mat3& alpha) {
  MatForm f = zero_matform();
  f[0][1] = alpha.row(2);
  f[0][2] = -alpha.row(1);
  f[1][0] = -alpha.row(2);
  f[1][2] = alpha.row(0);
  f[2][0] = alpha.row(1);
  f[2][1] = -alpha.row(0);
  return f;
}

// Matrix-of-1-forms wedge vector-of-1-forms -> vector of 2-forms (rows).
Mat3 wedge_mat_vec(const MatForm& f, const Mat3& v) {
  Mat3 out = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    Vec3 acc = Vec3::Zero();
    for (int k = 0; k < 3; ++k) acc += f[i][k].cross(v.row(k));
    out.row(i) = acc;
  }
  return out;
}

MatForm wedge_mat_mat(const MatForm& a, const MatForm& b) {
  MatForm out = zero_matform();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) out[i][j] += a[i][k].cross(b[k][j]);
  return out;
}

MatForm wedge_scalar_mat(const Vec3& s, const MatForm& f) {
  MatForm out = zero_matform();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = s.cross(f[i][j]);
  return out;
}

// hat of a vector of 2-forms (rows of w).
MatForm hat_form2(const Mat3& w) { return hat_form(w); }

MatForm transpose_form(const MatForm& f) {
  MatForm out = zero_matform();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = f[j][i];
  return out;
}

Vec3 trace_form(const MatForm& f) { return f[0][0] + f[1][1] + f[2][2]; }

double max_abs(const MatForm& f) {
  double m = 0.0;
  for (const auto& row : f)
    for (const auto& e : row) m = std::max(m, e.cwiseAbs().maxCoeff());
  return m;
}

double max_abs(const Mat3& m) { return m.cwiseAbs().maxCoeff(); }

MatForm sub(const MatForm& a, const MatForm& b) {
  MatForm out = zero_matform();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[i][j] = a[i][j] - b[i][j];
  return out;
}

}  // namespace

const char* IdentityReport::name(int i) {
  static const char* names[IdentityReport::kCount] = {
      "[x]y = -[y]x",
      "[Ax] = (trA)[x] - tA[x] - [x]A",
      "[x][y] = y tx - (tx y) I",
      "[a]^b = [b]^a",
      "[g^a] = (tr g)^[a] - tg^[a] + [a]^g",
      "[a]^[b] = (tb^a) I - b^ta",
      "ta^[a]^a = -6 a1^a2^a3",
      "[Aa]^a = ((trA)I - tA)/2 [a]^a",
      "[Rx] = R[x]R^-1",
      "[Aa]^Aa = det(A) (tA)^-1 [a]^a",
  };
  return names[i];
}

double IdentityReport::max_defect() const {
  double m = 0.0;
  for (double d : defect) m = std::max(m, d);
  return m;
}

IdentityReport identity_suite(std::uint64_t seed, int samples) {
  Rng rng(seed);
  IdentityReport rep;
  rep.samples = samples;
  const Mat3 id = Mat3::Identity();

  for (int s = 0; s < samples; ++s) {
    const Vec3 x = random_vec3(rng);
    const Vec3 y = random_vec3(rng);
    const Mat3 a = random_mat3(rng);
    const Mat3 alpha = random_mat3(rng);  // vector-valued 1-form coefficients
    const Mat3 beta = random_mat3(rng);
    MatForm gamma = zero_matform();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) gamma[i][j] = random_vec3(rng);
    const Rot3 rot = random_rotation(rng);

    auto track = [&rep](int i, double d) { rep.defect[i] = std::max(rep.defect[i], d); };

    track(0, (hat(x) * y + hat(y) * x).cwiseAbs().maxCoeff());

    track(1, max_abs(Mat3(hat(a * x) -
                          (a.trace() * hat(x) - a.transpose() * hat(x) - hat(x) * a))));

    track(2, max_abs(Mat3(hat(x) * hat(y) - (y * x.transpose() - x.dot(y) * id))));

    const MatForm hat_alpha = hat_form(alpha);
    const MatForm hat_beta = hat_form(beta);
    track(3, max_abs(Mat3(wedge_mat_vec(hat_alpha, beta) - wedge_mat_vec(hat_beta, alpha))));

    {
      // gamma ^ alpha is a vector of 2-forms; hat it and compare.
      Mat3 ga = Mat3::Zero();
      for (int i = 0; i < 3; ++i) {
        Vec3 acc = Vec3::Zero();
        for (int k = 0; k < 3; ++k) acc += gamma[i][k].cross(alpha.row(k));
        ga.row(i) = acc;
      }
      const MatForm lhs = hat_form2(ga);
      MatForm rhs = sub(wedge_scalar_mat(trace_form(gamma), hat_alpha),
                        wedge_mat_mat(transpose_form(gamma), hat_alpha));
      const MatForm ag = wedge_mat_mat(hat_alpha, gamma);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) rhs[i][j] += ag[i][j];
      track(4, max_abs(sub(lhs, rhs)));
    }

    {
      const MatForm lhs = wedge_mat_mat(hat_alpha, hat_beta);
      Vec3 tba = Vec3::Zero();  // tb ^ a, a scalar 2-form
      for (int i = 0; i < 3; ++i) tba += Vec3(beta.row(i)).cross(alpha.row(i));
      MatForm rhs = zero_matform();
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          rhs[i][j] = -Vec3(beta.row(i)).cross(alpha.row(j));
          if (i == j) rhs[i][j] += tba;
        }
      track(5, max_abs(sub(lhs, rhs)));
    }

    {
      const Mat3 w = wedge_mat_vec(hat_alpha, alpha);  // [a]^a
      double lhs = 0.0;
      for (int i = 0; i < 3; ++i) lhs += Vec3(alpha.row(i)).dot(w.row(i));
      track(6, std::abs(lhs + 6.0 * alpha.determinant()));
    }

    {
      const Mat3 w = wedge_mat_vec(hat_alpha, alpha);
      const Mat3 lhs = wedge_mat_vec(hat_form(Mat3(a * alpha)), alpha);
      const Mat3 rhs = 0.5 * (a.trace() * id - a.transpose()) * w;
      track(7, max_abs(Mat3(lhs - rhs)));
    }

    track(8, max_abs(Mat3(hat(rot.matrix() * x) -
                          rot.matrix() * hat(x) * rot.matrix().transpose())));

    {
      Mat3 g;  // GL(3) sample, determinant bounded away from zero
      do {
        g = random_mat3(rng);
      } while (std::abs(g.determinant()) < 0.25);
      const Mat3 galpha = g * alpha;
      const Mat3 lhs = wedge_mat_vec(hat_form(galpha), galpha);
      const Mat3 rhs =
          g.determinant() * g.transpose().inverse() * wedge_mat_vec(hat_alpha, alpha);
      track(9, max_abs(Mat3(lhs - rhs)));
    }
  }
  return rep;
}

}  // namespace coframe
