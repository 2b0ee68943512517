#include "coframe/tableau.hpp"

#include <algorithm>
#include <cmath>

namespace coframe {

namespace {

using Vec9 = Eigen::Matrix<double, 9, 1>;
using Mat9 = Eigen::Matrix<double, 9, 9>;

Vec9 vectorize(const Mat3& m) {
  Vec9 v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v(3 * i + j) = m(i, j);
  return v;
}

Mat3 unvectorize(const Vec9& v) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = v(3 * i + j);
  return m;
}

int monomial_index(int e0, int e1, int e2) {
  const auto& table = CubicForm::exponents();
  for (int i = 0; i < 10; ++i)
    if (table[i][0] == e0 && table[i][1] == e1 && table[i][2] == e2) return i;
  return -1;
}

// Accumulate the product of three linear forms into a cubic.
void add_triple_product(CubicForm& out, const Vec3& a, const Vec3& b, const Vec3& c,
                        double sign) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        int e[3] = {0, 0, 0};
        ++e[i];
        ++e[j];
        ++e[k];
        out.c[monomial_index(e[0], e[1], e[2])] += sign * a(i) * b(j) * c(k);
      }
}

}  // namespace

const std::array<std::array<int, 3>, 10>& CubicForm::exponents() {
  static const std::array<std::array<int, 3>, 10> table = {{{3, 0, 0},
                                                            {2, 1, 0},
                                                            {2, 0, 1},
                                                            {1, 2, 0},
                                                            {1, 1, 1},
                                                            {1, 0, 2},
                                                            {0, 3, 0},
                                                            {0, 2, 1},
                                                            {0, 1, 2},
                                                            {0, 0, 3}}};
  return table;
}

double CubicForm::eval(const Vec3& z) const {
  double sum = 0.0;
  const auto& table = exponents();
  for (int t = 0; t < 10; ++t) {
    double v = c[t];
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < table[t][a]; ++k) v *= z(a);
    sum += v;
  }
  return sum;
}

Vec3 CubicForm::gradient(const Vec3& z) const {
  Vec3 g = Vec3::Zero();
  const auto& table = exponents();
  for (int t = 0; t < 10; ++t) {
    for (int a = 0; a < 3; ++a) {
      if (table[t][a] == 0) continue;
      double v = c[t] * table[t][a];
      for (int b = 0; b < 3; ++b) {
        const int e = table[t][b] - (a == b ? 1 : 0);
        for (int k = 0; k < e; ++k) v *= z(b);
      }
      g(a) += v;
    }
  }
  return g;
}

double CubicForm::max_abs() const {
  double m = 0.0;
  for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

Tableau build_tableau(const Mat3& q) {
  Tableau t;
  t.q = q;
  for (int i = 0; i < 3; ++i) {
    const Mat3 h = hat(Vec3::Unit(i));
    t.basis[i] = h;
    t.basis[3 + i] = h * q;
  }
  Eigen::Matrix<double, 9, 6> b;
  for (int c = 0; c < 6; ++c) b.col(c) = vectorize(t.basis[c]);
  Eigen::JacobiSVD<Eigen::Matrix<double, 9, 6>> svd(b, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double thresh = 1e-9 * s(0);
  int rank = 0;
  for (int i = 0; i < 6; ++i)
    if (s(i) > thresh) ++rank;
  t.dimension = rank;
  for (int i = 0; i < rank; ++i) t.ortho_basis.push_back(unvectorize(svd.matrixU().col(i)));
  for (int i = rank; i < 9; ++i) t.annihilator.push_back(unvectorize(svd.matrixU().col(i)));
  return t;
}

CubicForm characteristic_cubic(const Tableau& t) {
  if (t.dimension != 6)
    fail(Errc::LowDimension, "characteristic cubic requires a 6-dimensional tableau");
  // C(z)_{a,i} = (L_a z)_i: entry (a,i) is the linear form with coefficient
  // vector row i of L_a. Expand det C exactly.
  std::array<std::array<Vec3, 3>, 3> entry;
  for (int a = 0; a < 3; ++a)
    for (int i = 0; i < 3; ++i) entry[a][i] = t.annihilator[a].row(i);

  CubicForm out;
  static const int perm[6][4] = {{0, 1, 2, +1}, {1, 2, 0, +1}, {2, 0, 1, +1},
                                 {0, 2, 1, -1}, {2, 1, 0, -1}, {1, 0, 2, -1}};
  for (const auto& p : perm)
    add_triple_product(out, entry[0][p[0]], entry[1][p[1]], entry[2][p[2]],
                       static_cast<double>(p[3]));
  return out;
}

CubicForm incidence_cubic(const Mat3& q) {
  // det of [ b1 ... b6 | vec(e1 z^T) vec(e2 z^T) vec(e3 z^T) ] as a cubic in z.
  // Basis columns are normalized so the zero test is scale-free.
  Eigen::Matrix<double, 9, 6> b;
  for (int i = 0; i < 3; ++i) {
    const Mat3 h = hat(Vec3::Unit(i));
    b.col(i) = vectorize(h);
    b.col(3 + i) = vectorize(Mat3(h * q));
  }
  for (int c = 0; c < 6; ++c) {
    const double n = b.col(c).norm();
    if (n > 1e-12) b.col(c) /= n;
  }
  CubicForm out;
  Mat9 m = Mat9::Zero();
  m.block<9, 6>(0, 0) = b;
  for (int a = 0; a < 3; ++a)
    for (int bb = 0; bb < 3; ++bb)
      for (int cc = 0; cc < 3; ++cc) {
        m.col(6).setZero();
        m.col(7).setZero();
        m.col(8).setZero();
        m(3 * 0 + a, 6) = 1.0;  // vec(e1 e_a^T)
        m(3 * 1 + bb, 7) = 1.0;
        m(3 * 2 + cc, 8) = 1.0;
        const double d = m.determinant();
        int e[3] = {0, 0, 0};
        ++e[a];
        ++e[bb];
        ++e[cc];
        out.c[monomial_index(e[0], e[1], e[2])] += d;
      }
  return out;
}

namespace {

int numeric_rank(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > 1e-9 * s(0)) ++r;
  return r;
}

// Cartan characters of the tableau from a generic flag: s1 = dim{B v1},
// s1+s2 = dim{(B v1, B v2)}, s3 = dim - s1 - s2. Maximized over a few seeded
// draws to keep the flag generic and the result deterministic.
std::array<int, 3> tableau_characters(const Tableau& t) {
  const int dim = t.dimension;
  Rng rng(0x9e3779b97f4a7c15ull);
  int best_s1 = 0, best_s12 = 0;
  for (int draw = 0; draw < 6; ++draw) {
    const Vec3 v1 = random_vec3(rng).normalized();
    const Vec3 v2 = random_vec3(rng).normalized();
    Eigen::MatrixXd m1(3, dim), m12(6, dim);
    for (int c = 0; c < dim; ++c) {
      m1.col(c) = t.ortho_basis[c] * v1;
      m12.block<3, 1>(0, c) = t.ortho_basis[c] * v1;
      m12.block<3, 1>(3, c) = t.ortho_basis[c] * v2;
    }
    best_s1 = std::max(best_s1, numeric_rank(m1));
    best_s12 = std::max(best_s12, numeric_rank(m12));
  }
  return {best_s1, best_s12 - best_s1, dim - best_s12};
}

}  // namespace

const char* verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Involutive: return "Involutive";
    case VerdictKind::DegenerateConeRY0: return "DegenerateConeRY0";
    case VerdictKind::DegenerateConeR2: return "DegenerateConeR2";
    case VerdictKind::LowDimension: return "LowDimension";
  }
  return "?";
}

Verdict classify(const Mat3& q) {
  const Mat3 q0 = q - (q.trace() / 3.0) * Mat3::Identity();
  const Tableau t = build_tableau(q0);

  Verdict v;
  v.dimension = t.dimension;
  v.characters = tableau_characters(t);
  v.cubic_identically_zero = incidence_cubic(q0).identically_zero(1e-9);

  if (t.dimension == 6) {
    v.kind = VerdictKind::Involutive;
    v.characters = {3, 3, 0};
    return v;
  }
  if (t.dimension <= 3) {
    v.kind = VerdictKind::LowDimension;
    return v;
  }

  // Degenerate cones: diagonalize the symmetric part, read off the skew
  // vector, and test the two normal-form branches of Eq. (2.7)-type:
  // RY0: p = 0 and two equal eigenvalues; R2: p aligned with one eigenaxis
  // and p_a^2 + 2 q_b^2 + 5 q_b q_c + 2 q_c^2 = 0.
  const double scale = std::max(q0.norm(), 1e-300);
  const Mat3 sym = 0.5 * (q0 + q0.transpose());
  const Mat3 skew = 0.5 * (q0 - q0.transpose());
  const Vec3 p(skew(1, 2), skew(2, 0), skew(0, 1));

  Eigen::SelfAdjointEigenSolver<Mat3> eig(sym);
  const Vec3 d = eig.eigenvalues();
  const Vec3 pp = eig.eigenvectors().transpose() * p;

  double r_r2 = std::numeric_limits<double>::infinity();
  int best_axis = 0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const double f =
        pp(a) * pp(a) + 2.0 * d(b) * d(b) + 5.0 * d(b) * d(c) + 2.0 * d(c) * d(c);
    const double res =
        std::max(std::max(std::abs(pp(b)), std::abs(pp(c))), std::abs(f) / scale) / scale;
    if (res < r_r2) {
      r_r2 = res;
      best_axis = a;
    }
  }
  double gap = std::numeric_limits<double>::infinity();
  int ry0_axis = 0;
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    if (std::abs(d(b) - d(c)) < gap) {
      gap = std::abs(d(b) - d(c));
      ry0_axis = a;
    }
  }
  const double r_ry0 = std::max(pp.cwiseAbs().maxCoeff(), gap) / scale;

  v.residual_ry0 = r_ry0;
  v.residual_r2 = r_r2;
  if (r_ry0 <= r_r2) {
    v.kind = VerdictKind::DegenerateConeRY0;
    v.witness = std::array<double, 3>{-d(ry0_axis) / 2.0, 0.0, 0.0};
  } else {
    v.kind = VerdictKind::DegenerateConeR2;
    const int a = best_axis, b = (a + 1) % 3, c = (a + 2) % 3;
    v.witness = std::array<double, 3>{-d(a) / 2.0, pp(a) / 3.0, (d(b) - d(c)) / 6.0};
  }
  return v;
}

namespace {

// Real roots of c3 t^3 + c2 t^2 + c1 t + c0, via the companion matrix (with
// degree fallbacks).
int real_roots(double c3, double c2, double c1, double c0, std::array<double, 3>& out) {
  const double scale = std::max({std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
  if (scale == 0.0) return 0;
  if (std::abs(c3) > 1e-12 * scale) {
    Mat3 comp = Mat3::Zero();
    comp(0, 2) = -c0 / c3;
    comp(1, 2) = -c1 / c3;
    comp(2, 2) = -c2 / c3;
    comp(1, 0) = 1.0;
    comp(2, 1) = 1.0;
    Eigen::EigenSolver<Mat3> es(comp);
    int n = 0;
    for (int i = 0; i < 3; ++i) {
      const auto ev = es.eigenvalues()(i);
      if (std::abs(ev.imag()) < 1e-9 * (1.0 + std::abs(ev.real()))) out[n++] = ev.real();
    }
    return n;
  }
  if (std::abs(c2) > 1e-12 * scale) {
    const double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc < 0) return 0;
    out[0] = (-c1 + std::sqrt(disc)) / (2.0 * c2);
    out[1] = (-c1 - std::sqrt(disc)) / (2.0 * c2);
    return 2;
  }
  if (std::abs(c1) > 1e-12 * scale) {
    out[0] = -c0 / c1;
    return 1;
  }
  return 0;
}

}  // namespace

CubicSampleReport cubic_gradient_sample(const CubicForm& c, int n, std::uint64_t seed) {
  if (c.max_abs() <= 1e-12)
    fail(Errc::IdenticallyZero, "cannot sample the zero set of the zero cubic");
  Rng rng(seed);
  CubicSampleReport rep;
  for (int s = 0; s < n; ++s) {
    Vec3 a, b;
    do {
      a = random_vec3(rng);
    } while (a.norm() < 0.1);
    do {
      b = random_vec3(rng);
    } while (b.norm() < 0.1);
    a.normalize();
    b.normalize();
    // c(a + t b) = alpha t^3 + beta t^2 + gamma t + delta, recovered exactly
    // from four evaluations.
    const double delta = c.eval(a);
    const double alpha = c.eval(b);
    const double pp = c.eval(a + b), pm = c.eval(a - b);
    const double beta = 0.5 * (pp + pm) - delta;
    const double gamma = 0.5 * (pp - pm) - alpha;
    std::array<double, 3> roots;
    const int nr = real_roots(alpha, beta, gamma, delta, roots);
    for (int i = 0; i < nr; ++i) {
      Vec3 z = a + roots[i] * b;
      if (z.norm() < 1e-9) continue;
      z.normalize();
      ++rep.roots_found;
      const double gn = c.gradient(z).norm();
      if (gn < rep.min_gradient_norm) {
        rep.min_gradient_norm = gn;
        rep.argmin = z;
      }
    }
  }
  return rep;
}

}  // namespace coframe
