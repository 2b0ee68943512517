#include "coframe/forms.hpp"

#include <cmath>

namespace coframe {

namespace {
// Cyclic index pairs of the 2-form basis: basis m = du^(am+1) ^ du^(bm+1).
constexpr int kA[3] = {1, 2, 0};
constexpr int kB[3] = {2, 0, 1};
}  // namespace

VForm1 VForm1::zeros(const Grid& grid) {
  VForm1 f;
  f.grid_ = grid;
  for (auto& e : f.c_) e = ScalarField::constant(grid, 0.0);
  return f;
}

void VForm1::set(int i, int a, ScalarField f) {
  if (!f.valid() || (grid_.dim() != 0 && !(f.grid() == grid_)))
    fail(Errc::InvalidInput, "VForm1::set requires a field on the form's grid");
  if (grid_.dim() == 0) {
    grid_ = f.grid();
    for (auto& e : c_)
      if (!e.valid()) e = ScalarField::constant(grid_, 0.0);
  }
  c_[3 * i + a] = std::move(f);
}

Mat3 VForm1::node_matrix(std::int64_t flat) const {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int a = 0; a < 3; ++a) m(i, a) = c(i, a).node_value(flat);
  return m;
}

VForm1 VForm1::sampled() const {
  VForm1 out;
  out.grid_ = grid_;
  for (int k = 0; k < 9; ++k) out.c_[k] = c_[k].sampled();
  return out;
}

bool VForm1::is_polynomial() const {
  for (const auto& e : c_)
    if (!e.is_polynomial()) return false;
  return true;
}

VForm2 VForm2::zeros(const Grid& grid) {
  VForm2 f;
  f.grid_ = grid;
  for (auto& e : f.c_) e = ScalarField::constant(grid, 0.0);
  return f;
}

void VForm2::set(int i, int m, ScalarField f) {
  if (!f.valid() || (grid_.dim() != 0 && !(f.grid() == grid_)))
    fail(Errc::InvalidInput, "VForm2::set requires a field on the form's grid");
  if (grid_.dim() == 0) {
    grid_ = f.grid();
    for (auto& e : c_)
      if (!e.valid()) e = ScalarField::constant(grid_, 0.0);
  }
  c_[3 * i + m] = std::move(f);
}

Mat3 VForm2::node_matrix(std::int64_t flat) const {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = c(i, j).node_value(flat);
  return m;
}

VForm2 VForm2::sampled() const {
  VForm2 out;
  out.grid_ = grid_;
  for (int k = 0; k < 9; ++k) out.c_[k] = c_[k].sampled();
  return out;
}

VForm2 exterior_derivative(const VForm1& f) {
  if (f.grid().dim() != 3)
    fail(Errc::InvalidInput, "exterior_derivative requires a 3-dimensional domain");
  VForm2 out = VForm2::zeros(f.grid());
  for (int i = 0; i < 3; ++i)
    for (int m = 0; m < 3; ++m)
      out.set(i, m, f.c(i, kB[m]).partial(kA[m]) - f.c(i, kA[m]).partial(kB[m]));
  return out;
}

VForm3 exterior_derivative(const VForm2& f) {
  if (f.grid().dim() != 3)
    fail(Errc::InvalidInput, "exterior_derivative requires a 3-dimensional domain");
  VForm3 out{f.grid(), {}};
  for (int i = 0; i < 3; ++i)
    out.c[i] = f.c(i, 0).partial(0) + f.c(i, 1).partial(1) + f.c(i, 2).partial(2);
  return out;
}

Cov2 wedge11(const Cov1& a, const Cov1& b) {
  Cov2 out;
  for (int m = 0; m < 3; ++m)
    out[m] = a[kA[m]] * b[kB[m]] - a[kB[m]] * b[kA[m]];
  return out;
}

ScalarField wedge12(const Cov1& a, const Cov2& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

Coframing Coframing::make(VForm1 form, double required_floor) {
  if (form.grid().dim() != 3)
    fail(Errc::DegenerateCoframe, "a coframing needs a 3-dimensional domain");
  const std::int64_t n = form.grid().num_nodes();
  double min_abs = std::numeric_limits<double>::infinity();
  int sign = 0;
  for (std::int64_t fl = 0; fl < n; ++fl) {
    const double det = form.node_matrix(fl).determinant();
    if (det == 0.0 || (sign != 0 && (det > 0) != (sign > 0)))
      fail(Errc::DegenerateCoframe, "coframing determinant vanishes on the grid");
    if (sign == 0) sign = det > 0 ? 1 : -1;
    min_abs = std::min(min_abs, std::abs(det));
  }
  if (!(min_abs > required_floor))
    fail(Errc::DegenerateCoframe, "coframing determinant below the required floor");
  Coframing c;
  c.form_ = std::move(form);
  c.det_floor_ = min_abs;
  c.orientation_ = sign;
  return c;
}

namespace {

// 9x9 system for phi at a node: equation (i,m) in unknowns Phi(j,a) with
// ([phi]^omega)^i_m = sum_{j,k} eps_{ikj} (Phi_{j,am} A_{k,bm} - Phi_{j,bm} A_{k,am}).
void assemble_connection_system(const Mat3& a, Eigen::Matrix<double, 9, 9>& m) {
  m.setZero();
  auto eps = [](int i, int k, int j) -> double {
    if (i == k || k == j || i == j) return 0.0;
    return ((k - i + 3) % 3 == 1 && (j - k + 3) % 3 == 1) ? 1.0 : -1.0;
  };
  for (int i = 0; i < 3; ++i)
    for (int mm = 0; mm < 3; ++mm) {
      const int row = 3 * i + mm;
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          const double e = eps(i, k, j);
          if (e == 0.0) continue;
          m(row, 3 * j + kA[mm]) += e * a(k, kB[mm]);
          m(row, 3 * j + kB[mm]) -= e * a(k, kA[mm]);
        }
    }
}

}  // namespace

VForm1 solve_connection(const Coframing& omega, double cond_limit) {
  const Grid& g = omega.form().grid();
  const std::int64_t n = g.num_nodes();
  const VForm2 domega = exterior_derivative(omega.form());

  std::array<std::vector<double>, 9> out;
  for (auto& v : out) v.resize(n);

  Eigen::Matrix<double, 9, 9> sys;
  for (std::int64_t fl = 0; fl < n; ++fl) {
    const Mat3 a = omega.form().node_matrix(fl);
    const Mat3 d = domega.node_matrix(fl);
    assemble_connection_system(a, sys);
    Eigen::PartialPivLU<Eigen::Matrix<double, 9, 9>> lu(sys);
    const Eigen::Matrix<double, 9, 9> inv = lu.inverse();
    const double cond = sys.cwiseAbs().rowwise().sum().maxCoeff() *
                        inv.cwiseAbs().rowwise().sum().maxCoeff();
    if (!std::isfinite(cond) || cond > cond_limit)
      fail(Errc::SingularSystem, "connection system ill-conditioned at a grid node");
    Eigen::Matrix<double, 9, 1> rhs;
    for (int i = 0; i < 3; ++i)
      for (int m = 0; m < 3; ++m) rhs(3 * i + m) = -d(i, m);
    const Eigen::Matrix<double, 9, 1> phi = inv * rhs;
    for (int k = 0; k < 9; ++k) out[k][fl] = phi(k);
  }

  VForm1 result = VForm1::zeros(g);
  for (int j = 0; j < 3; ++j)
    for (int a = 0; a < 3; ++a) result.set(j, a, ScalarField(g, std::move(out[3 * j + a])));
  return result;
}

double curvature_residual(const VForm1& phi) {
  const VForm2 dphi = exterior_derivative(phi);
  const Grid& g = phi.grid();
  const std::int64_t n = g.num_nodes();
  double res = 0.0;
  for (std::int64_t fl = 0; fl < n; ++fl) {
    const Mat3 p = phi.node_matrix(fl);
    const Mat3 dp = dphi.node_matrix(fl);
    for (int i = 0; i < 3; ++i) {
      const int j = (i + 1) % 3, k = (i + 2) % 3;
      const Vec3 wedge = Vec3(p.row(j)).cross(Vec3(p.row(k)));
      res = std::max(res, (Vec3(dp.row(i)) - wedge).cwiseAbs().maxCoeff());
    }
  }
  return res;
}

ScalarField lambda_of(const Coframing& omega) {
  const VForm1 w = omega.form().sampled();
  const VForm2 dw = exterior_derivative(w);
  const Grid& g = w.grid();
  const std::int64_t n = g.num_nodes();
  std::vector<double> out(n);
  for (std::int64_t fl = 0; fl < n; ++fl) {
    const Mat3 a = w.node_matrix(fl);
    const Mat3 d = dw.node_matrix(fl);
    double num = 0.0;
    for (int i = 0; i < 3; ++i) num += Vec3(a.row(i)).dot(Vec3(d.row(i)));
    out[fl] = -num / (2.0 * a.determinant());
  }
  return ScalarField(g, std::move(out));
}

StructureData decompose_structure(const Coframing& omega, double rank_tol_rel) {
  const VForm1 w = omega.form().sampled();
  const VForm2 dw = exterior_derivative(w);
  const Grid& g = w.grid();
  const std::int64_t n = g.num_nodes();

  std::vector<double> lam(n), mu(n);
  std::array<std::vector<double>, 3> vf;
  for (auto& v : vf) v.resize(n);
  double max_s1 = 0.0, max_s2 = 0.0;

  for (std::int64_t fl = 0; fl < n; ++fl) {
    const Mat3 a = w.node_matrix(fl);
    const Mat3 d = dw.node_matrix(fl);
    // d(omega) in the omega-basis 2-forms: eps(omega) = det(A) (tA)^-1 eps(du),
    // so B = D tA / det A.
    const Mat3 b = d * a.transpose() / a.determinant();

    Eigen::SelfAdjointEigenSolver<Mat3> eig;
    eig.computeDirect(b.transpose() * b);
    const Vec3 ev = eig.eigenvalues();  // ascending
    const double s1 = std::sqrt(std::max(ev(2), 0.0));
    const double s2 = std::sqrt(std::max(ev(1), 0.0));
    max_s1 = std::max(max_s1, s1);
    max_s2 = std::max(max_s2, s2);

    Vec3 v = eig.eigenvectors().col(2);
    for (int i = 0; i < 3; ++i) {
      if (std::abs(v(i)) > 1e-12) {
        if (v(i) < 0) v = -v;
        break;
      }
    }
    const Vec3 wvec = b * v;
    const double l = -0.5 * b.trace();
    lam[fl] = l;
    mu[fl] = (wvec + 2.0 * l * v).norm();
    for (int i = 0; i < 3; ++i) vf[i][fl] = v(i);
  }

  StructureData sd;
  sd.residual_rank = max_s2;
  sd.max_sigma1 = max_s1;
  sd.omega_zero = max_s1 <= 1e-10;
  if (sd.omega_zero) {
    sd.lambda = ScalarField::constant(g, 0.0).sampled();
    sd.mu = ScalarField::constant(g, 0.0).sampled();
    for (int i = 0; i < 3; ++i)
      sd.v[i] = ScalarField::constant(g, i == 0 ? 1.0 : 0.0).sampled();
    return sd;
  }
  if (max_s2 > rank_tol_rel * max_s1)
    fail(Errc::NotRank1, "d(omega) coefficient matrix is not rank 1 on the grid");
  sd.lambda = ScalarField(g, std::move(lam));
  sd.mu = ScalarField(g, std::move(mu));
  for (int i = 0; i < 3; ++i) sd.v[i] = ScalarField(g, std::move(vf[i]));
  return sd;
}

}  // namespace coframe
