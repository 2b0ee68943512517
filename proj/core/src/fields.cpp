#include "coframe/fields.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace coframe {

// ---------------------------------------------------------------------------
// Grid

Grid::Grid(std::vector<Axis> axes) : axes_(std::move(axes)) {
  if (axes_.size() != 2 && axes_.size() != 3)
    fail(Errc::InvalidInput, "Grid requires 2 or 3 axes");
  for (const Axis& a : axes_) {
    if (!(a.hi > a.lo)) fail(Errc::InvalidInput, "Grid axis requires hi > lo");
    if (a.count < 3) fail(Errc::InvalidInput, "Grid axis requires count >= 3");
  }
}

std::int64_t Grid::num_nodes() const {
  std::int64_t n = 1;
  for (const Axis& a : axes_) n *= a.count;
  return n;
}

double Grid::max_step() const {
  double h = 0.0;
  for (const Axis& a : axes_) h = std::max(h, a.step());
  return h;
}

std::int64_t Grid::index(int i, int j, int k) const {
  std::int64_t idx = i + static_cast<std::int64_t>(axes_[0].count) * j;
  if (dim() == 3) idx += static_cast<std::int64_t>(axes_[0].count) * axes_[1].count * k;
  return idx;
}

std::array<int, 3> Grid::unflatten(std::int64_t flat) const {
  std::array<int, 3> out{0, 0, 0};
  out[0] = static_cast<int>(flat % axes_[0].count);
  flat /= axes_[0].count;
  out[1] = static_cast<int>(flat % axes_[1].count);
  if (dim() == 3) out[2] = static_cast<int>(flat / axes_[1].count);
  return out;
}

std::array<double, 3> Grid::node(std::int64_t flat) const {
  const auto ijk = unflatten(flat);
  std::array<double, 3> p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim(); ++a) p[a] = coord(a, ijk[a]);
  return p;
}

std::array<int, 3> Grid::nearest_node(std::span<const double> p) const {
  std::array<int, 3> out{0, 0, 0};
  for (int a = 0; a < dim(); ++a) {
    const double t = (p[a] - axes_[a].lo) / axes_[a].step();
    int i = static_cast<int>(std::lround(t));
    out[a] = std::clamp(i, 0, axes_[a].count - 1);
  }
  return out;
}

bool Grid::contains(std::span<const double> p) const {
  for (int a = 0; a < dim(); ++a) {
    const double pad = 1e-9 * axes_[a].step();
    if (p[a] < axes_[a].lo - pad || p[a] > axes_[a].hi + pad) return false;
  }
  return true;
}

bool Grid::operator==(const Grid& other) const {
  if (dim() != other.dim()) return false;
  for (int a = 0; a < dim(); ++a) {
    const Axis &x = axes_[a], &y = other.axes_[a];
    if (x.count != y.count || std::abs(x.lo - y.lo) > 1e-12 || std::abs(x.hi - y.hi) > 1e-12)
      return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

void Polynomial::normalize() {
  std::map<std::array<int, 3>, double> acc;
  for (const Term& t : terms_) {
    for (int e : t.e)
      if (e < 0) fail(Errc::InvalidInput, "negative exponent in polynomial term");
    acc[t.e] += t.c;
  }
  terms_.clear();
  for (const auto& [e, c] : acc) {
    if (c == 0.0) continue;
    if (e[0] + e[1] + e[2] > kMaxDegree)
      fail(Errc::InvalidInput, "polynomial total degree exceeds 16");
    terms_.push_back(Term{c, e});
  }
}

Polynomial Polynomial::constant(double c) {
  if (c == 0.0) return Polynomial();
  return Polynomial({Term{c, {0, 0, 0}}});
}

Polynomial Polynomial::variable(int axis) {
  std::array<int, 3> e{0, 0, 0};
  e[axis] = 1;
  return Polynomial({Term{1.0, e}});
}

bool Polynomial::is_zero(double tol) const {
  for (const Term& t : terms_)
    if (std::abs(t.c) > tol) return false;
  return true;
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const Term& t : terms_) d = std::max(d, t.e[0] + t.e[1] + t.e[2]);
  return d;
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (const Term& t : terms_) m = std::max(m, std::abs(t.c));
  return m;
}

double Polynomial::eval(std::array<double, 3> p) const {
  double sum = 0.0;
  for (const Term& t : terms_) {
    double v = t.c;
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < t.e[a]; ++k) v *= p[a];
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::partial(int axis) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    if (t.e[axis] == 0) continue;
    Term d = t;
    d.c *= t.e[axis];
    d.e[axis] -= 1;
    out.push_back(d);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::antiderivative(int axis) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Term d = t;
    d.e[axis] += 1;
    d.c /= d.e[axis];
    out.push_back(d);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::substitute(int axis, double value) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Term d = t;
    for (int k = 0; k < t.e[axis]; ++k) d.c *= value;
    d.e[axis] = 0;
    out.push_back(d);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::swap_vars(int a, int b) const {
  std::vector<Term> out;
  for (const Term& t : terms_) {
    Term d = t;
    std::swap(d.e[a], d.e[b]);
    out.push_back(d);
  }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::substitute_linear(const std::array<double, 9>& l) const {
  // u_i -> sum_j L_ij u_j
  std::array<Polynomial, 3> images;
  for (int i = 0; i < 3; ++i) {
    Polynomial p;
    for (int j = 0; j < 3; ++j)
      if (l[3 * i + j] != 0.0) p += Polynomial::variable(j) * l[3 * i + j];
    images[i] = p;
  }
  Polynomial result;
  for (const Term& t : terms_) {
    Polynomial mono = Polynomial::constant(t.c);
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < t.e[a]; ++k) mono = mono * images[a];
    result += mono;
  }
  return result;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Term> out = terms_;
  out.insert(out.end(), o.terms_.begin(), o.terms_.end());
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (o * -1.0); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  std::vector<Term> out;
  out.reserve(terms_.size() * o.terms_.size());
  for (const Term& s : terms_)
    for (const Term& t : o.terms_) {
      Term r;
      r.c = s.c * t.c;
      for (int a = 0; a < 3; ++a) r.e[a] = s.e[a] + t.e[a];
      out.push_back(r);
    }
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double s) const {
  std::vector<Term> out = terms_;
  for (Term& t : out) t.c *= s;
  return Polynomial(std::move(out));
}

double Polynomial::coeff_distance(const Polynomial& o) const {
  return (*this - o).max_abs_coeff();
}

// ---------------------------------------------------------------------------
// ScalarField

ScalarField::ScalarField(Grid grid, Polynomial poly)
    : grid_(std::move(grid)), data_(std::move(poly)) {
  if (!valid()) fail(Errc::InvalidInput, "ScalarField requires a valid grid");
}

ScalarField::ScalarField(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), data_(std::move(values)) {
  if (!valid()) fail(Errc::InvalidInput, "ScalarField requires a valid grid");
  const auto& v = std::get<std::vector<double>>(data_);
  if (static_cast<std::int64_t>(v.size()) != grid_.num_nodes())
    fail(Errc::InvalidInput, "sampled field size does not match grid");
  for (double x : v)
    if (!std::isfinite(x)) fail(Errc::InvalidInput, "sampled field carries non-finite value");
}

ScalarField ScalarField::constant(const Grid& grid, double c) {
  return ScalarField(grid, Polynomial::constant(c));
}

const Polynomial& ScalarField::poly() const {
  if (!is_polynomial()) fail(Errc::InvalidInput, "field is not polynomial-backed");
  return std::get<Polynomial>(data_);
}

const std::vector<double>& ScalarField::values() const {
  if (is_polynomial()) fail(Errc::InvalidInput, "field is not sampled");
  return std::get<std::vector<double>>(data_);
}

double ScalarField::node_value(std::int64_t flat) const {
  if (is_polynomial()) return std::get<Polynomial>(data_).eval(grid_.node(flat));
  return std::get<std::vector<double>>(data_)[flat];
}

ScalarField ScalarField::sampled() const {
  if (!is_polynomial()) return *this;
  const std::int64_t n = grid_.num_nodes();
  std::vector<double> v(n);
  const Polynomial& p = std::get<Polynomial>(data_);
  for (std::int64_t f = 0; f < n; ++f) v[f] = p.eval(grid_.node(f));
  return ScalarField(grid_, std::move(v));
}

double ScalarField::eval(std::array<double, 3> p) const {
  if (!grid_.contains(std::span<const double>(p.data(), grid_.dim())))
    fail(Errc::OutOfDomain, "evaluation point outside the field domain");
  if (is_polynomial()) return std::get<Polynomial>(data_).eval(p);

  // Multilinear interpolation.
  const auto& v = std::get<std::vector<double>>(data_);
  const int dim = grid_.dim();
  std::array<int, 3> i0{0, 0, 0};
  std::array<double, 3> t{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) {
    const Axis& ax = grid_.axis(a);
    double s = (p[a] - ax.lo) / ax.step();
    int i = static_cast<int>(std::floor(s));
    i = std::clamp(i, 0, ax.count - 2);
    i0[a] = i;
    t[a] = std::clamp(s - i, 0.0, 1.0);
  }
  double sum = 0.0;
  const int corners = 1 << dim;
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    std::array<int, 3> idx = i0;
    for (int a = 0; a < dim; ++a) {
      const bool upper = (c >> a) & 1;
      w *= upper ? t[a] : (1.0 - t[a]);
      idx[a] += upper ? 1 : 0;
    }
    sum += w * v[grid_.index(idx[0], idx[1], idx[2])];
  }
  return sum;
}

namespace {

// Apply a 1D stencil operation along `axis` for every grid line.
template <typename LineOp>
void for_each_line(const Grid& g, int axis, LineOp&& op) {
  const int dim = g.dim();
  const int n = g.axis(axis).count;
  std::array<int, 3> counts{1, 1, 1};
  for (int a = 0; a < dim; ++a) counts[a] = g.axis(a).count;
  std::array<int, 3> idx{0, 0, 0};
  // Iterate over all nodes with idx[axis] == 0 and walk the line.
  const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
  const int n1 = (a1 < dim) ? counts[a1] : 1;
  const int n2 = (a2 < dim) ? counts[a2] : 1;
  std::vector<std::int64_t> line(n);
  for (int j2 = 0; j2 < n2; ++j2)
    for (int j1 = 0; j1 < n1; ++j1) {
      idx[a1] = j1;
      idx[a2] = j2;
      for (int i = 0; i < n; ++i) {
        idx[axis] = i;
        line[i] = g.index(idx[0], idx[1], idx[2]);
      }
      op(line);
    }
}

}  // namespace

ScalarField ScalarField::partial(int axis) const {
  if (axis < 0 || axis >= grid_.dim()) fail(Errc::InvalidInput, "partial: axis out of range");
  if (is_polynomial()) return ScalarField(grid_, std::get<Polynomial>(data_).partial(axis));

  const auto& v = std::get<std::vector<double>>(data_);
  std::vector<double> out(v.size());
  const double h = grid_.axis(axis).step();
  for_each_line(grid_, axis, [&](const std::vector<std::int64_t>& line) {
    const int n = static_cast<int>(line.size());
    out[line[0]] = (-3.0 * v[line[0]] + 4.0 * v[line[1]] - v[line[2]]) / (2.0 * h);
    for (int i = 1; i + 1 < n; ++i)
      out[line[i]] = (v[line[i + 1]] - v[line[i - 1]]) / (2.0 * h);
    out[line[n - 1]] =
        (3.0 * v[line[n - 1]] - 4.0 * v[line[n - 2]] + v[line[n - 3]]) / (2.0 * h);
  });
  return ScalarField(grid_, std::move(out));
}

ScalarField ScalarField::cumulative_integral(int axis, double base) const {
  if (axis < 0 || axis >= grid_.dim())
    fail(Errc::InvalidInput, "cumulative_integral: axis out of range");
  const Axis& ax = grid_.axis(axis);
  const double pad = 1e-9 * ax.step();
  if (base < ax.lo - pad || base > ax.hi + pad)
    fail(Errc::OutOfDomain, "cumulative_integral: base outside axis range");

  if (is_polynomial()) {
    const Polynomial& p = std::get<Polynomial>(data_);
    Polynomial big = p.antiderivative(axis);
    return ScalarField(grid_, big - big.substitute(axis, base));
  }

  const auto& v = std::get<std::vector<double>>(data_);
  std::vector<double> out(v.size());
  const double h = ax.step();
  // Cell straddling the base value; m == count-1 collapses to the last cell.
  int m = static_cast<int>(std::floor((base - ax.lo) / h));
  m = std::clamp(m, 0, ax.count - 2);
  const double xm = ax.lo + m * h;

  for_each_line(grid_, axis, [&](const std::vector<std::int64_t>& line) {
    const int n = static_cast<int>(line.size());
    // Value of the integrand at the base point (linear interpolation in-cell).
    const double t = std::clamp((base - xm) / h, 0.0, 1.0);
    const double fb = (1.0 - t) * v[line[m]] + t * v[line[m + 1]];
    out[line[m]] = -(base - xm) * 0.5 * (fb + v[line[m]]);
    out[line[m + 1]] = (xm + h - base) * 0.5 * (fb + v[line[m + 1]]);
    for (int i = m + 2; i < n; ++i)
      out[line[i]] = out[line[i - 1]] + 0.5 * h * (v[line[i - 1]] + v[line[i]]);
    for (int i = m - 1; i >= 0; --i)
      out[line[i]] = out[line[i + 1]] - 0.5 * h * (v[line[i]] + v[line[i + 1]]);
  });
  return ScalarField(grid_, std::move(out));
}

namespace {

ScalarField binary_op(const ScalarField& a, const ScalarField& b, int op) {
  if (!a.valid() || !b.valid()) fail(Errc::InvalidInput, "operation on empty field");
  if (!(a.grid() == b.grid()))
    fail(Errc::InvalidInput, "field operation requires matching grids");
  if (a.is_polynomial() && b.is_polynomial()) {
    switch (op) {
      case 0: return ScalarField(a.grid(), a.poly() + b.poly());
      case 1: return ScalarField(a.grid(), a.poly() - b.poly());
      default: return ScalarField(a.grid(), a.poly() * b.poly());
    }
  }
  const std::int64_t n = a.grid().num_nodes();
  std::vector<double> out(n);
  for (std::int64_t f = 0; f < n; ++f) {
    const double x = a.node_value(f), y = b.node_value(f);
    out[f] = (op == 0) ? x + y : (op == 1) ? x - y : x * y;
  }
  return ScalarField(a.grid(), std::move(out));
}

}  // namespace

ScalarField ScalarField::operator+(const ScalarField& o) const { return binary_op(*this, o, 0); }
ScalarField ScalarField::operator-(const ScalarField& o) const { return binary_op(*this, o, 1); }
ScalarField ScalarField::operator*(const ScalarField& o) const { return binary_op(*this, o, 2); }

ScalarField ScalarField::operator*(double s) const {
  if (is_polynomial()) return ScalarField(grid_, std::get<Polynomial>(data_) * s);
  std::vector<double> out = std::get<std::vector<double>>(data_);
  for (double& x : out) x *= s;
  return ScalarField(grid_, std::move(out));
}

double ScalarField::max_abs_node() const {
  const std::int64_t n = grid_.num_nodes();
  double m = 0.0;
  for (std::int64_t f = 0; f < n; ++f) m = std::max(m, std::abs(node_value(f)));
  return m;
}

}  // namespace coframe
