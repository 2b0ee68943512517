#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "coframe/error.hpp"

namespace coframe {

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  int count = 3;

  double step() const { return (hi - lo) / (count - 1); }
};

/// Uniform tensor grid on a rectangle (dim 2) or box (dim 3).
/// Flat node order: axis 0 fastest.
class Grid {
 public:
  Grid() = default;
  explicit Grid(std::vector<Axis> axes);

  int dim() const { return static_cast<int>(axes_.size()); }
  const Axis& axis(int a) const { return axes_[a]; }
  std::int64_t num_nodes() const;
  double max_step() const;

  double coord(int a, int idx) const { return axes_[a].lo + idx * axes_[a].step(); }
  std::int64_t index(int i, int j, int k = 0) const;
  std::array<int, 3> unflatten(std::int64_t flat) const;
  std::array<double, 3> node(std::int64_t flat) const;
  /// Nearest node to a point (componentwise rounding).
  std::array<int, 3> nearest_node(std::span<const double> p) const;

  bool contains(std::span<const double> p) const;
  bool operator==(const Grid& other) const;

 private:
  std::vector<Axis> axes_;
};

/// Real multivariate polynomial in up to 3 variables (u1,u2,u3).
/// Terms are kept sorted by exponent tuple with no duplicates; total degree
/// is capped at 16.
class Polynomial {
 public:
  struct Term {
    double c = 0.0;
    std::array<int, 3> e{0, 0, 0};
  };

  static constexpr int kMaxDegree = 16;

  Polynomial() = default;  // zero polynomial
  explicit Polynomial(std::vector<Term> terms);

  static Polynomial constant(double c);
  static Polynomial variable(int axis);  // u^(axis+1)

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero(double tol = 0.0) const;
  int total_degree() const;
  double max_abs_coeff() const;

  double eval(std::array<double, 3> p) const;

  Polynomial partial(int axis) const;
  Polynomial antiderivative(int axis) const;
  /// Fix variable `axis` to `value`.
  Polynomial substitute(int axis, double value) const;
  Polynomial swap_vars(int a, int b) const;
  /// Compose with the linear map u -> L u (3x3 row-major).
  Polynomial substitute_linear(const std::array<double, 9>& l) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(double s) const;
  Polynomial operator-() const { return *this * -1.0; }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  /// Max-abs coefficient difference (same exponent tuples matched).
  double coeff_distance(const Polynomial& o) const;

  /// Exact division by a univariate polynomial in `axis` (nonzero real
  /// leading coefficient). Returns the quotient when the remainder is zero
  /// within rel_tol of the dividend scale, std::nullopt otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& divisor, int axis,
                                         double rel_tol = 1e-12) const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

inline Polynomial operator*(double s, const Polynomial& p) { return p * s; }

/// Scalar field on a Grid. Either polynomial-exact or sampled at the nodes;
/// both variants share the same call surface. Sampled evaluation between
/// nodes is multilinear; sampled partials are 2nd-order central differences
/// (one-sided 2nd-order at the boundary); sampled cumulative integrals are
/// composite trapezoid.
class ScalarField {
 public:
  ScalarField() = default;  // empty; most operations require a valid field

  ScalarField(Grid grid, Polynomial poly);
  ScalarField(Grid grid, std::vector<double> values);
  static ScalarField constant(const Grid& grid, double c);

  bool valid() const { return grid_.dim() != 0; }
  bool is_polynomial() const { return std::holds_alternative<Polynomial>(data_); }
  const Grid& grid() const { return grid_; }
  const Polynomial& poly() const;
  const std::vector<double>& values() const;

  double eval(std::array<double, 3> p) const;
  double node_value(std::int64_t flat) const;
  /// Force the sampled representation (no-op on sampled fields).
  ScalarField sampled() const;

  ScalarField partial(int axis) const;
  ScalarField cumulative_integral(int axis, double base) const;

  ScalarField operator+(const ScalarField& o) const;
  ScalarField operator-(const ScalarField& o) const;
  ScalarField operator*(const ScalarField& o) const;
  ScalarField operator*(double s) const;
  ScalarField operator-() const { return *this * -1.0; }

  double max_abs_node() const;

 private:
  Grid grid_;
  std::variant<Polynomial, std::vector<double>> data_ = Polynomial();
};

inline ScalarField operator*(double s, const ScalarField& f) { return f * s; }

}  // namespace coframe
