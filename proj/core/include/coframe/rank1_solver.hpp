#pragma once

#include <cstdint>
#include <vector>

#include "coframe/algebra3.hpp"
#include "coframe/forms.hpp"

namespace coframe {

/// Input data: Omega = z(u1,u2) du1 ^ du2 on a 3D box, with z polynomial and
/// nonvanishing (min node |z| >= 1e-6), plus a base point for quadratures.
struct Rank1Problem {
  std::array<Polynomial, 3> z;
  Grid grid;
  Vec3 base = Vec3::Zero();

  void validate() const;
};

/// Theorem 4.5 alternatives for the projectivization [[z]].
struct HypothesisCase {
  enum class Kind { Line, Submersion, Degenerate };
  Kind kind = Kind::Degenerate;
  /// Line: unit vector with a . z = 0 on the whole domain.
  Vec3 line_a = Vec3::Zero();
  /// Submersion: first ratio z^num / z^den (0-based, lexicographic order)
  /// whose gradient is bounded away from zero on the grid.
  int num = 0;
  int den = 0;
  /// Degenerate: (u1,u2) nodes where d[[z]] (numerically) vanishes.
  std::vector<std::array<double, 2>> witnesses;
};

HypothesisCase classify_hypothesis(const Rank1Problem& p);

struct CoordinateMap {
  enum class Kind { Identity, AxisSwap, Ratio };
  Kind kind = Kind::Identity;
  int num = 0, den = 0;  // Ratio / AxisSwap: new u1 = z^num / z^den
  int kept_axis = 1;     // original coordinate serving as the new u2 (0 or 1)
};

/// Problem data in the coordinates the construction runs in. Polynomial
/// backends survive exact maps (identity, axis swap); the general ratio map
/// resamples onto a new grid (monotone root-finding per node) and multiplies
/// z by the Jacobian determinant.
struct TransformedProblem {
  std::array<ScalarField, 3> z;
  Grid grid;
  Vec3 base = Vec3::Zero();
  CoordinateMap map;
};

TransformedProblem identity_problem(const Rank1Problem& p);
TransformedProblem change_coordinates(const Rank1Problem& p, const HypothesisCase& c);

/// g(u1): the Line constant, or the permuted (u1, -1, 0) of the normalized
/// Submersion case; always satisfies tg z = 0 pointwise (to 1e-8).
std::array<ScalarField, 3> build_g(const HypothesisCase& c, const TransformedProblem& t);

/// Minimum-norm pointwise solution of -[g] k2 = z, i.e. k2 = (z x g)/|g|^2.
/// Polynomial inputs stay polynomial whenever |g|^2 divides (z x g) exactly.
std::array<ScalarField, 3> solve_k2(const std::array<ScalarField, 3>& g,
                                    const std::array<ScalarField, 3>& z);

struct KbarChoice {
  std::array<ScalarField, 3> kbar;  // function of u1
  std::array<ScalarField, 3> k;     // int k2 du2 (from base_u2) + kbar
  double det_floor = 0.0;           // achieved min |det(w1,w2,w3)|
  double floor_ratio = 0.0;         // min |det| / (|w1||w2||w3|) over nodes
  int candidate = -1;               // index into the 36-candidate family
};

/// Picks kbar from { c e_m, c u1 e_m : m = 1..3, c in {+-1,+-2,+-4} }: the
/// first candidate whose normalized determinant floor reaches 1e-3. Throws
/// NoIndependentChoice when every candidate fails.
KbarChoice choose_kbar(const std::array<ScalarField, 3>& g,
                       const std::array<ScalarField, 3>& k2, const Grid& grid,
                       double base_u2);

/// omega = (u3 g' + k_1 + [g]k) du1 + k_2 du2 + g du3 with k_i the partials
/// of k. Throws DegenerateCoframe if the components are dependent anywhere.
Coframing assemble_omega(const std::array<ScalarField, 3>& g,
                         const std::array<ScalarField, 3>& k, const Grid& grid);

/// Classical 4th-order one-step integration of a'(u1) = a(u1) [g(u1)] along
/// the u1 axis, reprojecting to SO(3) every step. so3_drift reports the max
/// pre-projection orthogonality defect.
std::vector<Rot3> integrate_frame(const std::array<ScalarField, 3>& g, const Grid& grid,
                                  const Rot3& a0, double* so3_drift = nullptr);

struct PositionResult {
  std::array<ScalarField, 3> x;
  double path_independence = 0.0;
};

/// x from dx = a omega along axis-ordered paths (u1, then u2, then u3) from
/// the base node; path_independence compares the two orderings per 2D face.
PositionResult integrate_position(const std::vector<Rot3>& a_path, const Coframing& omega,
                                  const Vec3& base);

struct SolveThresholds {
  double domega_poly = 1e-9;      // polynomial backend
  double domega_h2 = 10.0;        // sampled backend, x h^2
  double curvature_h2 = 5.0;      // x h^2
  double lambda_h2 = 5.0;         // x h^2
  double so3_drift = 1e-8;
  double path_h2 = 50.0;          // x h^2
  double rank_tol_rel = 0.05;
};

struct SolveReport {
  double residual_domega = 0.0;
  double residual_curvature = 0.0;
  double residual_lambda = 0.0;
  double mu_min = 0.0;
  double det_floor = 0.0;
  double so3_drift = 0.0;
  double path_independence = 0.0;
  bool omega_zero_regime = false;
  bool polynomial_backend = true;
  double h = 0.0;
  SolveThresholds thresholds;

  bool pass() const;
};

struct Rank1Solution {
  TransformedProblem problem;  // the (possibly transformed) problem solved
  HypothesisCase hypothesis;
  std::array<ScalarField, 3> g, k2, k, kbar;
  Coframing omega;
  std::vector<Rot3> a_path;
  std::array<ScalarField, 3> x;
  SolveReport report;
};

/// Full Theorem 4.5 pipeline. Throws DegenerateHypothesis when neither
/// alternative holds; propagates all stage errors.
Rank1Solution solve(const Rank1Problem& p, const Rot3& a0 = Rot3(),
                    const SolveThresholds& thr = SolveThresholds{});

/// Recomputes every certificate of the report from the stored solution:
/// d(omega)-residual on the construction backend, curvature/lambda/structure
/// residuals on the sampled (finite-difference) view, SO(3) drift and path
/// independence by re-running the quadratures.
SolveReport verify_solution(const Rank1Solution& s, const Rank1Problem& p,
                            const SolveThresholds& thr = SolveThresholds{});

}  // namespace coframe
