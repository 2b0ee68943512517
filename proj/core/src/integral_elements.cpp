#include "coframe/integral_elements.hpp"

#include <cmath>

namespace coframe {

Mat3 q_from_p(const Mat3& p, const Mat3& z) {
  const double det = p.determinant();
  if (std::abs(det) <= 1e-10) fail(Errc::SingularP, "q_from_p requires |det P| > 1e-10");
  const Mat3 pzt = p * z.transpose();
  return (pzt - 0.5 * pzt.trace() * Mat3::Identity()) / det;
}

OmegaRank omega_nondegenerate(const Mat3& z) {
  Eigen::JacobiSVD<Mat3> svd(z);
  const Vec3 s = svd.singularValues();
  int rank = 0;
  if (s(0) > 0.0)
    for (int i = 0; i < 3; ++i)
      if (s(i) > 1e-9 * s(0)) ++rank;
  return {rank >= 2, rank};
}

IntegralElement find_involutive_p(const Mat3& z, int attempts, std::uint64_t seed) {
  const OmegaRank r = omega_nondegenerate(z);
  if (!r.nondegenerate)
    fail(Errc::RankDeficient, "find_involutive_p requires rank(Z) >= 2");

  IntegralElement e;
  e.z = z;
  if (r.rank == 2) {
    // Rotate so the bottom row of Z vanishes: take R = tU from Z = U S tV
    // (sign-fixed so det R = +1); then R Z = S tV has rows sigma_i tv_i.
    Eigen::JacobiSVD<Mat3> svd(z, Eigen::ComputeFullU);
    Mat3 u = svd.matrixU();
    if (u.determinant() < 0) u.col(2) *= -1.0;
    e.rotation = Rot3(Mat3(u.transpose()));
    e.rotated = true;
    e.z = e.rotation.matrix() * z;
  }

  Rng rng(seed);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    Mat3 p;
    do {
      p = random_mat3(rng);
    } while (std::abs(p.determinant()) < 1e-3);
    const Mat3 q = q_from_p(p, e.z);
    const Verdict v = classify(q);
    if (v.kind == VerdictKind::Involutive) {
      e.p = p;
      e.q = q;
      e.attempts_used = attempt;
      e.verdict = v;
      return e;
    }
  }
  fail(Errc::SearchExhausted, "no involutive P found within the attempt budget");
}

}  // namespace coframe
