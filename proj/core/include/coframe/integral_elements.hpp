#pragma once

#include <cstdint>

#include "coframe/algebra3.hpp"
#include "coframe/tableau.hpp"

namespace coframe {

/// Admissible integral element data: invertible P, the induced Q, the
/// (possibly rotated) Z it was computed from, and the tableau verdict.
/// Invariants: Q reproduces q_from_p(P, Z) and
/// ((tr Q) I - tQ) + Z tP / det P = 0.
struct IntegralElement {
  Mat3 p;
  Mat3 q;
  Mat3 z;
  Rot3 rotation;  // applied to the input Z when its rank is 2
  bool rotated = false;
  int attempts_used = 0;
  Verdict verdict;
};

/// Q = det(P)^-1 (P tZ - 1/2 tr(P tZ) I). Throws SingularP when |det P| <= 1e-10.
Mat3 q_from_p(const Mat3& p, const Mat3& z);

struct OmegaRank {
  bool nondegenerate = false;  // rank >= 2: no nonzero v with v _| Omega = 0
  int rank = 0;
};

OmegaRank omega_nondegenerate(const Mat3& z);

/// Draws random invertible P (entries uniform in [-1,1], |det| >= 1e-3) until
/// classify(q_from_p(P, Z)) is Involutive. Rank-2 Z is first rotated so its
/// bottom row vanishes, as in the existence proof; the rotation is recorded.
/// Throws RankDeficient (rank <= 1) or SearchExhausted.
IntegralElement find_involutive_p(const Mat3& z, int attempts, std::uint64_t seed);

}  // namespace coframe
