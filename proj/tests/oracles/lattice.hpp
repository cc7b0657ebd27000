#pragma once

// Index of a full-rank sublattice L2 of a full-rank lattice L1 in Z^2 by
// counting the points of L1 in the half-open fundamental parallelogram of L2.

#include <algorithm>
#include <array>
#include <cstdlib>

namespace oracle {

using Basis2 = std::array<std::array<long long, 2>, 2>;  // rows are basis vectors

inline long long det2(const Basis2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

inline long long coset_count(const Basis2& l1, const Basis2& l2) {
  long long det = det2(l2);
  // Corners of the parallelogram bound the coefficients over L1.
  long long extent = 0;
  for (auto& r : l2) extent += std::abs(r[0]) + std::abs(r[1]);
  // Coefficients over L1 of a point p are bounded by |p| * |adj(L1)| / |det L1|.
  long long adj = 0;
  for (auto& r : l1) adj = std::max({adj, std::abs(r[0]), std::abs(r[1])});
  long long range = 2 * extent * adj / std::abs(det2(l1)) + 1;
  long long count = 0;
  for (long long i = -range; i <= range; ++i) {
    for (long long j = -range; j <= range; ++j) {
      long long px = i * l1[0][0] + j * l1[1][0];
      long long py = i * l1[0][1] + j * l1[1][1];
      // Coordinates in L2 by Cramer's rule: p = u*r0 + v*r1, u = nu/det, v = nv/det.
      long long nu = px * l2[1][1] - py * l2[1][0];
      long long nv = l2[0][0] * py - l2[0][1] * px;
      auto in_unit = [&](long long n) { return det > 0 ? (n >= 0 && n < det) : (n <= 0 && n > det); };
      if (in_unit(nu) && in_unit(nv)) ++count;
    }
  }
  return count;
}

}  // namespace oracle
