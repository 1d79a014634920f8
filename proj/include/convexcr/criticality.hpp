#pragma once

#include <optional>
#include <vector>

#include "convexcr/body.hpp"

namespace convexcr {

// A boundary point P != O whose orthogonal hyperplane supports the body:
// <O - P, X - P> >= 0 for all X in K.
struct CriticalPoint {
  Vec location;
  double distance = 0.0;  // |location - O|
  int carrier_dim = -1;   // dimension of the carrying face; -1 for the ball antipode
  std::vector<int> carrier_vertex_ids;
  bool ball_antipode = false;
  // Criticality margin per unit length: <u, P> - h_K(u) with u = (P-O)/|P-O|.
  // Non-negative (within -tol * diameter) exactly when P is critical.
  double slack = 0.0;
};

struct LcdResult {
  double value = 0.0;
  CriticalPoint attaining_point;
  std::vector<CriticalPoint> all_points;
};

// Signed criticality margin of P (length units); >= 0 iff the hyperplane
// through P orthogonal to OP supports K. No boundary checks.
double criticality_slack(const ConvexBody& k, const Vec& o, const Vec& p);

// Definition test, with the boundary/coincidence preconditions enforced.
bool is_critical(const ConvexBody& k, const Vec& o, const Vec& p,
                 double tol = kDefaultTol);

// All critical points of the boundary-distance function from O. For a
// polytope each face contributes at most the foot of the perpendicular from
// O onto its affine hull; for a ball the antipode of O is the single critical
// point. Sorted by distance ascending (lexicographic location tie-break).
std::vector<CriticalPoint> enumerate_critical_points(const ConvexBody& k, const Vec& o,
                                                     double tol = kDefaultTol);

// Least critical distance: minimum of |OP| over critical points P.
LcdResult lcd(const ConvexBody& k, const Vec& o, double tol = kDefaultTol);

}  // namespace convexcr
