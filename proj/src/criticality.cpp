#include "convexcr/criticality.hpp"

#include <algorithm>
#include <cmath>

namespace convexcr {

double criticality_slack(const ConvexBody& k, const Vec& o, const Vec& p) {
  Vec u = p - o;
  double n = norm(u);
  if (n == 0.0)
    throw Error(ErrorCode::PointCoincidesWithO, "criticality test requires P != O");
  u *= 1.0 / n;
  return dot(u, p) - support(k, u).value;
}

bool is_critical(const ConvexBody& k, const Vec& o, const Vec& p, double tol) {
  require_same_dim(o, p);
  const double eps = tol * k.diameter();
  if (distance(p, o) <= eps)
    throw Error(ErrorCode::PointCoincidesWithO, "P coincides with O");
  if (!on_boundary(k, o, tol))
    throw Error(ErrorCode::NotOnBoundary, "O is not on the boundary of K");
  if (!on_boundary(k, p, tol))
    throw Error(ErrorCode::NotOnBoundary, "P is not on the boundary of K");
  return criticality_slack(k, o, p) >= -eps;
}

std::vector<CriticalPoint> enumerate_critical_points(const ConvexBody& k, const Vec& o,
                                                     double tol) {
  if (!on_boundary(k, o, tol))
    throw Error(ErrorCode::ONotOnBoundary, "O is not on the boundary of K");

  const double eps = tol * k.diameter();
  std::vector<CriticalPoint> out;

  if (k.is_ball()) {
    const Ball& b = k.ball();
    Vec antipode = b.center * 2.0 - o;
    CriticalPoint cp;
    cp.location = antipode;
    cp.distance = distance(antipode, o);
    cp.ball_antipode = true;
    cp.slack = criticality_slack(k, o, antipode);
    out.push_back(std::move(cp));
    return out;
  }

  const ConvexPolytope& poly = k.polytope();
  for (int d = 0; d < poly.dim(); ++d) {
    for (const Face& f : poly.faces(d)) {
      ProjectionResult proj = project_affine(f, o, tol);
      if (proj.contains_o) continue;  // P = O excluded by definition
      // foot lies in the face iff it lies in K: the face equals K intersected
      // with the affine hull of the face.
      if (!contains(k, proj.foot, tol)) continue;
      double slack = criticality_slack(k, o, proj.foot);
      if (slack < -eps) continue;
      // Same location can be reached from several faces; keep the
      // lowest-dimensional carrier (faces are visited by ascending dim).
      bool duplicate = false;
      for (const CriticalPoint& prev : out) {
        if (distance(prev.location, proj.foot) <= eps) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) continue;
      CriticalPoint cp;
      cp.location = proj.foot;
      cp.distance = distance(proj.foot, o);
      cp.carrier_dim = d;
      cp.carrier_vertex_ids = f.vertex_ids;
      cp.slack = slack;
      out.push_back(std::move(cp));
    }
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint& a, const CriticalPoint& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return lex_less(a.location, b.location);
  });
  return out;
}

LcdResult lcd(const ConvexBody& k, const Vec& o, double tol) {
  std::vector<CriticalPoint> pts = enumerate_critical_points(k, o, tol);
  if (pts.empty())
    throw Error(ErrorCode::NoCriticalPoints,
                "no critical point found; impossible for a compact body of dim >= 2");
  LcdResult r;
  r.attaining_point = pts.front();  // sorted by distance
  r.value = pts.front().distance;
  r.all_points = std::move(pts);
  return r;
}

}  // namespace convexcr
