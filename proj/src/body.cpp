#include "convexcr/body.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace convexcr {

namespace {

// Vector orthogonal to the span of edges[0..m-1] in R^(m+1) (the generalized
// cross product), scaled arbitrarily. Only needed for m = 1..3.
Vec hyperplane_normal(const std::vector<Vec>& edges, int dim) {
  Vec u(static_cast<std::size_t>(dim));
  if (dim == 2) {
    u[0] = -edges[0][1];
    u[1] = edges[0][0];
  } else if (dim == 3) {
    const Vec& a = edges[0];
    const Vec& b = edges[1];
    u[0] = a[1] * b[2] - a[2] * b[1];
    u[1] = a[2] * b[0] - a[0] * b[2];
    u[2] = a[0] * b[1] - a[1] * b[0];
  } else {
    // 4D: signed 3x3 minors of the 3x4 edge matrix.
    const Vec& a = edges[0];
    const Vec& b = edges[1];
    const Vec& c = edges[2];
    auto det3 = [](double m00, double m01, double m02, double m10, double m11,
                   double m12, double m20, double m21, double m22) {
      return m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) +
             m02 * (m10 * m21 - m11 * m20);
    };
    u[0] = det3(a[1], a[2], a[3], b[1], b[2], b[3], c[1], c[2], c[3]);
    u[1] = -det3(a[0], a[2], a[3], b[0], b[2], b[3], c[0], c[2], c[3]);
    u[2] = det3(a[0], a[1], a[3], b[0], b[1], b[3], c[0], c[1], c[3]);
    u[3] = -det3(a[0], a[1], a[2], b[0], b[1], b[2], c[0], c[1], c[2]);
  }
  return u;
}

// Rank of a set of vectors via modified Gram-Schmidt. Also returns an
// orthonormal basis of their span when `basis_out` is given.
int span_rank(const std::vector<Vec>& vecs, double scale_eps,
              std::vector<Vec>* basis_out = nullptr) {
  std::vector<Vec> basis;
  for (const Vec& v : vecs) {
    Vec w = v;
    for (const Vec& b : basis) w -= b * dot(w, b);
    // second pass for numerical hygiene
    for (const Vec& b : basis) w -= b * dot(w, b);
    double n = norm(w);
    if (n > scale_eps) basis.push_back(w * (1.0 / n));
  }
  int rank = static_cast<int>(basis.size());
  if (basis_out) *basis_out = std::move(basis);
  return rank;
}

double coordinate_spread(const std::vector<Vec>& pts) {
  double spread = 0.0;
  int dim = pts.front().dim();
  for (int i = 0; i < dim; ++i) {
    double lo = pts.front()[i], hi = lo;
    for (const Vec& p : pts) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    spread = std::max(spread, hi - lo);
  }
  return spread;
}

// Enumerate all index subsets of size k in lexicographic order.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

struct CandidateFacet {
  Vec normal;     // unit, outward
  double offset;  // <normal, x> <= offset for all points
};

std::vector<Face> make_faces(const ConvexPolytope& poly,
                             const std::vector<std::vector<int>>& vertex_sets,
                             double scale_eps);

}  // namespace

ConvexPolytope build_polytope(const std::vector<Vec>& points, double tol) {
  if (points.empty())
    throw Error(ErrorCode::DegenerateInput, "no input points");
  const int dim = points.front().dim();
  if (dim < 2 || dim > 4)
    throw Error(ErrorCode::BadDimension,
                "ambient dimension must be 2, 3 or 4, got " + std::to_string(dim));
  for (const Vec& p : points) {
    if (p.dim() != dim)
      throw Error(ErrorCode::DimensionMismatch, "points of mixed dimension");
    if (!p.finite())
      throw Error(ErrorCode::DegenerateInput, "non-finite coordinate");
  }

  const double spread = coordinate_spread(points);
  const double eps = std::max(tol, 1e-12) * std::max(spread, 1e-30);

  // Dedup within eps, keep lexicographic order.
  std::vector<Vec> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<Vec> uniq;
  for (const Vec& p : pts) {
    if (uniq.empty() || distance(uniq.back(), p) > eps) uniq.push_back(p);
  }
  const int m = static_cast<int>(uniq.size());
  if (m < dim + 1)
    throw Error(ErrorCode::DegenerateInput,
                "need at least dim+1 distinct points, got " + std::to_string(m));
  {
    std::vector<Vec> diffs;
    for (int i = 1; i < m; ++i) diffs.push_back(uniq[i] - uniq[0]);
    if (span_rank(diffs, eps) < dim)
      throw Error(ErrorCode::DegenerateInput,
                  "points do not span the ambient dimension");
  }

  // Every facet hyperplane passes through dim affinely independent input
  // points with all points on one side. Enumerate dim-subsets, keep the
  // supporting ones, dedupe by (normal, offset).
  std::vector<CandidateFacet> facets;
  for_each_subset(m, dim, [&](const std::vector<int>& idx) {
    std::vector<Vec> edges;
    for (int j = 1; j < dim; ++j) edges.push_back(uniq[idx[j]] - uniq[idx[0]]);
    Vec u = hyperplane_normal(edges, dim);
    double nu = norm(u);
    double edge_scale = 1.0;
    for (const Vec& e : edges) edge_scale *= norm(e);
    if (nu <= 1e-12 * std::max(edge_scale, 1e-300)) return;  // affinely dependent
    u *= 1.0 / nu;
    double b = dot(u, uniq[idx[0]]);
    double lo = 0.0, hi = 0.0;
    for (const Vec& p : uniq) {
      double s = dot(u, p) - b;
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
    if (lo < -eps && hi > eps) return;  // points on both sides: not supporting
    if (hi > eps) {                     // flip outward
      u *= -1.0;
      b = -b;
    }
    for (const CandidateFacet& f : facets) {
      if (std::abs(f.offset - b) <= 10 * eps && distance(f.normal, u) <= 1e-7)
        return;  // duplicate hyperplane
    }
    facets.push_back({u, b});
  });

  // A point is a hull vertex iff its tight facet normals span R^dim.
  std::vector<std::vector<int>> tight_facets(m);
  for (int i = 0; i < m; ++i) {
    for (int f = 0; f < static_cast<int>(facets.size()); ++f) {
      if (std::abs(dot(facets[f].normal, uniq[i]) - facets[f].offset) <= eps)
        tight_facets[i].push_back(f);
    }
  }
  std::vector<Vec> verts;
  for (int i = 0; i < m; ++i) {
    std::vector<Vec> normals;
    for (int f : tight_facets[i]) normals.push_back(facets[f].normal);
    if (span_rank(normals, 1e-9) >= dim) verts.push_back(uniq[i]);
  }
  if (static_cast<int>(verts.size()) < dim + 1)
    throw Error(ErrorCode::DegenerateInput, "hull collapsed below dim+1 vertices");

  ConvexPolytope poly;
  poly.dim_ = dim;
  poly.vertices_ = verts;  // already lex sorted (subset of sorted uniq)

  double diam = 0.0;
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j)
      diam = std::max(diam, distance(verts[i], verts[j]));
  poly.diameter_ = diam;

  // Facet -> tight vertex ids; drop anything tight at fewer than dim vertices.
  std::vector<std::pair<CandidateFacet, std::vector<int>>> kept;
  for (const CandidateFacet& f : facets) {
    std::vector<int> ids;
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
      if (std::abs(dot(f.normal, verts[i]) - f.offset) <= eps) ids.push_back(i);
    }
    if (static_cast<int>(ids.size()) >= dim) kept.push_back({f, ids});
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.first.normal == b.first.normal) return a.first.offset < b.first.offset;
    return lex_less(a.first.normal, b.first.normal);
  });

  std::vector<std::vector<int>> facet_vertex_sets;
  for (auto& [f, ids] : kept) {
    poly.halfspaces_.push_back({f.normal, f.offset});
    facet_vertex_sets.push_back(ids);
  }

  // Face lattice: every proper face is an intersection of facets, so closing
  // the facet vertex sets under pairwise intersection enumerates them all.
  std::set<std::vector<int>> seen(facet_vertex_sets.begin(), facet_vertex_sets.end());
  std::vector<std::vector<int>> queue(seen.begin(), seen.end());
  while (!queue.empty()) {
    std::vector<int> cur = std::move(queue.back());
    queue.pop_back();
    for (const auto& fs : facet_vertex_sets) {
      std::vector<int> inter;
      std::set_intersection(cur.begin(), cur.end(), fs.begin(), fs.end(),
                            std::back_inserter(inter));
      if (inter.empty() || inter == cur) continue;
      if (seen.insert(inter).second) queue.push_back(inter);
    }
  }
  std::vector<std::vector<int>> all_sets(seen.begin(), seen.end());
  poly.faces_by_dim_.resize(static_cast<std::size_t>(dim));
  const double face_eps = std::max(tol, 1e-12) * std::max(diam, 1e-30);
  for (Face& f : make_faces(poly, all_sets, face_eps))
    poly.faces_by_dim_[static_cast<std::size_t>(f.dim)].push_back(std::move(f));
  for (auto& bucket : poly.faces_by_dim_) {
    std::sort(bucket.begin(), bucket.end(),
              [](const Face& a, const Face& b) { return a.vertex_ids < b.vertex_ids; });
  }
  return poly;
}

namespace {

std::vector<Face> make_faces(const ConvexPolytope& poly,
                             const std::vector<std::vector<int>>& vertex_sets,
                             double scale_eps) {
  std::vector<Face> out;
  const auto& verts = poly.vertices();
  // Dedupe by vertex set happens upstream; different facet intersections can
  // still yield the same set, handled by the caller's std::set.
  for (const auto& ids : vertex_sets) {
    Face f;
    f.vertex_ids = ids;
    f.anchor = verts[ids.front()];
    std::vector<Vec> diffs;
    for (std::size_t i = 1; i < ids.size(); ++i)
      diffs.push_back(verts[ids[i]] - f.anchor);
    f.dim = span_rank(diffs, scale_eps, &f.basis);
    f.basis.resize(static_cast<std::size_t>(f.dim), Vec(static_cast<std::size_t>(poly.dim())));
    f.body_diameter = poly.diameter();
    if (f.dim <= poly.dim() - 1) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

const std::vector<Face>& ConvexPolytope::faces(int d) const {
  if (d < 0 || d >= dim_)
    throw Error(ErrorCode::BadDimension,
                "face dimension " + std::to_string(d) + " outside [0, " +
                    std::to_string(dim_ - 1) + "]");
  return faces_by_dim_[static_cast<std::size_t>(d)];
}

bool contains(const ConvexPolytope& k, const Vec& x, double tol) {
  if (x.dim() != k.dim())
    throw Error(ErrorCode::DimensionMismatch, "point/body dimensions disagree");
  const double slack = tol * k.diameter();
  for (const Halfspace& h : k.halfspaces()) {
    if (dot(h.normal, x) > h.offset + slack) return false;
  }
  return true;
}

bool contains(const Ball& k, const Vec& x, double tol) {
  if (x.dim() != k.dim())
    throw Error(ErrorCode::DimensionMismatch, "point/body dimensions disagree");
  return distance(x, k.center) <= k.radius + tol;
}

bool contains(const ConvexBody& k, const Vec& x, double tol) {
  return k.is_polytope() ? contains(k.polytope(), x, tol) : contains(k.ball(), x, tol);
}

bool on_boundary(const ConvexBody& k, const Vec& x, double tol) {
  if (!contains(k, x, tol)) return false;
  if (k.is_ball()) {
    const Ball& b = k.ball();
    return std::abs(distance(x, b.center) - b.radius) <= tol * b.diameter() + tol;
  }
  const ConvexPolytope& p = k.polytope();
  const double slack = tol * p.diameter();
  for (const Halfspace& h : p.halfspaces()) {
    if (dot(h.normal, x) >= h.offset - slack) return true;
  }
  return false;
}

SupportResult support(const ConvexPolytope& k, const Vec& u) {
  if (u.dim() != k.dim())
    throw Error(ErrorCode::DimensionMismatch, "direction/body dimensions disagree");
  if (norm(u) == 0.0) throw Error(ErrorCode::ZeroDirection, "support direction is zero");
  // Vertices are lex sorted, so scanning with strict improvement leaves the
  // lexicographically smallest maximizer on exact ties.
  SupportResult best{-std::numeric_limits<double>::infinity(), Vec{}};
  for (const Vec& v : k.vertices()) {
    double s = dot(u, v);
    if (s > best.value) best = {s, v};
  }
  return best;
}

SupportResult support(const Ball& k, const Vec& u) {
  if (u.dim() != k.dim())
    throw Error(ErrorCode::DimensionMismatch, "direction/body dimensions disagree");
  double nu = norm(u);
  if (nu == 0.0) throw Error(ErrorCode::ZeroDirection, "support direction is zero");
  Vec dir = u * (1.0 / nu);
  return {dot(u, k.center) + k.radius * nu, k.center + k.radius * dir};
}

SupportResult support(const ConvexBody& k, const Vec& u) {
  return k.is_polytope() ? support(k.polytope(), u) : support(k.ball(), u);
}

ProjectionResult project_affine(const Face& f, const Vec& o, double tol) {
  if (o.dim() != f.anchor.dim())
    throw Error(ErrorCode::DimensionMismatch, "point/face dimensions disagree");
  Vec rel = o - f.anchor;
  Vec foot = f.anchor;
  for (const Vec& b : f.basis) foot += b * dot(rel, b);
  bool contains_o = distance(foot, o) <= tol * f.body_diameter;
  return {foot, contains_o};
}

double max_distance(const ConvexBody& k, const Vec& o) {
  if (k.is_ball()) return distance(o, k.ball().center) + k.ball().radius;
  double best = 0.0;
  for (const Vec& v : k.polytope().vertices()) best = std::max(best, distance(v, o));
  return best;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadRadius: return "BadRadius";
    case ErrorCode::PointCoincidesWithO: return "PointCoincidesWithO";
    case ErrorCode::NotOnBoundary: return "NotOnBoundary";
    case ErrorCode::ONotOnBoundary: return "ONotOnBoundary";
    case ErrorCode::NoCriticalPoints: return "NoCriticalPoints";
    case ErrorCode::NoWitness: return "NoWitness";
    case ErrorCode::PointIsO: return "PointIsO";
    case ErrorCode::StalledAtCritical: return "StalledAtCritical";
    case ErrorCode::NonuniformRadius: return "NonuniformRadius";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "UnknownError";
}

}  // namespace convexcr
