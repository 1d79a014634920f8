#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "convexcr/vec.hpp"

namespace convexcr {

inline constexpr double kDefaultTol = 1e-9;

// Outward halfspace <normal, x> <= offset with |normal| = 1.
struct Halfspace {
  Vec normal;
  double offset = 0.0;
};

// A face of the polytope, carried by value. `basis` is an orthonormal basis
// of the direction space of the face's affine hull (empty for vertices).
// `body_diameter` is copied from the owning polytope so tolerance-scaled
// predicates work without a back reference.
struct Face {
  int dim = 0;
  std::vector<int> vertex_ids;  // sorted indices into the owner's vertex list
  Vec anchor;                   // first vertex of the face
  std::vector<Vec> basis;
  double body_diameter = 0.0;
};

// Compact full-dimensional polytope, dim 2..4. Vertices are hull-irredundant
// and lexicographically sorted; the H-representation is irredundant and
// consistent with the V-representation. The full face lattice is computed at
// construction, so instances are immutable and safe to share across threads.
class ConvexPolytope {
 public:
  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  double diameter() const { return diameter_; }

  // All faces of dimension d, 0 <= d <= dim-1, in deterministic order.
  const std::vector<Face>& faces(int d) const;

  friend ConvexPolytope build_polytope(const std::vector<Vec>& points, double tol);

 private:
  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> halfspaces_;
  double diameter_ = 0.0;
  std::vector<std::vector<Face>> faces_by_dim_;
};

struct Ball {
  Vec center;
  double radius = 0.0;

  int dim() const { return center.dim(); }
  double diameter() const { return 2.0 * radius; }
};

// Tagged union of the two supported body kinds.
class ConvexBody {
 public:
  ConvexBody(ConvexPolytope p) : v_(std::move(p)) {}
  ConvexBody(Ball b) : v_(std::move(b)) {}

  bool is_polytope() const { return std::holds_alternative<ConvexPolytope>(v_); }
  bool is_ball() const { return std::holds_alternative<Ball>(v_); }
  const ConvexPolytope& polytope() const { return std::get<ConvexPolytope>(v_); }
  const Ball& ball() const { return std::get<Ball>(v_); }

  int dim() const {
    return is_polytope() ? polytope().dim() : ball().dim();
  }
  double diameter() const {
    return is_polytope() ? polytope().diameter() : ball().diameter();
  }

 private:
  std::variant<ConvexPolytope, Ball> v_;
};

struct SupportResult {
  double value = 0.0;
  Vec witness;
};

// Convex hull of `points` with full face lattice. Throws DegenerateInput if
// the points do not span the ambient dimension (or fewer than dim+1 survive
// dedup), BadDimension if the ambient dimension is outside 2..4.
ConvexPolytope build_polytope(const std::vector<Vec>& points, double tol = kDefaultTol);

bool contains(const ConvexPolytope& k, const Vec& x, double tol = kDefaultTol);
bool contains(const Ball& k, const Vec& x, double tol = kDefaultTol);
bool contains(const ConvexBody& k, const Vec& x, double tol = kDefaultTol);

// x in K with at least one defining constraint active (within tol scaling).
bool on_boundary(const ConvexBody& k, const Vec& x, double tol = kDefaultTol);

// h_K(u) = max_{x in K} <u, x> and its maximizer. For polytopes the witness
// is a vertex, ties broken lexicographically smallest.
SupportResult support(const ConvexPolytope& k, const Vec& u);
SupportResult support(const Ball& k, const Vec& u);
SupportResult support(const ConvexBody& k, const Vec& u);

struct ProjectionResult {
  Vec foot;
  bool contains_o = false;  // the affine hull passes through O (within tol)
};

// Orthogonal projection of `o` onto the affine hull of `f`.
ProjectionResult project_affine(const Face& f, const Vec& o, double tol = kDefaultTol);

// Max distance from `o` to the body (attained at a vertex / the far side).
double max_distance(const ConvexBody& k, const Vec& o);

}  // namespace convexcr
