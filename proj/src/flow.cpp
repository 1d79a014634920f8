#include "convexcr/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace convexcr {

namespace {

constexpr int kMaxSteps = 64;

// Solve the k x k system G x = y by Gaussian elimination with partial
// pivoting; returns false when G is numerically singular.
bool solve_small(std::vector<std::vector<double>> g, std::vector<double> y,
                 std::vector<double>& x) {
  const int n = static_cast<int>(y.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(g[r][col]) > std::abs(g[piv][col])) piv = r;
    if (std::abs(g[piv][col]) < 1e-14) return false;
    std::swap(g[piv], g[col]);
    std::swap(y[piv], y[col]);
    for (int r = col + 1; r < n; ++r) {
      double f = g[r][col] / g[col][col];
      for (int c2 = col; c2 < n; ++c2) g[r][c2] -= f * g[col][c2];
      y[r] -= f * y[col];
    }
  }
  x.assign(static_cast<std::size_t>(n), 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = y[r];
    for (int c2 = r + 1; c2 < n; ++c2) s -= g[r][c2] * x[c2];
    x[r] = s / g[r][r];
  }
  return true;
}

// Projection of g onto the polyhedral cone {d : <n_i, d> <= 0} by active-set
// enumeration; the normal count is at most a handful at desk scale.
Vec project_onto_cone(const Vec& g, const std::vector<Vec>& normals) {
  const int a = static_cast<int>(normals.size());
  const double feas_eps = 1e-10;
  auto feasible = [&](const Vec& d) {
    for (const Vec& n : normals)
      if (dot(n, d) > feas_eps) return false;
    return true;
  };
  if (feasible(g)) return g;
  const int dim = g.dim();
  for (int size = 1; size <= std::min(a, dim); ++size) {
    std::vector<int> idx(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::vector<double>> gram(static_cast<std::size_t>(size),
                                            std::vector<double>(static_cast<std::size_t>(size)));
      std::vector<double> rhs(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) {
        rhs[i] = dot(normals[idx[i]], g);
        for (int j = 0; j < size; ++j) gram[i][j] = dot(normals[idx[i]], normals[idx[j]]);
      }
      std::vector<double> lambda;
      if (solve_small(gram, rhs, lambda)) {
        bool nonneg = std::all_of(lambda.begin(), lambda.end(),
                                  [](double l) { return l >= -1e-10; });
        if (nonneg) {
          Vec d = g;
          for (int i = 0; i < size; ++i) d -= normals[idx[i]] * lambda[i];
          if (feasible(d)) return d;
        }
      }
      int i = size - 1;
      while (i >= 0 && idx[i] == a - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return Vec(static_cast<std::size_t>(dim));  // zero: g lies in the normal cone
}

double segment_point_distance(const Vec& a, const Vec& b, const Vec& c) {
  Vec d = b - a;
  double dd = norm2(d);
  if (dd == 0.0) return distance(a, c);
  double t = std::clamp(dot(c - a, d) / dd, 0.0, 1.0);
  return distance(a + d * t, c);
}

// Positive segment parameter at which p + t*dir leaves K.
double exit_param(const ConvexBody& k, const Vec& p, const Vec& dir) {
  double t_exit = std::numeric_limits<double>::infinity();
  if (k.is_polytope()) {
    for (const Halfspace& h : k.polytope().halfspaces()) {
      double s = dot(h.normal, dir);
      if (s <= 1e-13) continue;
      t_exit = std::min(t_exit, std::max(0.0, (h.offset - dot(h.normal, p)) / s));
    }
  } else {
    const Ball& b = k.ball();
    Vec rel = p - b.center;
    double beta = dot(rel, dir);
    double gamma = norm2(rel) - b.radius * b.radius;
    double disc = beta * beta - gamma;
    if (disc > 0.0) t_exit = std::max(0.0, -beta + std::sqrt(disc));
  }
  return t_exit;
}

// Parameter where |p - O + t*dir| reaches r_target (dir unit, outward-ish).
double hit_param(const Vec& rel, const Vec& dir, double r_target) {
  double b = dot(rel, dir);
  double c = r_target * r_target - norm2(rel);
  if (c <= 0.0) return 0.0;
  return c / (b + std::sqrt(b * b + c));
}

struct FlowContext {
  const ConvexBody& k;
  const Vec& o;
  double tol;
  double eps;  // tol * diameter
  std::vector<CriticalPoint> criticals;
  double spacing;  // max nearest-neighbor distance among the input points
  double r_start;
  double r_target;

  // Share of the level a sample stands for, rescaled to the critical radius.
  // Capped so sparse point sets keep pointwise trajectory semantics.
  double corridor(double critical_distance) const {
    double w = r_start > 0.0 ? spacing * (critical_distance / r_start) : 0.0;
    return std::min(w, 0.05 * critical_distance);
  }

  // Critical point blocking a move from `from` to `to`, if any.
  const CriticalPoint* blocking(const Vec& from, const Vec& to) const {
    for (const CriticalPoint& c : criticals) {
      double w = corridor(c.distance);
      if (c.distance < distance(from, o) - w || c.distance > r_target + w) continue;
      if (segment_point_distance(from, to, c.location) <= w) return &c;
    }
    return nullptr;
  }
};

// One slide step along the boundary sphere of a ball body, ending exactly at
// radius r_target. Returns the endpoint.
Vec ball_slide(const Ball& b, const Vec& o, const Vec& p, const Vec& tangent,
               double r_target) {
  Vec e1 = normalized(p - b.center);
  Vec e2 = normalized(tangent);
  Vec co = b.center - o;
  double ca = dot(co, e1), cb = dot(co, e2);
  double m = std::hypot(ca, cb);
  double target = (r_target * r_target - norm2(co) - b.radius * b.radius) /
                  (2.0 * b.radius);
  double ratio = std::clamp(target / m, -1.0, 1.0);
  double phi0 = std::atan2(cb, ca);
  double delta = std::acos(ratio);
  // two candidate angles; take the smallest positive one
  double psi = std::numeric_limits<double>::infinity();
  for (double cand : {phi0 - delta, phi0 + delta, phi0 - delta + 2 * M_PI,
                      phi0 + delta + 2 * M_PI}) {
    if (cand > 1e-15 && cand < psi) psi = cand;
  }
  return b.center + (e1 * std::cos(psi) + e2 * std::sin(psi)) * b.radius;
}

}  // namespace

WitnessDirection radial_witness(const ConvexBody& k, const Vec& o, const Vec& p,
                                double tol) {
  require_same_dim(o, p);
  const double eps = tol * k.diameter();
  Vec rel = p - o;
  double rho = norm(rel);
  if (rho <= eps) throw Error(ErrorCode::PointIsO, "witness base coincides with O");
  double slack = criticality_slack(k, o, p);
  if (slack >= -eps)
    throw Error(ErrorCode::NoWitness, "point is critical: no outward direction exists");
  Vec x = support(k, rel).witness;
  Vec dir = normalized(x - p);
  return {p, dir, dot(dir, rel * (1.0 / rho))};
}

std::optional<WitnessDirection> flow_direction(const ConvexBody& k, const Vec& o,
                                               const Vec& p, double tol) {
  require_same_dim(o, p);
  const double eps = tol * k.diameter();
  Vec rel = p - o;
  double rho = norm(rel);
  if (rho <= eps) throw Error(ErrorCode::PointIsO, "flow base coincides with O");
  if (criticality_slack(k, o, p) >= -eps) return std::nullopt;

  Vec g = rel * (1.0 / rho);
  Vec d;
  if (k.is_polytope()) {
    const ConvexPolytope& poly = k.polytope();
    std::vector<Vec> active;
    for (const Halfspace& h : poly.halfspaces()) {
      if (dot(h.normal, p) >= h.offset - eps) active.push_back(h.normal);
    }
    d = active.empty() ? g : project_onto_cone(g, active);
  } else {
    const Ball& b = k.ball();
    Vec m = p - b.center;
    double dist_c = norm(m);
    d = g;
    if (dist_c >= b.radius - eps && dist_c > 0.0) {
      m *= 1.0 / dist_c;
      double s = dot(g, m);
      if (s > 0.0) d -= m * s;
    }
  }
  double mag = norm(d);
  if (mag <= 1e-12) return std::nullopt;
  return WitnessDirection{p, d * (1.0 / mag), mag};
}

namespace {

std::optional<StallRecord> push_one(const FlowContext& ctx, std::size_t index, Vec& p,
                                    std::vector<Vec>* trace) {
  const ConvexBody& k = ctx.k;
  const Vec& o = ctx.o;
  auto stall = [&](const CriticalPoint* c) {
    StallRecord rec;
    rec.point_index = index;
    rec.location = p.coords();
    rec.radius = distance(p, o);
    if (!c) {
      for (const CriticalPoint& cand : ctx.criticals) {
        if (!c || distance(cand.location, p) < distance(c->location, p)) c = &cand;
      }
    }
    if (c) {
      rec.blocking_critical_point = c->location.coords();
      rec.blocking_critical_distance = c->distance;
    }
    return rec;
  };

  for (int step = 0; step < kMaxSteps; ++step) {
    double rho = distance(p, o);
    if (std::abs(rho - ctx.r_target) <= std::max(ctx.eps, 1e-14 * ctx.r_target)) {
      p = o + (p - o) * (ctx.r_target / rho);  // snap exactly onto the target sphere
      if (trace) trace->push_back(p);
      return std::nullopt;
    }
    auto dir = flow_direction(k, o, p, ctx.tol);
    if (!dir) return stall(ctx.blocking(p, p));

    bool slide_on_ball = false;
    if (k.is_ball()) {
      const Ball& b = k.ball();
      slide_on_ball = distance(p, b.center) >= b.radius - ctx.eps;
    }
    Vec next;
    if (slide_on_ball) {
      next = ball_slide(k.ball(), o, p, dir->direction, ctx.r_target);
    } else {
      double t = std::min(hit_param(p - o, dir->direction, ctx.r_target),
                          exit_param(k, p, dir->direction));
      if (!(t > 1e-15 * k.diameter())) return stall(ctx.blocking(p, p));
      next = p + dir->direction * t;
    }
    if (const CriticalPoint* c = ctx.blocking(p, next)) return stall(c);
    p = next;
    if (trace) trace->push_back(p);
  }
  return stall(nullptr);
}

PushResult push_impl(const ConvexBody& k, const Vec& o, const std::vector<Vec>& points,
                     double r_target, double tol, bool traced) {
  PushResult result;
  if (points.empty()) return result;
  const double eps = tol * k.diameter();
  for (const Vec& p : points) require_same_dim(o, p);

  double r0 = distance(points.front(), o);
  for (const Vec& p : points) {
    if (std::abs(distance(p, o) - r0) > eps)
      throw Error(ErrorCode::NonuniformRadius,
                  "input points disagree on their radius from O");
  }
  if (r0 <= eps) throw Error(ErrorCode::PointIsO, "input points coincide with O");
  if (std::abs(r_target - r0) <= eps) {
    result.points = points;
    if (traced)
      for (const Vec& p : points) result.trajectories.push_back({p});
    return result;
  }
  if (r_target < r0)
    throw Error(ErrorCode::BadRadius, "r_target below the current level radius");
  double cap = max_distance(k, o);
  if (r_target > cap + eps)
    throw Error(ErrorCode::BadRadius, "r_target exceeds the maximal distance from O to K");

  FlowContext ctx{k, o, tol, eps, enumerate_critical_points(k, o, tol), 0.0, r0,
                  r_target};
  if (points.size() >= 2) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      double nn = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (i != j) nn = std::min(nn, distance(points[i], points[j]));
      }
      ctx.spacing = std::max(ctx.spacing, nn);
    }
  }

  std::vector<StallRecord> stalled;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Vec p = points[i];
    std::vector<Vec> trace{p};
    auto rec = push_one(ctx, i, p, traced ? &trace : nullptr);
    if (rec) {
      stalled.push_back(std::move(*rec));
      continue;
    }
    result.points.push_back(std::move(p));
    if (traced) result.trajectories.push_back(std::move(trace));
  }
  if (!stalled.empty()) {
    std::string msg = std::to_string(stalled.size()) + " of " +
                      std::to_string(points.size()) +
                      " trajectories reached a critical point before radius " +
                      std::to_string(r_target);
    throw StalledAtCritical(msg, std::move(stalled));
  }
  return result;
}

}  // namespace

std::vector<Vec> push_level(const ConvexBody& k, const Vec& o,
                            const std::vector<Vec>& points, double r_target,
                            double tol) {
  return push_impl(k, o, points, r_target, tol, false).points;
}

PushResult push_level_traced(const ConvexBody& k, const Vec& o,
                             const std::vector<Vec>& points, double r_target,
                             double tol) {
  return push_impl(k, o, points, r_target, tol, true);
}

std::vector<Vec> sample_level(const ConvexBody& k, const Vec& o, double r, int n,
                              const SamplingParams& params, double tol) {
  if (!(r > 0.0)) throw Error(ErrorCode::BadRadius, "radius must be positive");
  if (n <= 0) throw Error(ErrorCode::InvalidInput, "sample count must be positive");
  std::vector<Vec> out;
  if (k.dim() == 2) {
    ArcSet arcs = level_arcs_2d(k, o, r, tol);
    double total = 0.0;
    for (auto& [a, b] : arcs.arcs) total += b - a;
    if (total <= 0.0) {
      for (auto& [a, b] : arcs.arcs)
        out.push_back(Vec{o[0] + r * std::cos(a), o[1] + r * std::sin(a)});
      return out;
    }
    double step = total / n;
    double offset = 0.5 * step;
    for (auto& [a, b] : arcs.arcs) {
      while (offset < b - a) {
        double theta = a + offset;
        out.push_back(Vec{o[0] + r * std::cos(theta), o[1] + r * std::sin(theta)});
        offset += step;
      }
      offset -= b - a;
    }
    return out;
  }
  SamplingParams sp = params;
  if (sp.samples_per_sphere <= 0) sp.samples_per_sphere = n;
  for (Vec& x : sphere_samples(k.dim(), o, r, sp)) {
    if (contains(k, x, tol)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace convexcr
