#include "convexcr/connectivity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "convexcr/criticality.hpp"
#include "convexcr/rng.hpp"

namespace convexcr {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a;
}

// Expected nearest-neighbor spacing constant per ambient dimension.
double spacing_constant(int dim) {
  switch (dim) {
    case 2: return kTwoPi;
    case 3: return 2.0;
    case 4: return 1.6;
    default:
      throw Error(ErrorCode::BadDimension, "sampling supports dimensions 2..4");
  }
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

ArcSet arcs_for_ball(const Ball& b, const Vec& o, double r, double tol) {
  ArcSet out;
  out.radius = r;
  const double d = distance(b.center, o);
  auto full_circle = [&] {
    out.arcs.push_back({0.0, kTwoPi});
    out.component_count = 1;
  };
  if (d <= tol * b.diameter()) {
    if (r <= b.radius + tol * b.diameter()) full_circle();
    return out;
  }
  // Circle point at angle t from O is inside the ball iff
  // cos(t - phi) >= q with phi the direction of the center.
  const double q = (r * r + d * d - b.radius * b.radius) / (2.0 * r * d);
  if (q <= -1.0) {
    full_circle();
    return out;
  }
  if (q >= 1.0) {
    if (std::abs(d - r) <= b.radius + tol * b.diameter() && q <= 1.0 + 1e-12) {
      // tangency: the level is the single closest-approach point
      double phi = wrap_angle(std::atan2(b.center[1] - o[1], b.center[0] - o[0]));
      out.arcs.push_back({phi, phi});
      out.component_count = 1;
    }
    return out;
  }
  const double alpha = std::acos(q);
  const double phi = std::atan2(b.center[1] - o[1], b.center[0] - o[0]);
  double start = wrap_angle(phi - alpha);
  out.arcs.push_back({start, start + 2.0 * alpha});
  out.component_count = 1;
  return out;
}

}  // namespace

ArcSet level_arcs_2d(const ConvexBody& k, const Vec& o, double r, double tol) {
  if (k.dim() != 2)
    throw Error(ErrorCode::BadDimension, "level_arcs_2d requires a 2D body");
  if (o.dim() != 2)
    throw Error(ErrorCode::DimensionMismatch, "point/body dimensions disagree");
  if (!(r > 0.0)) throw Error(ErrorCode::BadRadius, "radius must be positive");

  if (k.is_ball()) return arcs_for_ball(k.ball(), o, r, tol);

  const ConvexPolytope& poly = k.polytope();
  auto circle_point = [&](double theta) {
    return Vec{o[0] + r * std::cos(theta), o[1] + r * std::sin(theta)};
  };

  // Crossing angles of the circle with each boundary edge.
  std::vector<double> angles;
  for (const Face& edge : poly.faces(1)) {
    const Vec& a = poly.vertices()[edge.vertex_ids[0]];
    const Vec& b = poly.vertices()[edge.vertex_ids[1]];
    Vec d = b - a;
    Vec rel = a - o;
    double qa = norm2(d);
    double qb = dot(rel, d);
    double qc = norm2(rel) - r * r;
    double disc = qb * qb - qa * qc;
    if (disc < 0.0) continue;
    double sq = std::sqrt(disc);
    const double t_eps = tol * poly.diameter() / std::sqrt(qa);
    for (double t : {(-qb - sq) / qa, (-qb + sq) / qa}) {
      if (t < -t_eps || t > 1.0 + t_eps) continue;
      Vec x = a + d * t;
      angles.push_back(wrap_angle(std::atan2(x[1] - o[1], x[0] - o[0])));
    }
  }

  ArcSet out;
  out.radius = r;
  std::sort(angles.begin(), angles.end());
  const double ang_eps =
      std::clamp(10.0 * tol * poly.diameter() / r, 1e-13, 1e-3);
  std::vector<double> uniq;
  for (double a : angles) {
    if (uniq.empty() || a - uniq.back() > ang_eps) uniq.push_back(a);
  }
  if (uniq.size() >= 2 && (uniq.front() + kTwoPi) - uniq.back() <= ang_eps)
    uniq.pop_back();

  if (uniq.empty()) {
    if (contains(k, circle_point(0.0), tol)) {
      out.arcs.push_back({0.0, kTwoPi});
      out.component_count = 1;
    }
    return out;
  }

  const int n = static_cast<int>(uniq.size());
  std::vector<bool> interval_in(n);
  for (int i = 0; i < n; ++i) {
    double a = uniq[i];
    double b = (i + 1 < n) ? uniq[i + 1] : uniq[0] + kTwoPi;
    interval_in[i] = contains(k, circle_point(0.5 * (a + b)), tol);
  }

  bool all_in = std::all_of(interval_in.begin(), interval_in.end(),
                            [](bool v) { return v; });
  if (all_in) {
    out.arcs.push_back({0.0, kTwoPi});
    out.component_count = 1;
    return out;
  }

  // Maximal circular runs of in-intervals become arcs; crossing angles with
  // out-intervals on both sides are isolated tangency points of the level.
  for (int i = 0; i < n; ++i) {
    bool prev_in = interval_in[(i + n - 1) % n];
    if (!prev_in && !interval_in[i]) {
      out.arcs.push_back({uniq[i], uniq[i]});
      continue;
    }
    if (interval_in[i] && !prev_in) {
      int j = i;
      double span = 0.0;
      while (interval_in[j % n]) {
        double a = uniq[j % n];
        double b = (j % n + 1 < n) ? uniq[j % n + 1] : uniq[0] + kTwoPi;
        span += b - a;
        ++j;
      }
      out.arcs.push_back({uniq[i], uniq[i] + span});
    }
  }
  std::sort(out.arcs.begin(), out.arcs.end());
  out.component_count = static_cast<int>(out.arcs.size());
  return out;
}

int SamplingParams::resolved_samples(int dim) const {
  if (samples_per_sphere > 0) return samples_per_sphere;
  switch (dim) {
    case 2: return 16384;
    case 3: return 4096;
    case 4: return 16384;
    default:
      throw Error(ErrorCode::BadDimension, "sampling supports dimensions 2..4");
  }
}

std::vector<Vec> sphere_samples(int dim, const Vec& o, double r,
                                const SamplingParams& params) {
  const int n = params.resolved_samples(dim);
  std::vector<Vec> out;
  out.reserve(static_cast<std::size_t>(n));
  if (dim == 2) {
    // Equally spaced angles with a seeded rotation; emitted in ascending
    // angle so that run-scanning downstream stays linear.
    Rng rng(mix_seed(params.seed, 0x2d));
    const double step = kTwoPi / n;
    const double offset = std::fmod(rng.uniform01() * kTwoPi, step);
    for (int i = 0; i < n; ++i) {
      double t = offset + step * i;
      out.push_back(Vec{o[0] + r * std::cos(t), o[1] + r * std::sin(t)});
    }
  } else if (dim == 3) {
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
      double z = 1.0 - (2.0 * i + 1.0) / n;
      double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      double phi = golden * i;
      out.push_back(Vec{o[0] + r * rho * std::cos(phi),
                        o[1] + r * rho * std::sin(phi), o[2] + r * z});
    }
  } else {
    Rng rng(mix_seed(params.seed, 0x4d));
    for (int i = 0; i < n; ++i) {
      Vec u = rng.unit_direction(dim);
      out.push_back(o + u * r);
    }
  }
  return out;
}

ComponentReport level_components_sampled(const ConvexBody& k, const Vec& o, double r,
                                         const SamplingParams& params, double tol) {
  if (!(r > 0.0)) throw Error(ErrorCode::BadRadius, "radius must be positive");
  const int dim = k.dim();
  const int n = params.resolved_samples(dim);
  const double threshold = params.adjacency_factor * r * spacing_constant(dim) *
                           std::pow(static_cast<double>(n),
                                    -1.0 / static_cast<double>(dim - 1));

  std::vector<Vec> kept;
  for (Vec& x : sphere_samples(dim, o, r, params)) {
    if (contains(k, x, tol)) kept.push_back(std::move(x));
  }

  ComponentReport rep;
  rep.radius = r;
  rep.method = LevelMethod::kSampled;
  rep.sample_count_in_k = static_cast<long>(kept.size());
  if (kept.empty()) return rep;

  const int m = static_cast<int>(kept.size());
  UnionFind uf(m);
  if (dim == 2) {
    // Samples arrive sorted by angle; adjacency on a circle reduces to
    // consecutive gaps plus the wraparound gap.
    for (int i = 0; i + 1 < m; ++i) {
      if (distance(kept[i], kept[i + 1]) < threshold) uf.unite(i, i + 1);
    }
    if (m > 1 && distance(kept[m - 1], kept[0]) < threshold) uf.unite(m - 1, 0);
  } else {
    // Uniform grid with cell size = threshold; candidate pairs live in
    // adjacent cells.
    auto cell_of = [&](const Vec& p) {
      std::array<std::int64_t, 4> c{};
      for (int i = 0; i < dim; ++i)
        c[static_cast<std::size_t>(i)] =
            static_cast<std::int64_t>(std::floor(p[i] / threshold));
      return c;
    };
    auto key_of = [&](const std::array<std::int64_t, 4>& c) {
      std::uint64_t h = 0xcbf29ce484222325ULL;
      for (int i = 0; i < dim; ++i)
        h = mix_seed(h, static_cast<std::uint64_t>(c[static_cast<std::size_t>(i)]));
      return h;
    };
    std::unordered_map<std::uint64_t, std::vector<int>> grid;
    grid.reserve(static_cast<std::size_t>(m) * 2);
    for (int i = 0; i < m; ++i) {
      auto base = cell_of(kept[i]);
      std::array<int, 4> shift{};
      shift.fill(-1);
      for (;;) {
        auto cell = base;
        for (int d2 = 0; d2 < dim; ++d2)
          cell[static_cast<std::size_t>(d2)] += shift[static_cast<std::size_t>(d2)];
        auto it = grid.find(key_of(cell));
        if (it != grid.end()) {
          for (int j : it->second) {
            if (distance(kept[i], kept[j]) < threshold) uf.unite(i, j);
          }
        }
        int d3 = 0;
        while (d3 < dim && shift[static_cast<std::size_t>(d3)] == 1) {
          shift[static_cast<std::size_t>(d3)] = -1;
          ++d3;
        }
        if (d3 == dim) break;
        ++shift[static_cast<std::size_t>(d3)];
      }
      grid[key_of(base)].push_back(i);
    }
  }

  std::vector<int> root_order;
  for (int i = 0; i < m; ++i) {
    int rt = uf.find(i);
    if (std::find(root_order.begin(), root_order.end(), rt) == root_order.end())
      root_order.push_back(rt);
  }
  for (int rt : root_order) rep.representative_points.push_back(kept[rt]);
  rep.component_count = static_cast<int>(root_order.size());
  return rep;
}

int level_component_count(const ConvexBody& k, const Vec& o, double r,
                          const SamplingParams& params, double tol) {
  if (k.dim() == 2) return level_arcs_2d(k, o, r, tol).component_count;
  return level_components_sampled(k, o, r, params, tol).component_count;
}

std::vector<double> event_radii(const ConvexBody& k, const Vec& o, double tol) {
  const double cap = max_distance(k, o);
  std::vector<double> events;
  if (k.is_ball()) {
    events.push_back(cap);
    return events;
  }
  const ConvexPolytope& poly = k.polytope();
  for (int d = 0; d < poly.dim(); ++d) {
    for (const Face& f : poly.faces(d)) {
      ProjectionResult proj = project_affine(f, o, tol);
      if (proj.contains_o) continue;
      if (!contains(k, proj.foot, tol)) continue;  // foot off the face
      events.push_back(distance(proj.foot, o));
    }
  }
  std::sort(events.begin(), events.end());
  const double eps = std::max(tol, 1e-12) * poly.diameter();
  std::vector<double> uniq;
  for (double e : events) {
    if (e <= eps || e > cap + eps) continue;
    if (uniq.empty() || e - uniq.back() > eps) uniq.push_back(e);
  }
  if (uniq.empty() || uniq.back() < cap - eps) uniq.push_back(cap);
  return uniq;
}

CrEstimate connectivity_radius(const ConvexBody& k, const Vec& o, double resolution,
                               const SamplingParams& params, double tol) {
  const double cap = max_distance(k, o);
  if (!(resolution > 0.0))
    throw Error(ErrorCode::BadRadius, "resolution must be positive");
  if (resolution > cap / 100.0)
    throw Error(ErrorCode::ResolutionTooCoarse,
                "resolution exceeds search_cap/100");

  CrEstimate est;
  est.search_cap = cap;
  est.resolution = resolution;

  const std::vector<double> events = event_radii(k, o, tol);
  const bool exact = (k.dim() == 2);

  double prev = 0.0;
  double prev_connected = 0.0;  // left end of the last interval known connected
  for (double e : events) {
    if (e - prev <= 1e-15 * cap) {
      prev = e;
      continue;
    }
    double mid = 0.5 * (prev + e);
    int count = level_component_count(k, o, mid, params, tol);
    if (count >= 2) {
      double first;
      if (exact) {
        // Arc combinatorics are constant between events, so the level is
        // disconnected on all of (prev, e): the disconnection radius is the
        // interval's left endpoint.
        first = prev;
      } else {
        double lo = prev_connected, hi = mid;
        while (hi - lo > resolution) {
          double m2 = 0.5 * (lo + hi);
          if (level_component_count(k, o, m2, params, tol) >= 2)
            hi = m2;
          else
            lo = m2;
        }
        first = lo;
      }
      est.status = CrStatus::kDisconnectsAt;
      est.first_disconnection_radius = first;
      est.value = first;
      return est;
    }
    prev_connected = mid;
    prev = e;
  }

  est.status = CrStatus::kNeverDisconnectsWithinCap;
  est.value = cap;
  return est;
}

std::string components_csv(const std::vector<ComponentReport>& reports) {
  std::ostringstream os;
  os << "radius,method,component_count\n";
  os.precision(17);
  for (const ComponentReport& r : reports) {
    os << r.radius << ','
       << (r.method == LevelMethod::kExact2d ? "exact2d" : "sampled") << ','
       << r.component_count << '\n';
  }
  return os.str();
}

}  // namespace convexcr
