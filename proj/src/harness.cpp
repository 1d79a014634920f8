#include "convexcr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "convexcr/rng.hpp"

namespace convexcr {

namespace {

constexpr const char* kVersionTag = "convexcr 0.1.0";
constexpr double kFacetAngleFloor = 1e-6;

bool hull_is_degenerate(const ConvexPolytope& poly) {
  const int dim = poly.dim();
  if (static_cast<int>(poly.vertices().size()) < dim + 1) return true;
  const auto& hs = poly.halfspaces();
  const double eps = kDefaultTol * poly.diameter();
  // Adjacent facets (sharing a ridge) with nearly parallel normals make the
  // downstream predicates ill-conditioned; redraw instead.
  std::vector<std::vector<int>> tight(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (int v = 0; v < static_cast<int>(poly.vertices().size()); ++v) {
      if (std::abs(dot(hs[i].normal, poly.vertices()[v]) - hs[i].offset) <= eps)
        tight[i].push_back(v);
    }
  }
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(tight[i].begin(), tight[i].end(), tight[j].begin(),
                            tight[j].end(), std::back_inserter(common));
      if (static_cast<int>(common.size()) < dim - 1) continue;
      double c = std::clamp(dot(hs[i].normal, hs[j].normal), -1.0, 1.0);
      if (std::acos(c) < kFacetAngleFloor) return true;
    }
  }
  return false;
}

// Decompose a face into simplices (fan from the face's first vertex over the
// triangulated subfaces that miss it).
void face_simplices(const ConvexPolytope& poly, const Face& face,
                    std::vector<std::vector<int>>& out) {
  if (face.dim == 0) {
    out.push_back(face.vertex_ids);
    return;
  }
  const int v0 = face.vertex_ids.front();
  for (const Face& sub : poly.faces(face.dim - 1)) {
    if (std::binary_search(sub.vertex_ids.begin(), sub.vertex_ids.end(), v0)) continue;
    if (!std::includes(face.vertex_ids.begin(), face.vertex_ids.end(),
                       sub.vertex_ids.begin(), sub.vertex_ids.end()))
      continue;
    std::vector<std::vector<int>> subs;
    face_simplices(poly, sub, subs);
    for (auto& s : subs) {
      s.push_back(v0);
      out.push_back(std::move(s));
    }
  }
}

double simplex_measure(const ConvexPolytope& poly, const std::vector<int>& ids) {
  const int d = static_cast<int>(ids.size()) - 1;
  if (d == 0) return 0.0;
  std::vector<Vec> edges;
  for (int i = 1; i <= d; ++i)
    edges.push_back(poly.vertices()[ids[i]] - poly.vertices()[ids[0]]);
  // Gram determinant, d <= 3
  std::vector<std::vector<double>> g(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g[i][j] = dot(edges[i], edges[j]);
  double det = 0.0;
  if (d == 1) {
    det = g[0][0];
  } else if (d == 2) {
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  } else {
    det = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
          g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
          g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  }
  double fact = 1.0;
  for (int i = 2; i <= d; ++i) fact *= i;
  return std::sqrt(std::max(det, 0.0)) / fact;
}

struct Instance {
  std::string id;
  ConvexBody body;
  Vec o;
};

ConvexBody pinned_square() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}}));
}
ConvexBody pinned_triangle() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{4, 0}, Vec{1, 3}}));
}
ConvexBody pinned_disk() { return ConvexBody(Ball{Vec{0, 0}, 1.0}); }
ConvexBody pinned_prism() {
  return ConvexBody(build_polytope({Vec{0, 0, 0}, Vec{4, 0, 0}, Vec{1, 3, 0},
                                    Vec{0, 0, 0.2}, Vec{4, 0, 0.2}, Vec{1, 3, 0.2}}));
}

std::vector<Instance> campaign_instances(const CampaignConfig& cfg) {
  std::vector<Instance> out;
  if (cfg.include_pinned) {
    out.push_back({"pinned:square-corner", pinned_square(), Vec{0, 0}});
    out.push_back({"pinned:triangle-vertex", pinned_triangle(), Vec{0, 0}});
    out.push_back({"pinned:triangle-side", pinned_triangle(), Vec{2, 0}});
    out.push_back({"pinned:disk", pinned_disk(), Vec{-1, 0}});
    out.push_back({"pinned:prism", pinned_prism(), Vec{0, 0, 0}});
  }
  for (int i = 0; i < cfg.trials_2d; ++i) {
    ConvexPolytope poly = random_polytope(2, cfg.points_per_hull,
                                          mix_seed(cfg.seed, 0x2d0000ULL + i));
    Vec o = random_boundary_point(poly, mix_seed(cfg.seed, 0x2e0000ULL + i));
    out.push_back({"2d:" + std::to_string(i), ConvexBody(std::move(poly)), o});
  }
  for (int i = 0; i < cfg.trials_3d; ++i) {
    ConvexPolytope poly = random_polytope(3, cfg.points_per_hull,
                                          mix_seed(cfg.seed, 0x3d0000ULL + i));
    Vec o = random_boundary_point(poly, mix_seed(cfg.seed, 0x3e0000ULL + i));
    out.push_back({"3d:" + std::to_string(i), ConvexBody(std::move(poly)), o});
  }
  return out;
}

}  // namespace

ConvexPolytope random_polytope(int dim, int npoints, std::uint64_t seed) {
  if (dim < 2 || dim > 4)
    throw Error(ErrorCode::BadDimension, "random_polytope supports dimensions 2..4");
  if (npoints < dim + 1)
    throw Error(ErrorCode::InvalidInput, "need at least dim+1 points");
  Rng rng(seed);
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(npoints));
    for (int i = 0; i < npoints; ++i) pts.push_back(rng.in_unit_ball(dim));
    try {
      ConvexPolytope poly = build_polytope(pts);
      if (!hull_is_degenerate(poly)) return poly;
    } catch (const Error&) {
      // degenerate draw; fall through to redraw
    }
  }
  throw Error(ErrorCode::DegenerateInput,
              "could not draw a non-degenerate hull in 64 attempts");
}

Vec random_boundary_point(const ConvexPolytope& k, std::uint64_t seed) {
  Rng rng(seed);
  const int fd = k.dim() - 1;
  std::vector<std::vector<int>> simplices;
  std::vector<double> weights;
  double total = 0.0;
  for (const Face& facet : k.faces(fd)) {
    std::vector<std::vector<int>> local;
    face_simplices(k, facet, local);
    for (auto& s : local) {
      double w = simplex_measure(k, s);
      total += w;
      weights.push_back(w);
      simplices.push_back(std::move(s));
    }
  }
  double pick = rng.uniform01() * total;
  std::size_t chosen = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    pick -= weights[i];
    if (pick <= 0.0) {
      chosen = i;
      break;
    }
    if (i + 1 == weights.size()) chosen = i;
  }
  const auto& ids = simplices[chosen];
  // uniform barycentric coordinates via exponential spacings
  std::vector<double> lam;
  double sum = 0.0;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    double u = rng.uniform01();
    while (u <= 0.0) u = rng.uniform01();
    double e = -std::log(u);
    lam.push_back(e);
    sum += e;
  }
  Vec p(static_cast<std::size_t>(k.dim()));
  for (std::size_t i = 0; i < ids.size(); ++i)
    p += k.vertices()[ids[i]] * (lam[i] / sum);
  return p;
}

Report verify_campaign(const CampaignConfig& cfg) {
  Report report;
  report.version = kVersionTag;
  report.config = cfg;
  report.min_margin = std::numeric_limits<double>::infinity();

  std::vector<Instance> instances = campaign_instances(cfg);
  long oracle_total = 0, oracle_agree = 0;
  int oracle_checked = 0;

  for (std::size_t idx = 0; idx < instances.size(); ++idx) {
    const Instance& inst = instances[idx];
    InstanceRecord rec;
    rec.id = inst.id;
    rec.kind = inst.body.is_polytope() ? "polytope" : "ball";
    rec.dim = inst.body.dim();
    rec.vertex_count =
        inst.body.is_polytope() ? static_cast<int>(inst.body.polytope().vertices().size()) : 0;
    rec.diameter = inst.body.diameter();
    rec.o = inst.o;
    rec.method = rec.dim == 2 ? "exact2d" : "sampled";

    SamplingParams sampling = cfg.sampling;
    sampling.seed = mix_seed(cfg.sampling.seed, 0x5a0000ULL + idx);

    try {
      LcdResult lc = lcd(inst.body, inst.o, cfg.tol);
      rec.lcd_value = lc.value;
      rec.lcd_attained_at = lc.attaining_point.location;
      rec.critical_count = static_cast<int>(lc.all_points.size());

      const double res_abs = cfg.resolution * inst.body.diameter();
      CrEstimate cr = connectivity_radius(inst.body, inst.o, res_abs, sampling, cfg.tol);
      rec.cr_value = cr.value;
      rec.cr_status = cr.status;
      rec.first_disconnection_radius = cr.first_disconnection_radius;
      rec.search_cap = cr.search_cap;

      rec.margin = cr.value - lc.value;
      rec.allowed_slack = res_abs;
      if (rec.dim > 2) {
        const int n = sampling.resolved_samples(rec.dim);
        const double spacing = (rec.dim == 3 ? 2.0 : 1.6) * lc.value *
                               std::pow(static_cast<double>(n),
                                        -1.0 / static_cast<double>(rec.dim - 1));
        rec.allowed_slack += 3.0 * spacing;
      }
      rec.violation = rec.margin < -rec.allowed_slack;
      if (rec.violation) ++report.violations;
      report.min_margin = std::min(report.min_margin, rec.margin);

      // angle-ratio property over enumerated critical pairs
      for (std::size_t i = 0; i < lc.all_points.size(); ++i) {
        for (std::size_t j = i + 1; j < lc.all_points.size(); ++j) {
          const CriticalPoint& a = lc.all_points[i];
          const CriticalPoint& b = lc.all_points[j];
          double c = std::clamp(
              dot(a.location - inst.o, b.location - inst.o) / (a.distance * b.distance),
              -1.0, 1.0);
          if (std::acos(c) <= M_PI / 3.0 - 1e-9) {
            double ratio = std::max(a.distance, b.distance) /
                           std::min(a.distance, b.distance);
            report.angle_ratio_max = std::max(report.angle_ratio_max, ratio);
          }
        }
      }

      if (rec.dim == 2) {
        // Lemma check: any exactly-computed level with >= 2 components must
        // have a critical distance at most its radius (+1e-6).
        std::vector<double> probe;
        const std::vector<double> events = event_radii(inst.body, inst.o, cfg.tol);
        double prev = 0.0;
        for (double e : events) {
          if (e > prev) probe.push_back(0.5 * (prev + e));
          prev = e;
        }
        bool dual = oracle_checked < cfg.oracle_check_instances;
        Rng radius_rng(mix_seed(cfg.seed, 0x6f0000ULL + idx));
        std::vector<double> oracle_radii;
        if (dual) {
          for (int t = 0; t < 50; ++t)
            oracle_radii.push_back(cr.search_cap * (0.01 + 0.98 * radius_rng.uniform01()));
          probe.insert(probe.end(), oracle_radii.begin(), oracle_radii.end());
          ++oracle_checked;
        }
        for (double r : probe) {
          int count = level_arcs_2d(inst.body, inst.o, r, cfg.tol).component_count;
          if (count >= 2 && lc.value > r + 1e-6) ++report.lemma_disconnect_exceptions;
        }
        for (double r : oracle_radii) {
          int exact = level_arcs_2d(inst.body, inst.o, r, cfg.tol).component_count;
          int sampled =
              level_components_sampled(inst.body, inst.o, r, sampling, cfg.tol)
                  .component_count;
          ++oracle_total;
          if (exact == sampled) ++oracle_agree;
        }
      }
    } catch (const Error& e) {
      rec.error = e.what();
      ++report.errors;
    }
    report.instances.push_back(std::move(rec));
  }

  report.oracle_agreement_rate =
      oracle_total > 0 ? static_cast<double>(oracle_agree) / oracle_total : 1.0;
  if (report.instances.empty()) report.min_margin = 0.0;
  if (!std::isfinite(report.min_margin)) report.min_margin = 0.0;
  return report;
}

Json Report::to_json() const {
  Json j;
  j["version"] = version;
  Json c;
  c["trials_2d"] = config.trials_2d;
  c["trials_3d"] = config.trials_3d;
  c["points_per_hull"] = config.points_per_hull;
  c["seed"] = config.seed;
  c["tol"] = config.tol;
  c["resolution"] = config.resolution;
  Json s;
  s["samples_per_sphere"] = config.sampling.samples_per_sphere;
  s["adjacency_factor"] = config.sampling.adjacency_factor;
  s["seed"] = config.sampling.seed;
  c["sampling"] = s;
  c["include_pinned"] = config.include_pinned;
  c["oracle_check_instances"] = config.oracle_check_instances;
  j["config"] = c;

  Json arr = Json::array();
  for (const InstanceRecord& r : instances) {
    Json i;
    i["id"] = r.id;
    i["kind"] = r.kind;
    i["dim"] = r.dim;
    i["vertex_count"] = r.vertex_count;
    i["diameter"] = r.diameter;
    i["O"] = convexcr::to_json(r.o);
    if (r.error) {
      i["error"] = *r.error;
    } else {
      i["lcd"] = r.lcd_value;
      i["lcd_attained_at"] = convexcr::to_json(r.lcd_attained_at);
      i["critical_count"] = r.critical_count;
      i["cr"] = r.cr_value;
      i["cr_status"] = cr_status_name(r.cr_status);
      if (r.first_disconnection_radius)
        i["first_disconnection_radius"] = *r.first_disconnection_radius;
      else
        i["first_disconnection_radius"] = nullptr;
      i["search_cap"] = r.search_cap;
      i["method"] = r.method;
      i["margin"] = r.margin;
      i["allowed_slack"] = r.allowed_slack;
      i["violation"] = r.violation;
    }
    arr.push_back(std::move(i));
  }
  j["instances"] = arr;

  Json a;
  a["violations"] = violations;
  a["min_margin"] = min_margin;
  a["angle_ratio_max"] = angle_ratio_max;
  a["oracle_agreement_rate"] = oracle_agreement_rate;
  a["lemma_disconnect_exceptions"] = lemma_disconnect_exceptions;
  a["errors"] = errors;
  j["aggregate"] = a;
  return j;
}

std::string Report::to_json_string() const { return to_json().dump(2) + "\n"; }

std::string Report::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "instance_id,lcd,cr,margin\n";
  for (const InstanceRecord& r : instances) {
    if (r.error) continue;
    os << r.id << ',' << r.lcd_value << ',' << r.cr_value << ',' << r.margin << '\n';
  }
  return os.str();
}

}  // namespace convexcr
