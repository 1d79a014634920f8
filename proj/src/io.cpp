#include "convexcr/io.hpp"

#include <fstream>

namespace convexcr {

Json to_json(const Vec& v) {
  Json arr = Json::array();
  for (double x : v.coords()) arr.push_back(x);
  return arr;
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw Error(ErrorCode::InvalidInput, "expected a coordinate array");
  std::vector<double> c;
  for (const auto& x : j) {
    if (!x.is_number()) throw Error(ErrorCode::InvalidInput, "non-numeric coordinate");
    c.push_back(x.get<double>());
  }
  return Vec(std::move(c));
}

ConvexBody body_from_json(const Json& j, double tol) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "body must be a JSON object");
  if (!j.contains("dimension") || !j["dimension"].is_number_integer())
    throw Error(ErrorCode::InvalidInput, "body requires an integer \"dimension\"");
  const int dim = j["dimension"].get<int>();
  if (j.contains("vertices")) {
    std::vector<Vec> pts;
    for (const auto& row : j["vertices"]) pts.push_back(vec_from_json(row));
    for (const Vec& p : pts) {
      if (p.dim() != dim)
        throw Error(ErrorCode::DimensionMismatch,
                    "vertex dimension disagrees with \"dimension\"");
    }
    return ConvexBody(build_polytope(pts, tol));
  }
  if (j.contains("center") && j.contains("radius")) {
    Vec center = vec_from_json(j["center"]);
    if (center.dim() != dim)
      throw Error(ErrorCode::DimensionMismatch,
                  "center dimension disagrees with \"dimension\"");
    double radius = j["radius"].get<double>();
    if (!(radius > 0.0) || !std::isfinite(radius))
      throw Error(ErrorCode::InvalidInput, "ball radius must be positive and finite");
    return ConvexBody(Ball{center, radius});
  }
  throw Error(ErrorCode::InvalidInput,
              "body requires either \"vertices\" or \"center\"+\"radius\"");
}

Json body_to_json(const ConvexBody& k) {
  Json j;
  j["dimension"] = k.dim();
  if (k.is_polytope()) {
    Json verts = Json::array();
    for (const Vec& v : k.polytope().vertices()) verts.push_back(to_json(v));
    j["vertices"] = verts;
  } else {
    j["center"] = to_json(k.ball().center);
    j["radius"] = k.ball().radius;
  }
  return j;
}

ConvexBody load_body_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open body file " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("bad JSON in ") + path + ": " + e.what());
  }
  return body_from_json(j, tol);
}

Json to_json(const CriticalPoint& cp) {
  Json j;
  j["location"] = to_json(cp.location);
  j["distance"] = cp.distance;
  j["carrier_dim"] = cp.carrier_dim;
  j["carrier"] = cp.ball_antipode ? Json("ball-antipode") : Json(cp.carrier_vertex_ids);
  j["slack"] = cp.slack;
  return j;
}

Json to_json(const LcdResult& r) {
  Json j;
  j["value"] = r.value;
  j["attaining_point"] = to_json(r.attaining_point);
  Json all = Json::array();
  for (const CriticalPoint& cp : r.all_points) all.push_back(to_json(cp));
  j["all_points"] = all;
  return j;
}

Json to_json(const ArcSet& a) {
  Json j;
  j["radius"] = a.radius;
  Json arcs = Json::array();
  for (auto& [s, e] : a.arcs) arcs.push_back(Json::array({s, e}));
  j["arcs"] = arcs;
  j["component_count"] = a.component_count;
  return j;
}

Json to_json(const ComponentReport& r) {
  Json j;
  j["radius"] = r.radius;
  j["method"] = r.method == LevelMethod::kExact2d ? "exact2d" : "sampled";
  j["component_count"] = r.component_count;
  Json reps = Json::array();
  for (const Vec& v : r.representative_points) reps.push_back(to_json(v));
  j["representative_points"] = reps;
  if (r.sample_count_in_k >= 0) j["sample_count_in_K"] = r.sample_count_in_k;
  return j;
}

const char* cr_status_name(CrStatus s) {
  return s == CrStatus::kDisconnectsAt ? "disconnects_at"
                                       : "never_disconnects_within_cap";
}

Json to_json(const CrEstimate& e) {
  Json j;
  j["value"] = e.value;
  j["status"] = cr_status_name(e.status);
  if (e.first_disconnection_radius)
    j["first_disconnection_radius"] = *e.first_disconnection_radius;
  else
    j["first_disconnection_radius"] = nullptr;
  j["search_cap"] = e.search_cap;
  j["resolution"] = e.resolution;
  return j;
}

}  // namespace convexcr
