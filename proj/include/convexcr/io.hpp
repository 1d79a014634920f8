#pragma once

#include <string>

#include <json.hpp>

#include "convexcr/connectivity.hpp"
#include "convexcr/criticality.hpp"

namespace convexcr {

using Json = nlohmann::ordered_json;

// Body files: {"dimension": n, "vertices": [[...], ...]} for polytopes
// (vertices are hulled on load) or {"dimension": n, "center": [...],
// "radius": r} for balls.
ConvexBody body_from_json(const Json& j, double tol = kDefaultTol);
Json body_to_json(const ConvexBody& k);
ConvexBody load_body_file(const std::string& path, double tol = kDefaultTol);

Json to_json(const Vec& v);
Vec vec_from_json(const Json& j);
Json to_json(const CriticalPoint& cp);
Json to_json(const LcdResult& r);
Json to_json(const ArcSet& a);
Json to_json(const ComponentReport& r);
Json to_json(const CrEstimate& e);

const char* cr_status_name(CrStatus s);

}  // namespace convexcr
