#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexcr/connectivity.hpp"
#include "convexcr/criticality.hpp"
#include "convexcr/io.hpp"

namespace convexcr {

struct CampaignConfig {
  int trials_2d = 0;
  int trials_3d = 0;
  int points_per_hull = 20;
  std::uint64_t seed = 42;
  double tol = kDefaultTol;
  double resolution = 1e-4;  // relative to the body diameter
  SamplingParams sampling;
  bool include_pinned = true;
  // 2D instances double-checked against the sampled oracle (50 radii each).
  int oracle_check_instances = 50;
};

struct InstanceRecord {
  std::string id;
  std::string kind;  // "polytope" | "ball"
  int dim = 0;
  int vertex_count = 0;
  double diameter = 0.0;
  Vec o;
  double lcd_value = 0.0;
  Vec lcd_attained_at;
  int critical_count = 0;
  double cr_value = 0.0;
  CrStatus cr_status = CrStatus::kNeverDisconnectsWithinCap;
  std::optional<double> first_disconnection_radius;
  double search_cap = 0.0;
  std::string method;  // "exact2d" | "sampled"
  double margin = 0.0;
  double allowed_slack = 0.0;
  bool violation = false;
  std::optional<std::string> error;
};

struct Report {
  std::string version;
  CampaignConfig config;
  std::vector<InstanceRecord> instances;
  int violations = 0;
  double min_margin = 0.0;
  double angle_ratio_max = 0.0;
  double oracle_agreement_rate = 1.0;
  int lemma_disconnect_exceptions = 0;  // levels with >= 2 components but no
                                        // critical distance <= r + 1e-6
  int errors = 0;

  Json to_json() const;
  std::string to_json_string() const;  // deterministic bytes
  std::string to_csv() const;          // instance_id,lcd,cr,margin
};

// Hull of `npoints` seeded-uniform points in the unit ball; degenerate draws
// (hull smaller than dim+1 vertices, adjacent facet normals closer than 1e-6)
// are rejected and redrawn deterministically.
ConvexPolytope random_polytope(int dim, int npoints, std::uint64_t seed);

// Uniform boundary point: facet chosen by surface measure, then uniform on a
// measure-weighted simplex of the facet's triangulation.
Vec random_boundary_point(const ConvexPolytope& k, std::uint64_t seed);

Report verify_campaign(const CampaignConfig& cfg);

}  // namespace convexcr
