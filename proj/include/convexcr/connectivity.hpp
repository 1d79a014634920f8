#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "convexcr/body.hpp"

namespace convexcr {

// S_r(O) ∩ K in 2D as angular intervals at O. Starts are normalized to
// [0, 2pi); ends satisfy end >= start after unwrapping (a full circle is the
// single arc [0, 2pi]).
struct ArcSet {
  double radius = 0.0;
  std::vector<std::pair<double, double>> arcs;
  int component_count = 0;
};

struct SamplingParams {
  // 0 means per-dimension default: 16384 in 2D, 4096 in 3D, 16384 in 4D.
  int samples_per_sphere = 0;
  double adjacency_factor = 2.5;
  std::uint64_t seed = 0;

  int resolved_samples(int dim) const;
};

enum class LevelMethod { kExact2d, kSampled };

struct ComponentReport {
  double radius = 0.0;
  LevelMethod method = LevelMethod::kSampled;
  int component_count = 0;
  std::vector<Vec> representative_points;  // one per component
  long sample_count_in_k = -1;             // sampled method only
};

enum class CrStatus { kDisconnectsAt, kNeverDisconnectsWithinCap };

struct CrEstimate {
  double value = 0.0;
  CrStatus status = CrStatus::kNeverDisconnectsWithinCap;
  std::optional<double> first_disconnection_radius;
  double search_cap = 0.0;
  double resolution = 0.0;
};

// Exact 2D level set: circle/edge crossings sorted by angle, intervals
// classified by midpoint containment, adjacent in-intervals merged.
ArcSet level_arcs_2d(const ConvexBody& k, const Vec& o, double r,
                     double tol = kDefaultTol);

// Near-uniform points on the sphere S_r(O): rotated equal angles in 2D,
// Fibonacci spiral in 3D, seeded unit directions in 4D.
std::vector<Vec> sphere_samples(int dim, const Vec& o, double r,
                                const SamplingParams& params);

// Union-find connectivity oracle: samples kept in K, linked below
// adjacency_factor times the expected nearest-neighbor spacing.
ComponentReport level_components_sampled(const ConvexBody& k, const Vec& o, double r,
                                         const SamplingParams& params,
                                         double tol = kDefaultTol);

// Exact-or-sampled dispatch used by the radius sweeps.
int level_component_count(const ConvexBody& k, const Vec& o, double r,
                          const SamplingParams& params, double tol = kDefaultTol);

// Radii where the level-set combinatorics can change: distances from O to
// every face's perpendicular foot that lies on the face (vertex distances are
// the 0-face case, critical distances are the feet that pass criticality).
std::vector<double> event_radii(const ConvexBody& k, const Vec& o,
                                double tol = kDefaultTol);

// First radius at which the level set disconnects, or the search cap if none
// does. In 2D the inter-event intervals are classified exactly and the value
// snaps to the event radius; in higher dimensions the sampled oracle probes
// the same event set and refines by bisection to `resolution`.
CrEstimate connectivity_radius(const ConvexBody& k, const Vec& o, double resolution,
                               const SamplingParams& params, double tol = kDefaultTol);

// CSV rows "radius,method,component_count" for plot tooling.
std::string components_csv(const std::vector<ComponentReport>& reports);

}  // namespace convexcr
