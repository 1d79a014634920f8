#pragma once

#include <optional>
#include <vector>

#include "convexcr/connectivity.hpp"
#include "convexcr/criticality.hpp"

namespace convexcr {

// A direction at a level-set point with positive outward radial component
// whose initial segment stays in K.
struct WitnessDirection {
  Vec base;
  Vec direction;  // unit
  double radial_component = 0.0;
};

// Witness from the support function: the direction from p toward the support
// witness of p - O. Throws NoWitness when p is critical (the supporting
// hyperplane leaves no outward direction) and PointIsO when p coincides
// with O.
WitnessDirection radial_witness(const ConvexBody& k, const Vec& o, const Vec& p,
                                double tol = kDefaultTol);

// Direction actually used by the discrete flow: the radial field projected
// onto the tangent cone of K at p. Empty when p is critical. The magnitude of
// the unnormalized projection equals the radial component of the unit result.
std::optional<WitnessDirection> flow_direction(const ConvexBody& k, const Vec& o,
                                               const Vec& p, double tol = kDefaultTol);

struct PushResult {
  std::vector<Vec> points;                   // input order, radius == r_target
  std::vector<std::vector<Vec>> trajectories;  // per point, start..end, if traced
};

// Move every point outward along the flow to radius r_target. Fails with
// StalledAtCritical when a trajectory reaches a critical point or passes
// within its share of the level (half the input sample spacing, scaled to the
// critical radius) of one; that is the expected outcome when the push range
// covers a critical radius.
std::vector<Vec> push_level(const ConvexBody& k, const Vec& o,
                            const std::vector<Vec>& points, double r_target,
                            double tol = kDefaultTol);

PushResult push_level_traced(const ConvexBody& k, const Vec& o,
                             const std::vector<Vec>& points, double r_target,
                             double tol = kDefaultTol);

// Deterministic sample of the level set S_r(O) ∩ K. In 2D: n points equally
// spaced along the exact arcs. Otherwise: sphere samples filtered by
// containment (at most n points).
std::vector<Vec> sample_level(const ConvexBody& k, const Vec& o, double r, int n,
                              const SamplingParams& params = {},
                              double tol = kDefaultTol);

}  // namespace convexcr
