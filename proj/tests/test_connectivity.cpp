#include <doctest.h>

#include <cmath>

#include "convexcr/connectivity.hpp"
#include "convexcr/criticality.hpp"
#include "convexcr/harness.hpp"
#include "convexcr/rng.hpp"
#include "oracles.hpp"

using namespace convexcr;

namespace {

ConvexBody triangle() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{4, 0}, Vec{1, 3}}));
}

ConvexBody unit_square() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}}));
}

ConvexBody prism() {
  return ConvexBody(build_polytope({Vec{0, 0, 0}, Vec{4, 0, 0}, Vec{1, 3, 0},
                                    Vec{0, 0, 0.2}, Vec{4, 0, 0.2}, Vec{1, 3, 0.2}}));
}

Vec circle_point(const Vec& o, double r, double theta) {
  return Vec{o[0] + r * std::cos(theta), o[1] + r * std::sin(theta)};
}

}  // namespace

TEST_CASE("triangle level arcs at r=2, r=3, r=5") {
  ConvexBody k = triangle();
  Vec o{0, 0};

  ArcSet a2 = level_arcs_2d(k, o, 2.0);
  CHECK(a2.component_count == 1);
  REQUIRE(a2.arcs.size() == 1);
  CHECK(a2.arcs[0].first == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a2.arcs[0].second == doctest::Approx(std::atan2(3.0, 1.0)));

  ArcSet a3 = level_arcs_2d(k, o, 3.0);
  CHECK(a3.component_count == 2);
  REQUIRE(a3.arcs.size() == 2);
  // circle-line crossings with x+y=4 at x = 2 ± sqrt(2)/2
  double x1 = 2.0 + std::sqrt(2.0) / 2.0;
  CHECK(a3.arcs[0].first == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(a3.arcs[0].second == doctest::Approx(std::atan2(4.0 - x1, x1)));
  double x2 = 2.0 - std::sqrt(2.0) / 2.0;
  CHECK(a3.arcs[1].first == doctest::Approx(std::atan2(4.0 - x2, x2)));
  CHECK(a3.arcs[1].second == doctest::Approx(std::atan2(3.0, 1.0)));

  ArcSet a5 = level_arcs_2d(k, o, 5.0);
  CHECK(a5.component_count == 0);
  CHECK(a5.arcs.empty());

  CHECK_THROWS_AS(level_arcs_2d(k, o, -1.0), Error);
  CHECK_THROWS_AS(level_arcs_2d(k, o, 0.0), Error);
}

TEST_CASE("arc counts match the dense angular scan oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 12; ++trial) {
    ConvexPolytope poly = random_polytope(2, 20, 900 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 950 + trial);
    double cap = max_distance(k, o);
    for (int t = 0; t < 8; ++t) {
      double r = cap * (0.05 + 0.9 * rng.uniform01());
      int exact = level_arcs_2d(k, o, r).component_count;
      int scan = oracle::arc_components_scan(k, o, r);
      CHECK(exact == scan);
    }
  }
}

TEST_CASE("arc invariants: midpoints inside, just-beyond-endpoints outside") {
  Rng rng(77);
  for (int trial = 0; trial < 8; ++trial) {
    ConvexPolytope poly = random_polytope(2, 16, 1200 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 1250 + trial);
    double cap = max_distance(k, o);
    for (int t = 0; t < 6; ++t) {
      double r = cap * (0.05 + 0.9 * rng.uniform01());
      ArcSet a = level_arcs_2d(k, o, r);
      for (std::size_t i = 0; i < a.arcs.size(); ++i) {
        auto [s, e] = a.arcs[i];
        CHECK(contains(k, circle_point(o, r, 0.5 * (s + e)), 1e-9));
        if (e - s < 2 * M_PI - 1e-9) {
          CHECK_FALSE(contains(k, circle_point(o, r, s - 1e-6), 1e-9));
          CHECK_FALSE(contains(k, circle_point(o, r, e + 1e-6), 1e-9));
        }
        // pairwise disjoint after normalization
        for (std::size_t j = i + 1; j < a.arcs.size(); ++j)
          CHECK(a.arcs[j].first > e + 1e-12);
      }
    }
  }
}

TEST_CASE("disk level arcs") {
  ConvexBody disk(Ball{Vec{0, 0}, 1.0});
  Vec o{-1, 0};
  ArcSet a = level_arcs_2d(disk, o, 1.0);
  CHECK(a.component_count == 1);
  REQUIRE(a.arcs.size() == 1);
  // half-angle acos(r/2R) = pi/3 about the direction of the center
  CHECK(a.arcs[0].second - a.arcs[0].first == doctest::Approx(2.0 * M_PI / 3.0));

  CHECK(level_arcs_2d(disk, o, 2.5).component_count == 0);
  // tangency at the cap radius: the level is the antipode alone
  CHECK(level_arcs_2d(disk, o, 2.0).component_count == 1);
}

TEST_CASE("square corner never disconnects; full-circle level inside a big body") {
  ConvexBody k = unit_square();
  Vec o{0, 0};
  CHECK(level_arcs_2d(k, o, 0.5).component_count == 1);
  CHECK(level_arcs_2d(k, o, 1.2).component_count == 1);
  CHECK(level_arcs_2d(k, o, 2.0).component_count == 0);

  // O interior of an edge of a large square: small circles give one arc
  ConvexBody big(build_polytope({Vec{-5, 0}, Vec{5, 0}, Vec{5, 10}, Vec{-5, 10}}));
  CHECK(level_arcs_2d(big, Vec{0, 0}, 1.0).component_count == 1);
}

TEST_CASE("sampled components: 3-ball cap is one region") {
  ConvexBody ball(Ball{Vec{0, 0, 0}, 1.0});
  Vec o{0, 0, -1};
  SamplingParams p;
  p.seed = 5;
  ComponentReport rep = level_components_sampled(ball, o, 1.0, p);
  CHECK(rep.component_count == 1);
  CHECK(rep.sample_count_in_k > 0);
  CHECK(static_cast<int>(rep.representative_points.size()) == rep.component_count);
  for (const Vec& x : rep.representative_points) {
    CHECK(contains(ball, x, 1e-9));
    CHECK(distance(x, o) == doctest::Approx(1.0));
  }
}

TEST_CASE("sampled components: thin prism splits at r=3 like the planar case") {
  ConvexBody k = prism();
  SamplingParams p;
  p.samples_per_sphere = 16384;
  p.seed = 9;
  ComponentReport rep = level_components_sampled(k, Vec{0, 0, 0}, 3.0, p);
  CHECK(rep.component_count == 2);
}

TEST_CASE("sampled components: empty level beyond the cap") {
  ConvexBody k = unit_square();
  SamplingParams p;
  p.seed = 11;
  ComponentReport rep = level_components_sampled(k, Vec{0, 0}, 2.0, p);
  CHECK(rep.component_count == 0);
  CHECK(rep.sample_count_in_k == 0);
  CHECK(rep.representative_points.empty());
}

TEST_CASE("sampled oracle agrees with exact arcs on random polygons") {
  Rng rng(13);
  long total = 0, agree = 0;
  for (int trial = 0; trial < 10; ++trial) {
    ConvexPolytope poly = random_polytope(2, 20, 1500 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 1550 + trial);
    double cap = max_distance(k, o);
    SamplingParams p;
    p.seed = mix_seed(17, trial);
    for (int t = 0; t < 20; ++t) {
      double r = cap * (0.02 + 0.96 * rng.uniform01());
      int exact = level_arcs_2d(k, o, r).component_count;
      int sampled = level_components_sampled(k, o, r, p).component_count;
      ++total;
      if (exact == sampled) ++agree;
    }
  }
  CHECK(static_cast<double>(agree) / total >= 0.99);
}

TEST_CASE("event radii contain vertex distances, feet, and critical distances") {
  ConvexBody k = triangle();
  Vec o{0, 0};
  auto events = event_radii(k, o);
  auto has = [&](double v) {
    for (double e : events)
      if (std::abs(e - v) < 1e-9) return true;
    return false;
  };
  CHECK(has(2.0 * std::sqrt(2.0)));  // foot of the altitude (critical)
  CHECK(has(std::sqrt(10.0)));       // vertex (1,3)
  CHECK(has(4.0));                   // vertex (4,0) = cap
  CHECK(std::is_sorted(events.begin(), events.end()));
  CHECK(events.back() == doctest::Approx(4.0));
}

TEST_CASE("connectivity radius: triangle disconnects exactly at the altitude foot") {
  ConvexBody k = triangle();
  SamplingParams p;
  CrEstimate est = connectivity_radius(k, Vec{0, 0}, 1e-4, p);
  CHECK(est.status == CrStatus::kDisconnectsAt);
  CHECK(est.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-9));
  REQUIRE(est.first_disconnection_radius.has_value());
  CHECK(*est.first_disconnection_radius == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(est.search_cap == doctest::Approx(4.0));

  // the +/- resolution invariant around the disconnection radius
  double fdr = *est.first_disconnection_radius;
  CHECK(level_arcs_2d(k, Vec{0, 0}, fdr + 1e-4).component_count >= 2);
  CHECK(level_arcs_2d(k, Vec{0, 0}, fdr - 1e-4).component_count == 1);
}

TEST_CASE("connectivity radius: triangle from a side-interior point") {
  ConvexBody k = triangle();
  SamplingParams p;
  CrEstimate est = connectivity_radius(k, Vec{2, 0}, 1e-4, p);
  CHECK(est.status == CrStatus::kDisconnectsAt);
  CHECK(est.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("connectivity radius: square corner and disk never disconnect") {
  SamplingParams p;
  CrEstimate sq = connectivity_radius(unit_square(), Vec{0, 0}, 1e-5, p);
  CHECK(sq.status == CrStatus::kNeverDisconnectsWithinCap);
  CHECK(sq.value == doctest::Approx(std::sqrt(2.0)));
  CHECK_FALSE(sq.first_disconnection_radius.has_value());

  ConvexBody disk(Ball{Vec{0, 0}, 1.0});
  CrEstimate dk = connectivity_radius(disk, Vec{-1, 0}, 1e-4, p);
  CHECK(dk.status == CrStatus::kNeverDisconnectsWithinCap);
  CHECK(dk.value == doctest::Approx(2.0));
  CHECK(dk.search_cap == doctest::Approx(2.0));
}

TEST_CASE("connectivity radius: sampled 3D prism matches the planar answer") {
  ConvexBody k = prism();
  SamplingParams p;
  p.samples_per_sphere = 16384;
  p.seed = 21;
  CrEstimate est = connectivity_radius(k, Vec{0, 0, 0}, 5e-4, p);
  CHECK(est.status == CrStatus::kDisconnectsAt);
  // sampled estimate may sit above the true radius by a sampling-scale slack
  CHECK(est.value == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(5e-3));
}

TEST_CASE("connectivity radius rejects too-coarse resolutions") {
  SamplingParams p;
  CHECK_THROWS_AS(connectivity_radius(unit_square(), Vec{0, 0}, 0.5, p), Error);
  CHECK_THROWS_AS(connectivity_radius(unit_square(), Vec{0, 0}, -1.0, p), Error);
}

TEST_CASE("theorem margin and sub-LCD connectivity on random polygons") {
  Rng rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    ConvexPolytope poly = random_polytope(2, 20, 2100 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 2150 + trial);
    double lcd_v = lcd(k, o).value;
    SamplingParams p;
    CrEstimate est = connectivity_radius(k, o, 1e-4 * poly.diameter(), p);
    CHECK(est.value >= lcd_v - 1e-6);

    // 20 radii strictly below LCD: always a single component
    for (int t = 0; t < 20; ++t) {
      double r = (lcd_v - 1e-6) * (0.05 + 0.95 * rng.uniform01());
      CHECK(level_arcs_2d(k, o, r).component_count == 1);
    }
  }
}

TEST_CASE("2D disconnected levels always see a critical distance at most r") {
  for (int trial = 0; trial < 15; ++trial) {
    ConvexPolytope poly = random_polytope(2, 20, 2600 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 2650 + trial);
    double min_crit = lcd(k, o).value;
    auto events = event_radii(k, o);
    double prev = 0.0;
    for (double e : events) {
      double mid = 0.5 * (prev + e);
      if (mid > 0.0 && level_arcs_2d(k, o, mid).component_count >= 2)
        CHECK(min_crit <= mid + 1e-6);
      prev = e;
    }
  }
}

TEST_CASE("components CSV emission") {
  ComponentReport a;
  a.radius = 1.5;
  a.method = LevelMethod::kExact2d;
  a.component_count = 2;
  std::string csv = components_csv({a});
  CHECK(csv == "radius,method,component_count\n1.5,exact2d,2\n");
}
