#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "convexcr/flow.hpp"
#include "convexcr/harness.hpp"
#include "convexcr/rng.hpp"

using namespace convexcr;

namespace {

ConvexBody unit_square() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{1, 0}, Vec{1, 1}, Vec{0, 1}}));
}

ConvexBody triangle() {
  return ConvexBody(build_polytope({Vec{0, 0}, Vec{4, 0}, Vec{1, 3}}));
}

// Component count of a finite point set at radius r about O, linking pairs
// closer than the adjacency rule scaled to that radius.
int cluster_count(const std::vector<Vec>& pts, double r, int n_samples,
                  double factor = 2.5) {
  if (pts.empty()) return 0;
  double threshold = factor * r * 2.0 * M_PI / n_samples;
  std::vector<int> parent(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (distance(pts[i], pts[j]) < threshold) parent[find(int(j))] = find(int(i));
  int count = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (find(int(i)) == int(i)) ++count;
  return count;
}

}  // namespace

TEST_CASE("radial witness on the square") {
  ConvexBody k = unit_square();
  Vec o{0, 0};

  WitnessDirection w = radial_witness(k, o, Vec{0.5, 0});
  CHECK(distance(w.direction, Vec{1, 0}) < 1e-12);  // lexicographic tie-break
  CHECK(w.radial_component == doctest::Approx(1.0));

  CHECK_THROWS_WITH_AS(radial_witness(k, o, Vec{1, 0}),
                       doctest::Contains("NoWitness"), Error);
  CHECK_THROWS_WITH_AS(radial_witness(k, o, Vec{0, 0}),
                       doctest::Contains("PointIsO"), Error);
}

TEST_CASE("radial witness on the disk") {
  ConvexBody disk(Ball{Vec{0, 0}, 1.0});
  Vec o{-1, 0};
  WitnessDirection w = radial_witness(disk, o, Vec{0, 1});
  CHECK(w.radial_component > 0.0);
  CHECK(w.direction[0] > 0.0);  // toward the (1,0) side
  // the witness segment stays in K for a positive parameter range
  for (double t : {0.0, 0.1, 0.3})
    CHECK(contains(disk, Vec{0, 1} + w.direction * t, 1e-9));
}

TEST_CASE("witness validity on random bodies and levels") {
  for (int trial = 0; trial < 12; ++trial) {
    int dim = 2 + trial % 2;
    ConvexPolytope poly = random_polytope(dim, 15, 4200 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 4300 + trial);
    double lcd_v = lcd(k, o).value;
    SamplingParams p;
    p.samples_per_sphere = 512;
    p.seed = trial;
    for (const Vec& x : sample_level(k, o, 0.7 * lcd_v, 64, p)) {
      WitnessDirection w = radial_witness(k, o, x);
      CHECK(dot(x - o, w.direction) > 0.0);
      CHECK(w.radial_component > 0.0);
      auto f = flow_direction(k, o, x);
      REQUIRE(f.has_value());
      CHECK(dot(x - o, f->direction) > 0.0);
      CHECK(contains(k, x + f->direction * 1e-7, 1e-6));
    }
  }
}

TEST_CASE("push three square level points to radius 0.6") {
  ConvexBody k = unit_square();
  Vec o{0, 0};
  std::vector<Vec> pts{Vec{0.5, 0}, Vec{0, 0.5}, Vec{0.353553, 0.353553}};
  // inputs share radius 0.5 up to 1e-6; widen the tolerance accordingly
  std::vector<Vec> out = push_level(k, o, pts, 0.6, 1e-5);
  REQUIRE(out.size() == 3);
  for (const Vec& q : out) {
    CHECK(distance(q, o) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(contains(k, q, 1e-9));
  }
  CHECK(distance(out[0], Vec{0.6, 0}) < 1e-9);
  CHECK(distance(out[1], Vec{0, 0.6}) < 1e-9);
}

TEST_CASE("zero push returns the input unchanged") {
  ConvexBody k = triangle();
  Vec o{0, 0};
  std::vector<Vec> pts = sample_level(k, o, 1.5, 16);
  std::vector<Vec> out = push_level(k, o, pts, 1.5);
  REQUIRE(out.size() == pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) CHECK(out[i] == pts[i]);
}

TEST_CASE("push rejects mixed radii and backward targets") {
  ConvexBody k = unit_square();
  Vec o{0, 0};
  CHECK_THROWS_WITH_AS(push_level(k, o, {Vec{0.5, 0}, Vec{0, 0.9}}, 0.95),
                       doctest::Contains("NonuniformRadius"), Error);
  CHECK_THROWS_WITH_AS(push_level(k, o, {Vec{0.5, 0}}, 0.25),
                       doctest::Contains("BadRadius"), Error);
  CHECK_THROWS_WITH_AS(push_level(k, o, {Vec{0.5, 0}}, 5.0),
                       doctest::Contains("BadRadius"), Error);
}

TEST_CASE("pushing the triangle level across the altitude radius stalls") {
  ConvexBody k = triangle();
  Vec o{0, 0};
  std::vector<Vec> pts = sample_level(k, o, 2.8, 256);
  REQUIRE(pts.size() == 256);
  try {
    push_level(k, o, pts, 3.0);
    FAIL("expected StalledAtCritical");
  } catch (const StalledAtCritical& e) {
    REQUIRE_FALSE(e.records().empty());
    for (const StallRecord& rec : e.records()) {
      // stalled trajectories are the ones funneled toward the foot (2,2)
      CHECK(rec.blocking_critical_distance == doctest::Approx(2.0 * std::sqrt(2.0)));
      Vec loc(rec.location);
      double angle = std::atan2(loc[1], loc[0]);
      CHECK(std::abs(angle - M_PI / 4.0) < 0.02);
    }
  }
}

TEST_CASE("push preserves containment and monotone radii along traces") {
  ConvexBody k = triangle();
  Vec o{0, 0};
  std::vector<Vec> pts = sample_level(k, o, 1.0, 64);
  PushResult res = push_level_traced(k, o, pts, 2.5);
  REQUIRE(res.points.size() == 64);
  REQUIRE(res.trajectories.size() == 64);
  for (const auto& traj : res.trajectories) {
    double prev = 0.0;
    for (const Vec& q : traj) {
      CHECK(contains(k, q, 1e-9));
      double rho = distance(q, o);
      CHECK(rho >= prev - 1e-12);
      prev = rho;
    }
    CHECK(prev == doctest::Approx(2.5));
  }
}

TEST_CASE("connectivity is preserved below the least critical distance") {
  ConvexBody k = triangle();
  Vec o{0, 0};
  const int n = 256;
  std::vector<Vec> pts = sample_level(k, o, 2.0, n);
  CHECK(cluster_count(pts, 2.0, n) == 1);
  std::vector<Vec> out = push_level(k, o, pts, 2.7);
  REQUIRE(out.size() == pts.size());
  for (const Vec& q : out) {
    CHECK(contains(k, q, 1e-9));
    CHECK(std::abs(distance(q, o) - 2.7) <= 1e-9);
  }
  CHECK(cluster_count(out, 2.7, n) == 1);
}

TEST_CASE("connectivity preservation on random polygons") {
  for (int trial = 0; trial < 10; ++trial) {
    ConvexPolytope poly = random_polytope(2, 20, 5100 + trial);
    ConvexBody k(poly);
    Vec o = random_boundary_point(poly, 5200 + trial);
    double lcd_v = lcd(k, o).value;
    const int n = 128;
    std::vector<Vec> pts = sample_level(k, o, 0.5 * lcd_v, n);
    if (pts.size() < 8) continue;
    std::vector<Vec> out = push_level(k, o, pts, 0.95 * lcd_v);
    CHECK(cluster_count(out, 0.95 * lcd_v, n) == 1);
    for (const Vec& q : out) CHECK(contains(k, q, 1e-9));
  }
}

TEST_CASE("ball pushes slide along the boundary sphere") {
  ConvexBody disk(Ball{Vec{0, 0}, 1.0});
  Vec o{-1, 0};
  // boundary point at radius sqrt(2) from O, pushed to radius 1.9
  std::vector<Vec> pts{Vec{0, 1}, Vec{0, -1}};
  std::vector<Vec> out = push_level(disk, o, pts, 1.9);
  REQUIRE(out.size() == 2);
  for (const Vec& q : out) {
    CHECK(distance(q, o) == doctest::Approx(1.9));
    CHECK(contains(disk, q, 1e-9));
    CHECK(std::abs(distance(q, Vec{0, 0}) - 1.0) < 1e-9);  // still on the sphere
  }
  // pushing all the way to the cap funnels into the antipode and stalls
  CHECK_THROWS_AS(push_level(disk, o, pts, 2.0), StalledAtCritical);
}

TEST_CASE("interior ball points move radially then slide") {
  ConvexBody ball(Ball{Vec{0, 0, 0}, 1.0});
  Vec o{0, 0, -1};
  SamplingParams p;
  p.samples_per_sphere = 4096;
  p.seed = 3;
  std::vector<Vec> pts = sample_level(ball, o, 0.5, 4096, p);
  REQUIRE(pts.size() > 100);
  std::vector<Vec> out = push_level(ball, o, pts, 1.5);
  for (const Vec& q : out) {
    CHECK(distance(q, o) == doctest::Approx(1.5));
    CHECK(contains(ball, q, 1e-9));
  }
}
