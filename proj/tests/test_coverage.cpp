#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "coverage/coverage.h"

using namespace skypick;
using namespace skypick::coverage;

namespace {

ConvexRegion rect(double w, double h) {
  return ConvexRegion::create({Vec2(0, 0), Vec2(w, 0), Vec2(w, h), Vec2(0, h)}).value();
}

// Independent coverage check: a ground point counts as seen when some sampled
// point of the flown polyline puts it inside the square camera footprint.
double covered_fraction(const ConvexRegion& region, const SweepPlan& plan, double altitude,
                        double fov, double cell) {
  const double hw = altitude * std::tan(fov / 2.0);

  std::vector<Vec2> path;
  for (size_t i = 0; i + 1 < plan.waypoints.size(); ++i) {
    const Vec2 a = plan.waypoints[i].head<2>();
    const Vec2 b = plan.waypoints[i + 1].head<2>();
    for (int s = 0; s <= 200; ++s) {
      path.push_back(a + (b - a) * (s / 200.0));
    }
  }
  if (path.empty() && !plan.waypoints.empty()) {
    path.push_back(plan.waypoints[0].head<2>());
  }

  double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
  for (const Vec2& v : region.vertices()) {
    xmin = std::min(xmin, v.x());
    xmax = std::max(xmax, v.x());
    ymin = std::min(ymin, v.y());
    ymax = std::max(ymax, v.y());
  }

  long long total = 0;
  long long seen = 0;
  for (double y = ymin + cell / 2; y < ymax; y += cell) {
    for (double x = xmin + cell / 2; x < xmax; x += cell) {
      if (!region.contains(Vec2(x, y))) continue;
      ++total;
      for (const Vec2& p : path) {
        if (std::abs(p.x() - x) <= hw && std::abs(p.y() - y) <= hw) {
          ++seen;
          break;
        }
      }
    }
  }
  return total == 0 ? 0.0 : static_cast<double>(seen) / total;
}

}  // namespace

TEST_CASE("convex region construction validates its input") {
  CHECK(ConvexRegion::create({Vec2(0, 0), Vec2(1, 0)}).error() == Err::ConfigInvalid);
  // Clockwise winding.
  CHECK(ConvexRegion::create({Vec2(0, 0), Vec2(0, 1), Vec2(1, 1), Vec2(1, 0)}).error() ==
        Err::ConfigInvalid);
  // Reflex corner.
  CHECK(ConvexRegion::create({Vec2(0, 0), Vec2(4, 0), Vec2(4, 4), Vec2(2, 1), Vec2(0, 4)})
            .error() == Err::ConfigInvalid);
  // Collinear, no area.
  CHECK(ConvexRegion::create({Vec2(0, 0), Vec2(1, 0), Vec2(2, 0)}).error() ==
        Err::ConfigInvalid);

  const auto tri = ConvexRegion::create({Vec2(0, 0), Vec2(4, 0), Vec2(0, 3)});
  REQUIRE(tri.has_value());
  CHECK(tri.value().area() == doctest::Approx(6.0));
}

TEST_CASE("convex region containment") {
  const ConvexRegion r = rect(40, 30);
  CHECK(r.area() == doctest::Approx(1200.0));
  CHECK(r.contains(Vec2(20, 15)));
  CHECK(r.contains(Vec2(0, 0)));  // boundary counts
  CHECK(r.contains(Vec2(40, 30)));
  CHECK_FALSE(r.contains(Vec2(40.1, 15)));
  CHECK_FALSE(r.contains(Vec2(-0.1, 15)));
  CHECK_FALSE(r.contains(Vec2(20, 30.001)));
}

TEST_CASE("rotated_chord slices the region") {
  const ConvexRegion r = rect(40, 30);
  const auto chord = r.rotated_chord(0.0, 15.0);
  REQUIRE(chord.has_value());
  CHECK(chord->first == doctest::Approx(0.0));
  CHECK(chord->second == doctest::Approx(40.0));
  CHECK_FALSE(r.rotated_chord(0.0, 31.0).has_value());

  // Rotating by -90 degrees sends x to -y, so the rect sits at y in [-40, 0]
  // and the chord across it spans the original y extent.
  CHECK_FALSE(r.rotated_chord(M_PI / 2.0, 10.0).has_value());
  const auto vert = r.rotated_chord(M_PI / 2.0, -10.0);
  REQUIRE(vert.has_value());
  CHECK(vert->second - vert->first == doctest::Approx(30.0));
}

TEST_CASE("max_sweep_distance spot values") {
  CHECK(max_sweep_distance(10.0, M_PI / 2.0, 0.5) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(std::abs(max_sweep_distance(10.0, M_PI / 2.0, 1.0)) < 1e-12);
  CHECK(max_sweep_distance(5.0, M_PI / 3.0, 0.0) ==
        doctest::Approx(10.0 / std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("camera_footprint is a square under the camera") {
  const FootprintSquare f = camera_footprint(Vec3(3, 4, 10), M_PI / 2.0);
  CHECK(f.center.x() == doctest::Approx(3.0));
  CHECK(f.center.y() == doctest::Approx(4.0));
  CHECK(f.half_width == doctest::Approx(10.0));
}

TEST_CASE("plan_sweep rejects full overlap") {
  SweepParams p;
  p.overlap = 1.0;
  CHECK(plan_sweep(rect(10, 10), p).error() == Err::DegenerateSpacing);
}

TEST_CASE("plan_sweep produces an in-region zig-zag at altitude") {
  const ConvexRegion region = rect(40, 30);
  SweepParams p;
  p.altitude = 7.5;
  p.fov = M_PI / 2.0;
  p.overlap = 0.2;
  const auto plan = plan_sweep(region, p);
  REQUIRE(plan.has_value());
  const SweepPlan& s = plan.value();

  CHECK(s.line_spacing <= max_sweep_distance(7.5, M_PI / 2.0, 0.2) + 1e-9);
  CHECK(s.line_spacing > 0.0);
  REQUIRE(s.waypoints.size() >= 4);
  CHECK(s.waypoints.size() % 2 == 0);
  for (const Vec3& wp : s.waypoints) {
    CHECK(wp.z() == doctest::Approx(7.5));
    CHECK(region.contains(wp.head<2>(), 1e-6));
  }
  // Default heading follows the longest edge, here the x axis.
  CHECK(std::abs(std::sin(s.heading)) < 1e-9);

  // Consecutive lines run in opposite directions.
  for (size_t i = 0; i + 3 < s.waypoints.size(); i += 2) {
    const Vec2 d0 = (s.waypoints[i + 1] - s.waypoints[i]).head<2>();
    const Vec2 d1 = (s.waypoints[i + 3] - s.waypoints[i + 2]).head<2>();
    CHECK(d0.dot(d1) < 0.0);
  }
}

TEST_CASE("plan_sweep covers the region it was asked to sweep") {
  const ConvexRegion region = rect(40, 30);
  SweepParams p;
  p.altitude = 7.5;
  p.fov = M_PI / 2.0;
  p.overlap = 0.2;
  const auto plan = plan_sweep(region, p);
  REQUIRE(plan.has_value());
  CHECK(covered_fraction(region, plan.value(), p.altitude, p.fov, 0.25) >= 0.99);
}

TEST_CASE("plan_sweep honors an explicit heading") {
  const ConvexRegion region = rect(40, 30);
  SweepParams p;
  p.altitude = 7.5;
  p.overlap = 0.2;
  p.heading = M_PI / 2.0;
  const auto plan = plan_sweep(region, p);
  REQUIRE(plan.has_value());
  CHECK(plan.value().heading == doctest::Approx(M_PI / 2.0));
  // Lines along y: each line's two endpoints share x.
  const auto& wps = plan.value().waypoints;
  for (size_t i = 0; i + 1 < wps.size(); i += 2) {
    CHECK(wps[i].x() == doctest::Approx(wps[i + 1].x()).epsilon(1e-9));
  }
  CHECK(covered_fraction(region, plan.value(), p.altitude, p.fov, 0.5) >= 0.99);
}

TEST_CASE("plan_sweep works on non-rectangular regions") {
  const auto region =
      ConvexRegion::create({Vec2(0, 0), Vec2(30, 5), Vec2(25, 28), Vec2(3, 22)});
  REQUIRE(region.has_value());
  SweepParams p;
  p.altitude = 6.0;
  p.overlap = 0.3;
  const auto plan = plan_sweep(region.value(), p);
  REQUIRE(plan.has_value());
  for (const Vec3& wp : plan.value().waypoints) {
    CHECK(region.value().contains(wp.head<2>(), 1e-6));
  }
  CHECK(covered_fraction(region.value(), plan.value(), p.altitude, p.fov, 0.5) >= 0.99);
}

TEST_CASE("plan_to_csv lists one waypoint per row") {
  SweepPlan plan;
  plan.waypoints = {Vec3(0, 1, 2), Vec3(3, 4, 5)};
  const std::string csv = plan_to_csv(plan);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "x,y,z");
  int rows = 0;
  while (std::getline(in, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
}
