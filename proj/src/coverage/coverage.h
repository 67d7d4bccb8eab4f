#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/result.h"
#include "core/types.h"

namespace skypick::coverage {

// Convex polygon, counter-clockwise vertices, validated at construction.
class ConvexRegion {
 public:
  // Rejects (ConfigInvalid) fewer than 3 vertices, clockwise winding,
  // reflex corners, or near-zero area.
  static Result<ConvexRegion> create(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  double area() const;
  bool contains(const Vec2& p, double tol = 1e-9) const;

  // Chord of the horizontal line y = c after rotating the region by -theta.
  // Empty when the line misses the region.
  std::optional<std::pair<double, double>> rotated_chord(double theta, double y) const;

 private:
  std::vector<Vec2> vertices_;
};

struct SweepParams {
  double altitude = 5.0;
  double fov = M_PI / 2.0;  // full cone angle of the square footprint
  double overlap = 0.2;     // delta in [0, 1]
  // Direction flown along each sweep line. Defaults to the direction of the
  // region's longest edge, which minimizes the number of turns.
  std::optional<double> heading;
};

struct SweepPlan {
  std::vector<Vec3> waypoints;
  double line_spacing = 0.0;
  double heading = 0.0;
};

// Width of ground covered per pass after removing the requested overlap:
// (1 - overlap) * 2 * altitude * tan(fov / 2).
double max_sweep_distance(double altitude, double fov, double overlap);

// Boustrophedon plan: parallel lines along the heading, spaced at most
// max_sweep_distance apart, clipped to the region, endpoints alternating so
// consecutive waypoints chain into a zig-zag. The first and last lines sit
// within half a spacing of the region's extremal support lines.
// DegenerateSpacing when overlap = 1 collapses the spacing to zero.
Result<SweepPlan> plan_sweep(const ConvexRegion& region, const SweepParams& params);

// Axis-aligned square ground footprint of a straight-down camera.
struct FootprintSquare {
  Vec2 center = Vec2::Zero();
  double half_width = 0.0;
};

FootprintSquare camera_footprint(const Vec3& position, double fov);

// x,y,z per row with a header line.
std::string plan_to_csv(const SweepPlan& plan);

}  // namespace skypick::coverage
