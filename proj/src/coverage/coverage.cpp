#include "coverage/coverage.h"

#include <algorithm>
#include <cmath>

#include "core/format.h"

namespace skypick::coverage {

namespace {
constexpr double kEps = 1e-9;
}

Result<ConvexRegion> ConvexRegion::create(std::vector<Vec2> vertices) {
  using R = Result<ConvexRegion>;
  const size_t n = vertices.size();
  if (n < 3) return R::fail(Err::ConfigInvalid);
  double area2 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  if (area2 <= kEps) return R::fail(Err::ConfigInvalid);  // zero area or clockwise
  for (size_t i = 0; i < n; ++i) {
    const Vec2 e1 = vertices[(i + 1) % n] - vertices[i];
    const Vec2 e2 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
    if (e1.x() * e2.y() - e1.y() * e2.x() < -kEps) return R::fail(Err::ConfigInvalid);
  }
  ConvexRegion r;
  r.vertices_ = std::move(vertices);
  return R::ok(std::move(r));
}

double ConvexRegion::area() const {
  double area2 = 0.0;
  const size_t n = vertices_.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    area2 += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * area2;
}

bool ConvexRegion::contains(const Vec2& p, double tol) const {
  const size_t n = vertices_.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices_[i];
    const Vec2& b = vertices_[(i + 1) % n];
    const Vec2 e = b - a;
    const Vec2 d = p - a;
    if (e.x() * d.y() - e.y() * d.x() < -tol) return false;
  }
  return true;
}

std::optional<std::pair<double, double>> ConvexRegion::rotated_chord(double theta,
                                                                     double y) const {
  const double c = std::cos(-theta);
  const double s = std::sin(-theta);
  const size_t n = vertices_.size();
  double lo = 1e300, hi = -1e300;
  bool any = false;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& p0 = vertices_[i];
    const Vec2& p1 = vertices_[(i + 1) % n];
    const double y0 = s * p0.x() + c * p0.y();
    const double y1 = s * p1.x() + c * p1.y();
    const double x0 = c * p0.x() - s * p0.y();
    const double x1 = c * p1.x() - s * p1.y();
    if ((y0 <= y && y1 >= y) || (y1 <= y && y0 >= y)) {
      double x;
      if (std::abs(y1 - y0) < 1e-15) {
        lo = std::min({lo, x0, x1});
        hi = std::max({hi, x0, x1});
        any = true;
        continue;
      }
      x = x0 + (x1 - x0) * (y - y0) / (y1 - y0);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      any = true;
    }
  }
  if (!any) return std::nullopt;
  return std::make_pair(lo, hi);
}

double max_sweep_distance(double altitude, double fov, double overlap) {
  return (1.0 - overlap) * 2.0 * altitude * std::tan(0.5 * fov);
}

Result<SweepPlan> plan_sweep(const ConvexRegion& region, const SweepParams& params) {
  using R = Result<SweepPlan>;
  const double d_max = max_sweep_distance(params.altitude, params.fov, params.overlap);
  if (d_max <= 1e-12) return R::fail(Err::DegenerateSpacing);

  double heading;
  if (params.heading) {
    heading = *params.heading;
  } else {
    const auto& v = region.vertices();
    double best_len2 = -1.0;
    heading = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
      const Vec2 e = v[(i + 1) % v.size()] - v[i];
      const double len2 = e.squaredNorm();
      if (len2 > best_len2 + 1e-12) {
        best_len2 = len2;
        heading = std::atan2(e.y(), e.x());
      }
    }
  }

  // Extent across the lines, measured in the frame rotated so lines run
  // along +x.
  const double c = std::cos(-heading);
  const double s = std::sin(-heading);
  double ymin = 1e300, ymax = -1e300;
  for (const Vec2& p : region.vertices()) {
    const double y = s * p.x() + c * p.y();
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  const double width = ymax - ymin;
  const int n_lines = static_cast<int>(std::floor(width / d_max)) + 1;
  const double spacing = width / n_lines;

  SweepPlan plan;
  plan.line_spacing = spacing;
  plan.heading = heading;
  const double ch = std::cos(heading);
  const double sh = std::sin(heading);
  for (int i = 0; i < n_lines; ++i) {
    const double y = ymin + spacing * (i + 0.5);
    const auto chord = region.rotated_chord(heading, y);
    if (!chord) continue;  // cannot happen for interior lines of a convex region
    double x_first = chord->first;
    double x_second = chord->second;
    if (i % 2 == 1) std::swap(x_first, x_second);
    for (const double x : {x_first, x_second}) {
      const Vec3 wp(ch * x - sh * y, sh * x + ch * y, params.altitude);
      if (!plan.waypoints.empty() && (plan.waypoints.back() - wp).norm() < 1e-9) continue;
      plan.waypoints.push_back(wp);
    }
  }
  if (plan.waypoints.empty()) return R::fail(Err::DegenerateSpacing);
  return R::ok(std::move(plan));
}

FootprintSquare camera_footprint(const Vec3& position, double fov) {
  FootprintSquare f;
  f.center = Vec2(position.x(), position.y());
  f.half_width = std::max(0.0, position.z()) * std::tan(0.5 * fov);
  return f;
}

std::string plan_to_csv(const SweepPlan& plan) {
  std::string out = "x,y,z\n";
  for (const Vec3& wp : plan.waypoints) {
    out += fmt6(wp.x()) + "," + fmt6(wp.y()) + "," + fmt6(wp.z()) + "\n";
  }
  return out;
}

}  // namespace skypick::coverage
