#include "vision/blob.h"

#include <algorithm>
#include <cmath>
#include <queue>

namespace skypick::vision {

namespace {

struct PixelI {
  int x;
  int y;
};

// Moore boundary trace, 8-neighborhood, clockwise in image coordinates.
// Returns the ordered outer contour of the component containing start, which
// must be its top-left-most pixel.
std::vector<PixelI> trace_contour(const Mask& mask, const std::vector<int32_t>& labels,
                                  int32_t label, PixelI start) {
  static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
  static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
  auto is_set = [&](int x, int y) {
    if (x < 0 || y < 0 || x >= mask.width || y >= mask.height) return false;
    return labels[static_cast<size_t>(y) * mask.width + x] == label;
  };

  std::vector<PixelI> contour;
  contour.push_back(start);
  bool any_neighbor = false;
  for (int i = 0; i < 8; ++i) {
    if (is_set(start.x + dx[i], start.y + dy[i])) any_neighbor = true;
  }
  if (!any_neighbor) return contour;

  PixelI cur = start;
  int backtrack = 4;  // direction from cur back to the previous pixel
  while (true) {
    // Scan clockwise starting just after the backtrack direction.
    for (int i = 1; i <= 8; ++i) {
      const int d = (backtrack + i) % 8;
      const int nx = cur.x + dx[d];
      const int ny = cur.y + dy[d];
      if (is_set(nx, ny)) {
        cur = {nx, ny};
        backtrack = (d + 4) % 8;
        contour.push_back(cur);
        break;
      }
    }
    if (cur.x == start.x && cur.y == start.y && contour.size() > 2) {
      contour.pop_back();
      break;
    }
    if (contour.size() > static_cast<size_t>(4 * mask.width * mask.height)) break;
  }
  return contour;
}

double contour_perimeter(const std::vector<PixelI>& c) {
  if (c.size() < 2) return 0.0;
  double p = 0.0;
  for (size_t i = 0; i < c.size(); ++i) {
    const PixelI& a = c[i];
    const PixelI& b = c[(i + 1) % c.size()];
    const int ddx = std::abs(a.x - b.x);
    const int ddy = std::abs(a.y - b.y);
    p += (ddx + ddy == 2 && ddx == 1) ? M_SQRT2 : 1.0;
  }
  return p;
}

// Andrew monotone chain on integer points.
std::vector<PixelI> convex_hull(std::vector<PixelI> pts) {
  std::sort(pts.begin(), pts.end(), [](const PixelI& a, const PixelI& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const PixelI& a, const PixelI& b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  auto cross = [](const PixelI& o, const PixelI& a, const PixelI& b) {
    return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long long>(a.y - o.y) * (b.x - o.x);
  };
  std::vector<PixelI> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const size_t lower = k + 1;
  for (size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

std::vector<Blob> extract_blobs(const Mask& mask, int min_area) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<int32_t> labels(static_cast<size_t>(w) * h, 0);
  std::vector<Blob> blobs;
  int32_t next_label = 1;

  std::vector<PixelI> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const size_t idx = static_cast<size_t>(y) * w + x;
      if (!mask.data[idx] || labels[idx]) continue;
      const int32_t label = next_label++;
      stack.clear();
      stack.push_back({x, y});
      labels[idx] = label;
      long long count = 0;
      double sx = 0.0, sy = 0.0;
      std::vector<PixelI> members;
      while (!stack.empty()) {
        const PixelI p = stack.back();
        stack.pop_back();
        ++count;
        sx += p.x;
        sy += p.y;
        members.push_back(p);
        for (int ddy = -1; ddy <= 1; ++ddy) {
          for (int ddx = -1; ddx <= 1; ++ddx) {
            if (!ddx && !ddy) continue;
            const int nx = p.x + ddx;
            const int ny = p.y + ddy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            const size_t nidx = static_cast<size_t>(ny) * w + nx;
            if (mask.data[nidx] && !labels[nidx]) {
              labels[nidx] = label;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      if (count < min_area) continue;

      Blob b;
      b.area = static_cast<double>(count);
      b.centroid = {sx / count + 0.5, sy / count + 0.5};

      const auto contour = trace_contour(mask, labels, label, {x, y});
      // Center-line trace underestimates the silhouette boundary by about one
      // pixel ring; the isoperimetric floor keeps circularity at most 1.
      const double traced = contour_perimeter(contour);
      const double perimeter = std::max(traced + M_PI, 2.0 * std::sqrt(M_PI * b.area));
      b.circularity = 4.0 * M_PI * b.area / (perimeter * perimeter);

      const auto hull = contour.size() >= 3 ? convex_hull(contour) : contour;
      PixelI best_a = contour.front();
      PixelI best_b = contour.front();
      long long best_d2 = -1;
      for (size_t i = 0; i < hull.size(); ++i) {
        for (size_t j = i + 1; j < hull.size(); ++j) {
          const long long ddx = hull[i].x - hull[j].x;
          const long long ddy = hull[i].y - hull[j].y;
          const long long d2 = ddx * ddx + ddy * ddy;
          if (d2 > best_d2) {
            best_d2 = d2;
            best_a = hull[i];
            best_b = hull[j];
          }
        }
      }
      // Endpoint order fixed by (y, x) so output does not depend on hull order.
      if (best_b.y < best_a.y || (best_b.y == best_a.y && best_b.x < best_a.x)) {
        std::swap(best_a, best_b);
      }
      // The farthest center pair gives a stable direction but its length is
      // quantized to the pixel grid (up to a pixel of bias on a disc rim).
      // The pixel count is not: for a filled disc the equivalent diameter
      // 2*sqrt(area/pi) is accurate to well under a tenth of a pixel at the
      // sizes the outlier gate admits, so size the axis from area and anchor
      // it at the centroid.
      double ux = 1.0;
      double uy = 0.0;
      if (best_d2 > 0) {
        const double len = std::sqrt(static_cast<double>(best_d2));
        ux = (best_b.x - best_a.x) / len;
        uy = (best_b.y - best_a.y) / len;
      }
      const double half = std::sqrt(b.area / M_PI);
      b.axis_a = {b.centroid.x - half * ux, b.centroid.y - half * uy};
      b.axis_b = {b.centroid.x + half * ux, b.centroid.y + half * uy};
      blobs.push_back(b);
    }
  }

  std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) {
    if (a.area != b.area) return a.area > b.area;
    if (a.centroid.y != b.centroid.y) return a.centroid.y < b.centroid.y;
    return a.centroid.x < b.centroid.x;
  });
  return blobs;
}

std::vector<Blob> filter_outliers(const std::vector<Blob>& blobs, double altitude_m,
                                  double fx, double object_diameter,
                                  const OutlierParams& params) {
  std::vector<Blob> kept;
  if (altitude_m <= 0.0) return kept;
  const double expected_diameter_px = fx * object_diameter / altitude_m;
  const double expected_area = M_PI * 0.25 * expected_diameter_px * expected_diameter_px;
  const double lo = expected_area / params.size_tolerance;
  const double hi = expected_area * params.size_tolerance;
  for (const Blob& b : blobs) {
    if (b.circularity < params.min_circularity) continue;
    if (b.area < lo || b.area > hi) continue;
    kept.push_back(b);
  }
  return kept;
}

}  // namespace skypick::vision
