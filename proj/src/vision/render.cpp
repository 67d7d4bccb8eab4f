#include "vision/render.h"

#include <algorithm>
#include <cmath>

namespace skypick::vision {

namespace {

uint8_t clamp_byte(double v) {
  return static_cast<uint8_t>(std::clamp(v, 0.0, 255.0));
}

struct BBox {
  int x0, y0, x1, y1;  // half-open
};

// Conservative pixel bounds of a disc, from projected boundary samples.
// Falls back to the full image when any sample fails to project.
BBox disc_bbox(const GroundDisc& disc, const geom::Pose& pose_WC,
               const geom::CameraIntrinsics& k) {
  const BBox full{0, 0, k.width, k.height};
  double lox = 1e30, loy = 1e30, hix = -1e30, hiy = -1e30;
  constexpr int kSamples = 16;
  for (int i = 0; i <= kSamples; ++i) {
    const double ang = 2.0 * M_PI * i / kSamples;
    const double r = i == kSamples ? 0.0 : 0.5 * disc.diameter;
    const Vec3 p_w(disc.center.x() + r * std::cos(ang), disc.center.y() + r * std::sin(ang), 0.0);
    const auto px = geom::project_point(geom::world_to_camera(p_w, pose_WC), k);
    if (!px) return full;
    lox = std::min(lox, px.value().x);
    loy = std::min(loy, px.value().y);
    hix = std::max(hix, px.value().x);
    hiy = std::max(hiy, px.value().y);
  }
  BBox b;
  b.x0 = std::clamp(static_cast<int>(std::floor(lox)) - 2, 0, k.width);
  b.y0 = std::clamp(static_cast<int>(std::floor(loy)) - 2, 0, k.height);
  b.x1 = std::clamp(static_cast<int>(std::ceil(hix)) + 2, 0, k.width);
  b.y1 = std::clamp(static_cast<int>(std::ceil(hiy)) + 2, 0, k.height);
  return b;
}

}  // namespace

Image render_scene(const std::vector<GroundDisc>& discs, const geom::Pose& pose_WC,
                   const geom::CameraIntrinsics& k, const RenderParams& params) {
  Image img = Image::filled(k.width, k.height, params.background[0], params.background[1],
                            params.background[2]);
  const Vec3 origin = pose_WC.translation;
  const Mat3 r_WC = pose_WC.rotation.matrix();
  const Vec3 bx = r_WC.col(0) / k.fx;
  const Vec3 by = r_WC.col(1) / k.fy;
  const Vec3 bz = r_WC.col(2);

  // Painted back to front over the list so the first disc wins overlaps,
  // matching a per-pixel first-hit test.
  for (auto it = discs.rbegin(); it != discs.rend(); ++it) {
    const GroundDisc& disc = *it;
    if (disc.diameter <= 0.0) continue;
    const BBox bb = disc_bbox(disc, pose_WC, k);
    const double r2 = 0.25 * disc.diameter * disc.diameter;
    for (int y = bb.y0; y < bb.y1; ++y) {
      for (int x = bb.x0; x < bb.x1; ++x) {
        const Vec3 d = (x + 0.5 - k.px) * bx + (y + 0.5 - k.py) * by + bz;
        if (d.z() >= -1e-12) continue;  // ray does not reach the ground
        const double s = -origin.z() / d.z();
        if (s <= 0.0) continue;
        const double ddx = origin.x() + s * d.x() - disc.center.x();
        const double ddy = origin.y() + s * d.y() - disc.center.y();
        if (ddx * ddx + ddy * ddy <= r2) {
          uint8_t* p = img.at(x, y);
          p[0] = disc.rgb[0];
          p[1] = disc.rgb[1];
          p[2] = disc.rgb[2];
        }
      }
    }
  }

  if (params.vignette > 0.0) {
    const double cx = k.px;
    const double cy = k.py;
    const double corner_x = std::max(cx, k.width - cx);
    const double corner_y = std::max(cy, k.height - cy);
    const double rmax2 = corner_x * corner_x + corner_y * corner_y;
    for (int y = 0; y < k.height; ++y) {
      for (int x = 0; x < k.width; ++x) {
        const double dx = x + 0.5 - cx;
        const double dy = y + 0.5 - cy;
        const double gain = 1.0 - params.vignette * (dx * dx + dy * dy) / rmax2;
        uint8_t* p = img.at(x, y);
        p[0] = clamp_byte(std::round(p[0] * gain));
        p[1] = clamp_byte(std::round(p[1] * gain));
        p[2] = clamp_byte(std::round(p[2] * gain));
      }
    }
  }

  if (params.noise_sigma > 0.0) {
    RandomStream rng(params.seed);
    for (size_t i = 0; i < img.data.size(); ++i) {
      img.data[i] = clamp_byte(img.data[i] + params.noise_sigma * rng.gaussian());
    }
  }
  return img;
}

}  // namespace skypick::vision
