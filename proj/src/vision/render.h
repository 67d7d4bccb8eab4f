#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/rng.h"
#include "geometry/geometry.h"
#include "vision/image.h"

namespace skypick::vision {

// Flat colored disc lying on the ground plane z = 0.
struct GroundDisc {
  Vec2 center = Vec2::Zero();
  double diameter = 0.0;
  std::array<uint8_t, 3> rgb{0, 0, 0};
};

struct RenderParams {
  std::array<uint8_t, 3> background{72, 74, 70};
  double vignette = 0.0;     // corner gain = 1 - vignette
  double noise_sigma = 0.0;  // additive gaussian, 8-bit units per channel
  uint64_t seed = 0;
};

// Point-sampled view of the ground plane from a camera at pose_WC. Each pixel
// ray is intersected with z = 0 and tested against the discs in order, so the
// output is exact within one pixel and fully deterministic for a given seed.
Image render_scene(const std::vector<GroundDisc>& discs, const geom::Pose& pose_WC,
                   const geom::CameraIntrinsics& k, const RenderParams& params);

}  // namespace skypick::vision
