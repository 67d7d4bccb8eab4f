#pragma once

#include <string>
#include <vector>

#include "geometry/geometry.h"
#include "vision/blob.h"
#include "vision/color.h"
#include "vision/image.h"

namespace skypick::vision {

struct Detection {
  double stamp = 0.0;
  Vec3 position_w = Vec3::Zero();  // object center, world frame
  std::string color;
  double pixel_area = 0.0;
};

struct DetectParams {
  int min_area = 20;
  OutlierParams outlier;
  double object_diameter = 0.2;
};

struct DetectStats {
  int blobs_total = 0;
  int dropped_outlier = 0;
  int dropped_geometry = 0;
};

// Full single-frame pipeline: threshold into per-class masks, extract blobs,
// reject outliers, then lift each blob's major axis through the known object
// diameter into a world position. Geometric failures are dropped per blob and
// only counted; the frame never fails as a whole.
std::vector<Detection> detect_objects(const Image& img, const geom::Pose& pose_WC,
                                      const geom::CameraIntrinsics& k,
                                      const std::vector<ColorClass>& classes,
                                      const DetectParams& params, double stamp,
                                      DetectStats* stats = nullptr);

}  // namespace skypick::vision
