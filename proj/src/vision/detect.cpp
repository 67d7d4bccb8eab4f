#include "vision/detect.h"

namespace skypick::vision {

std::vector<Detection> detect_objects(const Image& img, const geom::Pose& pose_WC,
                                      const geom::CameraIntrinsics& k,
                                      const std::vector<ColorClass>& classes,
                                      const DetectParams& params, double stamp,
                                      DetectStats* stats) {
  std::vector<Detection> out;
  DetectStats local;

  // Camera must be looking at the ground: optical axis with a downward
  // world component.
  const Vec3 optical_w = pose_WC.rotation.matrix().col(2);
  if (optical_w.z() >= 0.0) {
    if (stats) *stats = local;
    return out;
  }
  const double altitude = pose_WC.translation.z();
  if (altitude <= 0.0) {
    if (stats) *stats = local;
    return out;
  }

  const geom::Rotation r_CW = pose_WC.rotation.transposed();
  const auto masks = threshold(img, classes);
  for (size_t c = 0; c < classes.size(); ++c) {
    const auto blobs = extract_blobs(masks[c], params.min_area);
    local.blobs_total += static_cast<int>(blobs.size());
    const auto kept =
        filter_outliers(blobs, altitude, k.fx, params.object_diameter, params.outlier);
    local.dropped_outlier += static_cast<int>(blobs.size() - kept.size());
    for (const Blob& b : kept) {
      const auto pair =
          geom::inverse_project_pair(b.axis_a, b.axis_b, r_CW, params.object_diameter, k);
      if (!pair) {
        ++local.dropped_geometry;
        continue;
      }
      Detection det;
      det.stamp = stamp;
      det.position_w =
          geom::camera_to_world(geom::object_center(pair.value().first, pair.value().second),
                                pose_WC);
      det.color = classes[c].name;
      det.pixel_area = b.area;
      out.push_back(det);
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace skypick::vision
