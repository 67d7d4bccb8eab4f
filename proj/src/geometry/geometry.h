#pragma once

#include <utility>

#include "core/result.h"
#include "core/types.h"

namespace skypick::geom {

// Proper rotation matrix. Orthonormality and det=+1 are checked once at
// construction; downstream code relies on it without re-validating.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }

  // Fails (InvalidArgument) unless m is orthonormal with det +1 to 1e-9.
  static Result<Rotation> from_matrix(const Mat3& m);

  // Intrinsic z-y-x Euler angles, always a valid rotation.
  static Rotation from_rpy(double roll, double pitch, double yaw);

  static Rotation from_axis_angle(const Vec3& axis, double angle);

  const Mat3& matrix() const { return m_; }
  Rotation transposed() const {
    Rotation r;
    r.m_ = m_.transpose();
    return r;
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }

 private:
  Mat3 m_;
};

// Camera pose: p_W = rotation * p_C + translation.
struct Pose {
  Rotation rotation;
  Vec3 translation = Vec3::Zero();
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double px = 0.0;
  double py = 0.0;
  int width = 0;
  int height = 0;
};

// Unit-depth ray direction (u_nx, u_ny, 1) through a pixel.
Vec3 normalize_pixel(const Pixel& u, const CameraIntrinsics& k);

// Pinhole projection of a camera-frame point. NonPositiveDepth if z <= eps.
Result<Pixel> project_point(const Vec3& p_C, const CameraIntrinsics& k);

// Recovers the two endpoint positions (camera frame) of a segment of known
// length l lying in a world-horizontal plane, from its two image points.
// r_CW maps world-frame vectors into the camera frame. The solution branch
// with both depths positive is returned; if no such branch exists the
// configuration is rejected:
//   DegenerateGeometry  coincident or otherwise unresolvable rays
//   BehindCamera        a recovered depth would be <= 0
// Successful outputs satisfy |p1-p2| = l and n.(p1-p2) = 0 to 1e-9*l.
Result<std::pair<Vec3, Vec3>> inverse_project_pair(const Pixel& u1, const Pixel& u2,
                                                   const Rotation& r_CW, double l,
                                                   const CameraIntrinsics& k);

inline Vec3 object_center(const Vec3& p1, const Vec3& p2) { return 0.5 * (p1 + p2); }

inline Vec3 camera_to_world(const Vec3& p_C, const Pose& pose_WC) {
  return pose_WC.rotation * p_C + pose_WC.translation;
}

inline Vec3 world_to_camera(const Vec3& p_W, const Pose& pose_WC) {
  return pose_WC.rotation.transposed() * (p_W - pose_WC.translation);
}

}  // namespace skypick::geom
