#pragma once

#include <Eigen/Core>

namespace skypick {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Subpixel image coordinate. x grows right, y grows down.
struct Pixel {
  double x = 0.0;
  double y = 0.0;
};

}  // namespace skypick
