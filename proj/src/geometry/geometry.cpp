#include "geometry/geometry.h"

#include <cmath>

#include <Eigen/Geometry>

namespace skypick::geom {

namespace {
constexpr double kOrthoTol = 1e-9;
constexpr double kDenomEps = 1e-12;
constexpr double kDepthEps = 1e-12;
}  // namespace

Result<Rotation> Rotation::from_matrix(const Mat3& m) {
  const Mat3 gram = m * m.transpose();
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > kOrthoTol) {
    return Result<Rotation>::fail(Err::InvalidArgument);
  }
  if (std::abs(m.determinant() - 1.0) > kOrthoTol) {
    return Result<Rotation>::fail(Err::InvalidArgument);
  }
  Rotation r;
  r.m_ = m;
  return Result<Rotation>::ok(r);
}

Rotation Rotation::from_rpy(double roll, double pitch, double yaw) {
  const Eigen::AngleAxisd rz(yaw, Vec3::UnitZ());
  const Eigen::AngleAxisd ry(pitch, Vec3::UnitY());
  const Eigen::AngleAxisd rx(roll, Vec3::UnitX());
  Rotation r;
  r.m_ = (rz * ry * rx).toRotationMatrix();
  return r;
}

Rotation Rotation::from_axis_angle(const Vec3& axis, double angle) {
  Rotation r;
  r.m_ = Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
  return r;
}

Vec3 normalize_pixel(const Pixel& u, const CameraIntrinsics& k) {
  return Vec3((u.x - k.px) / k.fx, (u.y - k.py) / k.fy, 1.0);
}

Result<Pixel> project_point(const Vec3& p_C, const CameraIntrinsics& k) {
  if (p_C.z() <= kDepthEps) {
    return Result<Pixel>::fail(Err::NonPositiveDepth);
  }
  Pixel u;
  u.x = k.fx * p_C.x() / p_C.z() + k.px;
  u.y = k.fy * p_C.y() / p_C.z() + k.py;
  return Result<Pixel>::ok(u);
}

Result<std::pair<Vec3, Vec3>> inverse_project_pair(const Pixel& u1, const Pixel& u2,
                                                   const Rotation& r_CW, double l,
                                                   const CameraIntrinsics& k) {
  using R = Result<std::pair<Vec3, Vec3>>;
  if (!(l > 0.0)) {
    return R::fail(Err::InvalidArgument);
  }
  const Vec3 u1n = normalize_pixel(u1, k);
  const Vec3 u2n = normalize_pixel(u2, k);
  const Vec3 n = r_CW * Vec3::UnitZ();  // horizontal-plane normal, camera frame

  const double a1 = n.dot(u1n);
  const double a2 = n.dot(u2n);
  const Vec3 dvec = a2 * u1n - a1 * u2n;
  const double denom = dvec.norm();
  if (denom < kDenomEps) {
    return R::fail(Err::DegenerateGeometry);
  }

  // The in-plane constraint forces lambda2 = lambda1 * a1/a2. Picking the
  // branch with lambda1 >= 0, the second depth is positive only when a1 and
  // a2 share a sign; otherwise one endpoint sits behind the camera.
  const double lambda1 = std::abs(a2) / denom;
  const double lambda2 = (a1 * a2 >= 0.0 ? 1.0 : -1.0) * std::abs(a1) / denom;
  const Vec3 p1 = lambda1 * l * u1n;
  const Vec3 p2 = lambda2 * l * u2n;
  if (p1.z() <= kDepthEps || p2.z() <= kDepthEps) {
    return R::fail(Err::BehindCamera);
  }
  return R::ok({p1, p2});
}

}  // namespace skypick::geom
