#include "estimation/fusion.h"

#include <cmath>

namespace skypick::estimation {

Result<FusionFilter> init_filter(const GpsFix& fix, double heading, double bias_prior) {
  using R = Result<FusionFilter>;
  if (!fix.valid) return R::fail(Err::InvalidArgument);
  FusionFilter f;
  f.state.head<3>() = fix.position;
  f.state.tail<3>().setZero();
  f.cov = Mat6::Zero();
  f.cov.topLeftCorner<3, 3>() = fix.sigma * fix.sigma * Mat3::Identity();
  f.cov.bottomRightCorner<3, 3>() = bias_prior * bias_prior * Mat3::Identity();
  f.stamp = fix.stamp;
  f.heading = heading;
  return R::ok(f);
}

Err propagate(FusionFilter& filter, const OdomReading& odom) {
  const double dt = odom.stamp - filter.stamp;
  if (dt < 0.0) return Err::NonMonotoneTime;

  const double ch = std::cos(filter.heading);
  const double sh = std::sin(filter.heading);
  const Vec3 delta_w(ch * odom.delta.x() - sh * odom.delta.y(),
                     sh * odom.delta.x() + ch * odom.delta.y(), odom.delta.z());

  Mat6 f = Mat6::Identity();
  f.topRightCorner<3, 3>() = -dt * Mat3::Identity();
  filter.state.head<3>() += delta_w - dt * filter.bias();

  Mat6 q = Mat6::Zero();
  q.topLeftCorner<3, 3>() = odom.sigma * odom.sigma * Mat3::Identity();
  q.bottomRightCorner<3, 3>() = filter.bias_walk * filter.bias_walk * dt * Mat3::Identity();
  filter.cov = f * filter.cov * f.transpose() + q;
  filter.cov = 0.5 * (filter.cov + filter.cov.transpose()).eval();
  filter.stamp = odom.stamp;
  return Err::None;
}

Err correct(FusionFilter& filter, const GpsFix& fix) {
  if (!fix.valid) return Err::InvalidArgument;
  Eigen::Matrix<double, 3, 6> h = Eigen::Matrix<double, 3, 6>::Zero();
  h.leftCols<3>() = Mat3::Identity();
  const double r = fix.sigma * fix.sigma;
  const Mat3 s = h * filter.cov * h.transpose() + r * Mat3::Identity();
  const Eigen::Matrix<double, 6, 3> k = filter.cov * h.transpose() * s.inverse();
  filter.state += k * (fix.position - filter.position());
  const Mat6 ikh = Mat6::Identity() - k * h;
  filter.cov = ikh * filter.cov * ikh.transpose() + r * k * k.transpose();
  filter.cov = 0.5 * (filter.cov + filter.cov.transpose()).eval();
  return Err::None;
}

}  // namespace skypick::estimation
