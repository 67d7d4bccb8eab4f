#include "tracking/kalman.h"

namespace skypick::tracking {

void kf_predict(Track& track, double dt, const KfParams& params) {
  if (dt <= 0.0) return;
  Mat5 f = Mat5::Identity();
  f(0, 3) = dt;
  f(1, 4) = dt;

  const double q = params.process_noise;
  const double dt2 = dt * dt;
  const double dt3 = dt2 * dt;
  Mat5 qm = Mat5::Zero();
  for (int axis = 0; axis < 2; ++axis) {
    const int p = axis;      // x or y
    const int v = 3 + axis;  // vx or vy
    qm(p, p) = q * dt3 / 3.0;
    qm(p, v) = q * dt2 / 2.0;
    qm(v, p) = q * dt2 / 2.0;
    qm(v, v) = q * dt;
  }
  qm(2, 2) = q * dt;  // altitude random walk

  track.state = f * track.state;
  track.cov = f * track.cov * f.transpose() + qm;
  track.cov = 0.5 * (track.cov + track.cov.transpose()).eval();
}

void kf_update(Track& track, const Vec3& z, double stamp, const KfParams& params) {
  Eigen::Matrix<double, 3, 5> h = Eigen::Matrix<double, 3, 5>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  h(2, 2) = 1.0;
  const double r = params.measurement_noise * params.measurement_noise;
  const Mat3 s = h * track.cov * h.transpose() + r * Mat3::Identity();
  const Eigen::Matrix<double, 5, 3> k = track.cov * h.transpose() * s.inverse();
  track.state += k * (z - h * track.state);
  const Mat5 ikh = Mat5::Identity() - k * h;
  // Joseph form keeps the covariance positive semidefinite under the large
  // prior-to-noise ratios the confirm logic creates.
  track.cov = ikh * track.cov * ikh.transpose() + r * k * k.transpose();
  track.cov = 0.5 * (track.cov + track.cov.transpose()).eval();
  track.hits += 1;
  track.misses = 0;
  track.last_update = stamp;
}

Track make_track(int64_t id, const Vec3& position, const std::string& color, double stamp,
                 const KfParams& params) {
  Track t;
  t.id = id;
  t.state << position.x(), position.y(), position.z(), 0.0, 0.0;
  const double r = params.measurement_noise * params.measurement_noise;
  constexpr double kVelPrior = 2.0;  // generous for ground objects
  t.cov = Mat5::Zero();
  t.cov(0, 0) = r;
  t.cov(1, 1) = r;
  t.cov(2, 2) = r;
  t.cov(3, 3) = kVelPrior * kVelPrior;
  t.cov(4, 4) = kVelPrior * kVelPrior;
  t.color = color;
  t.hits = 1;
  t.misses = 0;
  t.confirmed = params.min_hits_confirm <= 1;
  t.last_update = stamp;
  return t;
}

}  // namespace skypick::tracking
