#pragma once

#include <string>

#include <Eigen/Dense>

#include "core/types.h"

namespace skypick::tracking {

using Vec5 = Eigen::Matrix<double, 5, 1>;
using Mat5 = Eigen::Matrix<double, 5, 5>;

struct KfParams {
  double process_noise = 0.5;      // white-acceleration density for x, y
  double measurement_noise = 0.15; // position sigma per axis
  double gate = 2.0;               // association gate, meters
  int max_misses = 10;
  int min_hits_confirm = 3;
};

// Constant-velocity track over (x, y, vx, vy) with altitude as a random walk.
// State layout: [x, y, z, vx, vy].
struct Track {
  int64_t id = 0;
  Vec5 state = Vec5::Zero();
  Mat5 cov = Mat5::Identity();
  std::string color;
  int hits = 0;
  int misses = 0;
  bool confirmed = false;
  double last_update = 0.0;

  Vec3 position() const { return Vec3(state(0), state(1), state(2)); }
  Vec2 velocity() const { return Vec2(state(3), state(4)); }
};

// dt = 0 leaves the track unchanged. Covariance stays symmetric positive
// semidefinite.
void kf_predict(Track& track, double dt, const KfParams& params);

// Position-only update. Covariance never grows in the Loewner order on the
// position block.
void kf_update(Track& track, const Vec3& measured_position, double stamp,
               const KfParams& params);

// Fresh track centered on a measurement, with a loose velocity prior.
Track make_track(int64_t id, const Vec3& position, const std::string& color, double stamp,
                 const KfParams& params);

}  // namespace skypick::tracking
