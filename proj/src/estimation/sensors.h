#pragma once

#include <optional>
#include <vector>

#include "core/rng.h"
#include "estimation/fusion.h"

namespace skypick::estimation {

struct SensorParams {
  double odom_sigma = 0.008;   // per-axis noise per increment
  double bias_walk = 1e-4;     // m/s per sqrt(s)
  double gps_sigma = 0.45;     // per-axis
  double gps_rate = 5.0;       // Hz
  // Half-open [start, end) windows with no fixes.
  std::vector<std::pair<double, double>> gps_dropouts;
};

// Incremental sensor generator shared by the closed-loop simulator and the
// batch path below, so both see identical noise models.
class SensorSim {
 public:
  SensorSim(const SensorParams& params, uint64_t seed);

  // Odometry increment for a true motion step ending at stamp.
  OdomReading odom_step(const Vec3& true_delta, double dt, double stamp);

  // Fix at stamp if one is due, given the true position. Fix times are the
  // multiples of 1/gps_rate; dropout windows swallow them.
  std::optional<GpsFix> maybe_fix(const Vec3& true_position, double stamp);

  const Vec3& bias() const { return bias_; }

 private:
  SensorParams params_;
  RandomStream odom_rng_;
  RandomStream gps_rng_;
  Vec3 bias_ = Vec3::Zero();
  long long next_fix_index_ = 0;
};

struct TimedPath {
  std::vector<double> stamps;
  std::vector<Vec3> positions;
};

struct SensorStreams {
  std::vector<OdomReading> odom;
  std::vector<GpsFix> fixes;
};

// Runs the generator over a sampled true trajectory. Odometry is emitted per
// consecutive sample pair; fixes land on the 1/gps_rate grid outside dropout
// windows. Deterministic for a given seed.
SensorStreams simulate_sensors(const TimedPath& truth, const SensorParams& params,
                               uint64_t seed);

}  // namespace skypick::estimation
