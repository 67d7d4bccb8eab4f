#include "estimation/sensors.h"

#include <cmath>

namespace skypick::estimation {

SensorSim::SensorSim(const SensorParams& params, uint64_t seed)
    : params_(params),
      odom_rng_(derive_seed(seed, "odom")),
      gps_rng_(derive_seed(seed, "gps")) {}

OdomReading SensorSim::odom_step(const Vec3& true_delta, double dt, double stamp) {
  const double walk = params_.bias_walk * std::sqrt(std::max(dt, 0.0));
  bias_ += Vec3(walk * odom_rng_.gaussian(), walk * odom_rng_.gaussian(),
                walk * odom_rng_.gaussian());
  OdomReading r;
  r.stamp = stamp;
  r.sigma = params_.odom_sigma;
  r.delta = true_delta + bias_ * dt +
            Vec3(params_.odom_sigma * odom_rng_.gaussian(),
                 params_.odom_sigma * odom_rng_.gaussian(),
                 params_.odom_sigma * odom_rng_.gaussian());
  return r;
}

std::optional<GpsFix> SensorSim::maybe_fix(const Vec3& true_position, double stamp) {
  const double period = 1.0 / params_.gps_rate;
  const double due = next_fix_index_ * period;
  if (stamp + 1e-9 < due) return std::nullopt;
  ++next_fix_index_;
  for (const auto& [start, end] : params_.gps_dropouts) {
    if (due >= start && due < end) return std::nullopt;
  }
  GpsFix fix;
  fix.stamp = stamp;
  fix.sigma = params_.gps_sigma;
  fix.position = true_position + Vec3(params_.gps_sigma * gps_rng_.gaussian(),
                                      params_.gps_sigma * gps_rng_.gaussian(),
                                      params_.gps_sigma * gps_rng_.gaussian());
  return fix;
}

SensorStreams simulate_sensors(const TimedPath& truth, const SensorParams& params,
                               uint64_t seed) {
  SensorStreams out;
  if (truth.stamps.size() < 2) return out;
  SensorSim sim(params, seed);
  if (auto fix = sim.maybe_fix(truth.positions.front(), truth.stamps.front())) {
    out.fixes.push_back(*fix);
  }
  for (size_t i = 1; i < truth.stamps.size(); ++i) {
    const double dt = truth.stamps[i] - truth.stamps[i - 1];
    out.odom.push_back(
        sim.odom_step(truth.positions[i] - truth.positions[i - 1], dt, truth.stamps[i]));
    if (auto fix = sim.maybe_fix(truth.positions[i], truth.stamps[i])) {
      out.fixes.push_back(*fix);
    }
  }
  return out;
}

}  // namespace skypick::estimation
