#include "agent/gripper.h"

#include <algorithm>
#include <cmath>

namespace skypick::agent {

void gripper_update(GripperState& g, bool epm_cmd, double ferrous_distance, int nearest_object,
                    bool remagnetize, double dt, RandomStream& rng,
                    const GripperParams& params) {
  g.contact_event = false;
  g.attach_event = false;
  g.prev_flux = g.flux;

  if (remagnetize) {
    g.since_remag = 0.0;
  } else {
    g.since_remag += dt;
  }

  if (!epm_cmd) {
    if (g.epm_on && g.attached_object >= 0) {
      g.attached_object = -1;  // release
    }
    g.epm_on = false;
    g.flux = params.flux_base;
    return;
  }
  g.epm_on = true;

  const double strength =
      params.decay_floor + (1.0 - params.decay_floor) * std::exp(-g.since_remag / params.decay_time);
  const double gain = params.flux_gain * strength;
  const double d = std::max(ferrous_distance, 0.0);
  const double ratio = d / params.flux_distance;
  double flux = params.flux_base + gain / (1.0 + ratio * ratio * ratio);
  const bool touching = d <= params.contact_distance;
  if (touching || g.attached_object >= 0) {
    flux += gain;  // closed magnetic circuit
  }
  g.flux = flux;

  if (g.attached_object < 0 && touching &&
      g.flux - g.prev_flux > params.contact_threshold) {
    g.contact_event = true;
    if (rng.uniform() < params.p_grasp) {
      g.attached_object = nearest_object;
      g.attach_event = true;
    }
  }
}

void battery_step(Battery& b, double dt, double load) {
  b.voltage -= b.discharge_rate * std::max(load, 0.0) * dt;
}

}  // namespace skypick::agent
