#pragma once

#include "core/rng.h"
#include "core/types.h"

namespace skypick::agent {

struct GripperParams {
  double p_grasp = 0.9;          // attach probability per contact
  double flux_base = 0.1;
  double flux_gain = 1.0;
  double flux_distance = 0.05;   // m, half-response distance of the proximity term
  double contact_threshold = 0.2;  // flux jump per step that signals contact
  double contact_distance = 0.02;  // m
  double decay_time = 10.0;        // s, magnet strength decay constant
  double decay_floor = 0.5;        // fraction retained without remagnetizing
};

struct GripperState {
  bool epm_on = false;
  double flux = 0.0;
  double prev_flux = 0.0;
  int attached_object = -1;
  double since_remag = 0.0;
  // Outputs of the latest update.
  bool contact_event = false;
  bool attach_event = false;
};

// Advances the electro-permanent magnet model one step. Flux follows a cubic
// proximity curve plus a discrete jump when a ferrous object closes the
// magnetic circuit inside contact_distance; that jump crossing the threshold
// is the contact signature. On contact the object attaches with probability
// p_grasp. Turning the magnet off always releases. Remagnetize pulses restore
// the decaying magnet strength.
void gripper_update(GripperState& g, bool epm_cmd, double ferrous_distance, int nearest_object,
                    bool remagnetize, double dt, RandomStream& rng, const GripperParams& params);

struct Battery {
  double voltage = 16.8;
  double discharge_rate = 0.01;  // V/s at unit load
  double land_threshold = 14.0;
};

// Voltage is non-increasing for load >= 0.
void battery_step(Battery& b, double dt, double load);

}  // namespace skypick::agent
