#pragma once

#include <vector>

#include "tracking/kalman.h"
#include "vision/detect.h"

namespace skypick::tracking {

struct TrackerState {
  std::vector<Track> tracks;
  int64_t next_id = 0;
};

// One association cycle: predict all tracks by dt, assign detections by
// gated Euclidean distance within matching color classes, update matched
// tracks, start tracks for unmatched detections, age and prune the rest.
// Deterministic: assignment ties are broken lexicographically and new ids
// are handed out in detection order.
void tracker_step(TrackerState& state, const std::vector<vision::Detection>& detections,
                  double dt, double stamp, const KfParams& params);

}  // namespace skypick::tracking
