#pragma once

#include "core/result.h"
#include "estimation/sensors.h"

namespace skypick::estimation {

struct AlignedRmse {
  double rmse = 0.0;          // per-axis root mean square error
  double time_offset = 0.0;   // applied to the estimate stamps
  Vec2 translation = Vec2::Zero();
};

// Per-axis RMSE between an estimated and a true trajectory after fitting a
// time offset (grid search, +-1 s in 10 ms steps) and the optimal planar
// translation. Truth is interpolated at the shifted estimate stamps.
// EmptyOverlap when no offset yields at least two overlapping samples.
Result<AlignedRmse> rmse_aligned(const TimedPath& estimate, const TimedPath& truth);

// Convenience: per-axis RMSE without any alignment, over the overlapping span.
Result<double> rmse_raw(const TimedPath& estimate, const TimedPath& truth);

}  // namespace skypick::estimation
