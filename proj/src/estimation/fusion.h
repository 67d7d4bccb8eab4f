#pragma once

#include <Eigen/Dense>

#include "core/result.h"
#include "core/types.h"

namespace skypick::estimation {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

struct OdomReading {
  double stamp = 0.0;
  Vec3 delta = Vec3::Zero();  // world-aligned position increment
  double sigma = 0.01;        // per-axis noise of the increment
};

struct GpsFix {
  double stamp = 0.0;
  Vec3 position = Vec3::Zero();
  double sigma = 0.1;
  bool valid = true;
};

// Linear filter over [position, odometry drift rate]. Odometry increments
// propagate the position while the drift estimate is subtracted; absolute
// fixes correct both through their accumulated correlation.
struct FusionFilter {
  Vec6 state = Vec6::Zero();
  Mat6 cov = Mat6::Identity();
  double stamp = 0.0;
  double heading = 0.0;      // yaw of the odometry frame relative to world
  double bias_walk = 1e-4;   // drift-rate random walk, m/s per sqrt(s)

  Vec3 position() const { return state.head<3>(); }
  Vec3 bias() const { return state.tail<3>(); }
};

// InvalidArgument when the fix is flagged invalid.
Result<FusionFilter> init_filter(const GpsFix& fix, double heading, double bias_prior = 0.05);

// NonMonotoneTime when the reading is older than the filter time.
Err propagate(FusionFilter& filter, const OdomReading& odom);

// Position update. InvalidArgument for invalid fixes. Position covariance
// never grows in the Loewner order.
Err correct(FusionFilter& filter, const GpsFix& fix);

}  // namespace skypick::estimation
