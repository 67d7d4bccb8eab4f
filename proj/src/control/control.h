#pragma once

#include <vector>

#include "core/result.h"
#include "core/types.h"

namespace skypick::control {

struct AgentKinematics {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

struct ReferencePoint {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

struct Gains {
  double kp = 4.0;
  double kv = 4.0;
  double a_max = 4.0;
};

// Proportional-derivative tracking with feedforward disturbance cancellation.
// The returned acceleration norm never exceeds a_max.
Vec3 track_reference(const AgentKinematics& state, const ReferencePoint& ref,
                     const Vec3& disturbance, const Gains& gains);

// First-order estimate of unmodeled acceleration. The estimate norm is
// clamped to cap.
struct DisturbanceObserver {
  Vec3 estimate = Vec3::Zero();
  double beta = 1.0;  // 1/s
  double cap = 2.0;   // m/s^2
};

void estimate_disturbance(DisturbanceObserver& obs, const Vec3& measured_accel,
                          const Vec3& commanded_accel, double dt);

// Peer state as known from its last broadcast.
struct ObstacleState {
  int agent_id = 0;
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  double stamp = 0.0;
  bool claiming = false;  // pursuing or holding an object
};

struct PriorityRank {
  bool claiming = false;
  int agent_id = 0;
};

// True when a outranks b. Agents pursuing an object outrank searching ones;
// ties go to the lower id.
inline bool outranks(const PriorityRank& a, const PriorityRank& b) {
  if (a.claiming != b.claiming) return a.claiming;
  return a.agent_id < b.agent_id;
}

struct AvoidanceParams {
  double d_min = 1.0;           // hard minimum separation
  double d_soft = 2.5;          // soft repulsion onset
  double k_rep = 8.0;
  double v_max = 3.0;
  double a_max = 4.0;
  double stale_after = 0.5;     // s
  double predict_horizon = 1.0; // s, hard-constraint lookahead
  double brake_tau = 0.25;      // s, closing-speed cancellation time
};

// Shapes a desired acceleration around peers. Soft repulsion is only applied
// toward peers that outrank the caller, so exactly one agent of a pair gives
// way; the hard minimum-distance constraint is symmetric and uses a
// constant-velocity lookahead. With every obstacle static and beyond d_soft
// the command passes through unchanged.
// StaleObstacle when enforce_freshness and any stamp is older than
// stale_after; pass enforce_freshness = false for a best-effort fallback.
Result<Vec3> avoid(const Vec3& desired_accel, const AgentKinematics& state,
                   const std::vector<ObstacleState>& obstacles, const PriorityRank& own_rank,
                   const AvoidanceParams& params, double now, bool enforce_freshness = true);

struct PlantParams {
  double drag = 0.3;   // 1/s
  double v_max = 3.0;  // m/s
};

// Double integrator with linear drag and a hard speed clamp, explicit Euler.
AgentKinematics step_dynamics(const AgentKinematics& state, const Vec3& accel_cmd,
                              const Vec3& wind_accel, double dt, const PlantParams& params);

}  // namespace skypick::control
