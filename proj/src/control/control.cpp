#include "control/control.h"

#include <algorithm>
#include <cmath>

namespace skypick::control {

namespace {

Vec3 clamp_norm(const Vec3& v, double max_norm) {
  const double n = v.norm();
  if (n <= max_norm || n <= 0.0) return v;
  return v * (max_norm / n);
}

}  // namespace

Vec3 track_reference(const AgentKinematics& state, const ReferencePoint& ref,
                     const Vec3& disturbance, const Gains& gains) {
  const Vec3 a = gains.kp * (ref.position - state.position) +
                 gains.kv * (ref.velocity - state.velocity) - disturbance;
  return clamp_norm(a, gains.a_max);
}

void estimate_disturbance(DisturbanceObserver& obs, const Vec3& measured_accel,
                          const Vec3& commanded_accel, double dt) {
  const Vec3 residual = measured_accel - commanded_accel;
  obs.estimate += obs.beta * dt * (residual - obs.estimate);
  obs.estimate = clamp_norm(obs.estimate, obs.cap);
}

Result<Vec3> avoid(const Vec3& desired_accel, const AgentKinematics& state,
                   const std::vector<ObstacleState>& obstacles, const PriorityRank& own_rank,
                   const AvoidanceParams& params, double now, bool enforce_freshness) {
  using R = Result<Vec3>;
  if (enforce_freshness) {
    for (const ObstacleState& obs : obstacles) {
      if (now - obs.stamp > params.stale_after) return R::fail(Err::StaleObstacle);
    }
  }

  Vec3 a = desired_accel;

  for (const ObstacleState& obs : obstacles) {
    const PriorityRank rank{obs.claiming, obs.agent_id};
    if (!outranks(rank, own_rank)) continue;
    const Vec3 diff = state.position - obs.position;
    const double d = diff.norm();
    if (d >= params.d_soft || d < 1e-9) continue;
    const double mag = params.k_rep * (1.0 / d - 1.0 / params.d_soft);
    a += mag * (diff / d);
  }

  // Hard constraint: applies to every peer regardless of rank. A violation
  // is declared when the constant-velocity prediction dips under d_min
  // anywhere on the lookahead horizon.
  std::vector<Vec3> escape_dirs;
  for (const ObstacleState& obs : obstacles) {
    const Vec3 diff = state.position - obs.position;
    const Vec3 vrel = state.velocity - obs.velocity;
    bool violated = false;
    for (const double tau : {0.0, 0.5 * params.predict_horizon, params.predict_horizon}) {
      if ((diff + tau * vrel).norm() < params.d_min) {
        violated = true;
        break;
      }
    }
    if (!violated) continue;

    const double d = diff.norm();
    const Vec3 e = d > 1e-9 ? Vec3(diff / d) : Vec3::UnitX();
    const double toward = a.dot(e);
    if (toward < 0.0) a -= toward * e;  // never accelerate into the conflict
    const double closing = -vrel.dot(e);
    if (closing > 0.0) a += e * (closing / params.brake_tau);
    if (d < params.d_min) a += e * params.a_max;  // inside the ball: push out
    escape_dirs.push_back(e);
  }

  a = clamp_norm(a, params.a_max);
  // The clamp can rotate the command back toward a conflict; strip any such
  // component again.
  for (const Vec3& e : escape_dirs) {
    const double toward = a.dot(e);
    if (toward < 0.0) a -= toward * e;
  }
  return R::ok(a);
}

AgentKinematics step_dynamics(const AgentKinematics& state, const Vec3& accel_cmd,
                              const Vec3& wind_accel, double dt, const PlantParams& params) {
  AgentKinematics next;
  next.velocity = state.velocity + dt * (accel_cmd + wind_accel - params.drag * state.velocity);
  const double speed = next.velocity.norm();
  if (speed > params.v_max) {
    next.velocity *= params.v_max / speed;
  }
  next.position = state.position + dt * next.velocity;
  return next;
}

}  // namespace skypick::control
