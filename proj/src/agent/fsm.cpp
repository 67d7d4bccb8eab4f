#include "agent/fsm.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skypick::agent {

const char* fsm_state_name(FsmState s) {
  switch (s) {
    case FsmState::TakeOff: return "takeoff";
    case FsmState::Explore: return "explore";
    case FsmState::Servo: return "servo";
    case FsmState::Deliver: return "deliver";
    case FsmState::ReturnToSearch: return "return_to_search";
    case FsmState::Land: return "land";
    case FsmState::Grounded: return "grounded";
  }
  return "?";
}

const char* servo_phase_name(ServoPhase p) {
  switch (p) {
    case ServoPhase::ConeDescent: return "cone_descent";
    case ServoPhase::CenterBall: return "center_ball";
    case ServoPhase::MagnetApproach: return "magnet_approach";
    case ServoPhase::Grasped: return "grasped";
  }
  return "?";
}

control::ReferencePoint servo_reference(const TargetSnapshot& target,
                                        const control::AgentKinematics& own,
                                        const ServoParams& params, ServoPhase phase) {
  control::ReferencePoint ref;
  const Vec2 txy = target.position.head<2>();
  const double tz = target.position.z();

  if (phase == ServoPhase::MagnetApproach || phase == ServoPhase::Grasped) {
    // Velocity servo straight down onto the target; no floor so the magnet
    // face can actually reach the object.
    ref.position = Vec3(txy.x(), txy.y(), own.position.z());
    ref.velocity = Vec3(target.velocity.x(), target.velocity.y(), -params.approach_speed);
    return ref;
  }

  const double offset = (own.position.head<2>() - txy).norm();
  // Descend only while centered: off axis the cone pushes the reference up.
  double z_ref = std::max(tz + params.ball_height,
                          tz + offset / std::tan(params.cone_half_angle));
  z_ref = std::max(z_ref, params.z_floor);
  ref.position = Vec3(txy.x(), txy.y(), z_ref);
  ref.velocity = Vec3(target.velocity.x(), target.velocity.y(), 0.0);
  return ref;
}

bool check_ball(const control::AgentKinematics& own, const TargetSnapshot& target,
                const ServoParams& params) {
  const Vec3 center = target.position + Vec3(0.0, 0.0, params.ball_height);
  if ((own.position - center).norm() > params.ball_radius) return false;
  const Vec3 target_vel(target.velocity.x(), target.velocity.y(), 0.0);
  return (own.velocity - target_vel).norm() <= params.ball_max_speed;
}

MissionFsm::MissionFsm(const coverage::ConvexRegion& region, const coverage::SweepPlan& plan,
                       const MissionParams& params)
    : region_(region), plan_(plan), params_(params) {}

void MissionFsm::abandon_servo(std::vector<FsmEvent>& events, const char* reason) {
  events.push_back({reason, std::to_string(servo_track_id_)});
  servo_track_id_ = -1;
  claim_active_ = false;
  magnet_cmd_ = false;
  state_ = FsmState::ReturnToSearch;
  phase_ = ServoPhase::ConeDescent;
}

FsmOutputs MissionFsm::step(const FsmInputs& in) {
  FsmOutputs out;
  const Vec2 own_xy = in.kin.position.head<2>();

  if (!anchored_) {
    land_xy_ = own_xy;
    anchored_ = true;
  }

  const double cruise_z =
      plan_.waypoints.empty() ? 5.0 : plan_.waypoints.front().z();

  // Battery floor forces a landing from anywhere except mid-delivery; a
  // carried object is still dropped off first.
  if (in.battery != nullptr && in.battery->voltage <= in.battery->land_threshold &&
      state_ != FsmState::Deliver && state_ != FsmState::Land &&
      state_ != FsmState::Grounded) {
    servo_track_id_ = -1;
    claim_active_ = false;
    magnet_cmd_ = false;
    land_xy_ = own_xy;
    state_ = FsmState::Land;
  }

  // Coast the target between track refreshes, resync on a newer update.
  if (state_ == FsmState::Servo) {
    target_.position.head<2>() += target_.velocity * in.dt;
    const tracking::Track* tr = nullptr;
    if (in.confirmed_tracks != nullptr) {
      for (const auto& t : *in.confirmed_tracks) {
        if (t.id == servo_track_id_) {
          tr = &t;
          break;
        }
      }
    }
    if (tr != nullptr) {
      if (tr->last_update > last_seen_stamp_) {
        last_seen_stamp_ = tr->last_update;
        target_.position = tr->position();
        target_.velocity = tr->velocity();
      }
    } else if (phase_ != ServoPhase::Grasped) {
      // Track deleted under us: back out within this step.
      abandon_servo(out.events, "track_lost");
    }
  }

  switch (state_) {
    case FsmState::TakeOff: {
      if (std::abs(in.kin.position.z() - cruise_z) < params_.waypoint_tolerance) {
        out.events.push_back({"takeoff", ""});
        state_ = FsmState::Explore;
      }
      break;
    }

    case FsmState::Explore: {
      if (!plan_.waypoints.empty()) {
        const Vec3& wp = plan_.waypoints[cursor_];
        if ((in.kin.position - wp).norm() < params_.waypoint_tolerance) {
          cursor_ = (cursor_ + 1) % plan_.waypoints.size();
        }
      }
      // Claim the nearest eligible confirmed track: in our region, not
      // already claimed by a peer, not sitting in the drop zone.
      if (in.confirmed_tracks != nullptr) {
        const tracking::Track* best = nullptr;
        double best_d = std::numeric_limits<double>::infinity();
        for (const auto& t : *in.confirmed_tracks) {
          const Vec2 txy = t.position().head<2>();
          if (!region_.contains(txy)) continue;
          if ((txy - params_.drop_zone).norm() <= params_.drop_radius) continue;
          bool peer_claimed = false;
          for (const auto& c : in.peer_claims) {
            if ((txy - c).norm() <= params_.claim_radius) {
              peer_claimed = true;
              break;
            }
          }
          if (peer_claimed) continue;
          const double d = (txy - own_xy).norm();
          if (d < best_d) {
            best_d = d;
            best = &t;
          }
        }
        if (best != nullptr) {
          servo_track_id_ = best->id;
          last_seen_stamp_ = best->last_update;
          target_.position = best->position();
          target_.velocity = best->velocity();
          claim_active_ = true;
          state_ = FsmState::Servo;
          phase_ = ServoPhase::ConeDescent;
          out.events.push_back({"claim", std::to_string(best->id)});
        }
      }
      break;
    }

    case FsmState::Servo: {
      if (in.gripper != nullptr && in.gripper->contact_event) {
        out.events.push_back({"contact", std::to_string(servo_track_id_)});
      }
      switch (phase_) {
        case ServoPhase::ConeDescent: {
          const double ball_z = target_.position.z() + params_.servo.ball_height;
          if (in.kin.position.z() - ball_z < 2.0 * params_.servo.ball_radius) {
            phase_ = ServoPhase::CenterBall;
          }
          break;
        }
        case ServoPhase::CenterBall: {
          if (check_ball(in.kin, target_, params_.servo)) {
            magnet_cmd_ = true;
            remag_timer_ = 0.0;
            phase_ = ServoPhase::MagnetApproach;
            out.events.push_back({"magnet_on", std::to_string(servo_track_id_)});
          }
          break;
        }
        case ServoPhase::MagnetApproach: {
          if (in.gripper != nullptr && in.gripper->attach_event) {
            phase_ = ServoPhase::Grasped;
            out.events.push_back({"grasp", std::to_string(servo_track_id_)});
          } else if (in.gripper != nullptr && in.gripper->contact_event) {
            // Contact without attachment: shut off, climb back into the
            // cone and set up another pass. The claim is kept.
            out.events.push_back({"grasp_fail", std::to_string(servo_track_id_)});
            magnet_cmd_ = false;
            phase_ = ServoPhase::ConeDescent;
          } else {
            const double offset =
                (own_xy - target_.position.head<2>()).norm();
            if (offset > 3.0 * params_.servo.ball_radius) {
              magnet_cmd_ = false;
              phase_ = ServoPhase::ConeDescent;
            }
          }
          break;
        }
        case ServoPhase::Grasped:
          break;
      }
      if (phase_ == ServoPhase::Grasped) {
        state_ = FsmState::Deliver;
      }
      break;
    }

    case FsmState::Deliver: {
      if ((own_xy - params_.drop_zone).norm() <= 0.5 * params_.drop_radius) {
        magnet_cmd_ = false;
        claim_active_ = false;
        servo_track_id_ = -1;
        delivered_any_ = true;
        out.events.push_back({"release", ""});
        if (in.battery != nullptr && in.battery->voltage <= in.battery->land_threshold) {
          land_xy_ = own_xy;
          state_ = FsmState::Land;
        } else {
          state_ = FsmState::ReturnToSearch;
        }
        phase_ = ServoPhase::ConeDescent;
      }
      break;
    }

    case FsmState::ReturnToSearch: {
      // Fly back to the interrupted lane waypoint; claims resume in Explore.
      if (plan_.waypoints.empty() ||
          (in.kin.position - plan_.waypoints[cursor_]).norm() <
              params_.waypoint_tolerance) {
        state_ = FsmState::Explore;
      }
      break;
    }

    case FsmState::Land: {
      if (in.kin.position.z() <= params_.land_altitude) {
        out.events.push_back({"land", ""});
        state_ = FsmState::Grounded;
      }
      break;
    }

    case FsmState::Grounded:
      break;
  }

  // Reference from the post-transition state.
  switch (state_) {
    case FsmState::TakeOff:
      out.reference.position = Vec3(land_xy_.x(), land_xy_.y(), cruise_z);
      break;
    case FsmState::Explore:
    case FsmState::ReturnToSearch: {
      if (plan_.waypoints.empty()) {
        out.reference.position = Vec3(land_xy_.x(), land_xy_.y(), cruise_z);
      } else {
        out.reference.position = plan_.waypoints[cursor_];
      }
      break;
    }
    case FsmState::Servo:
      out.reference = servo_reference(target_, in.kin, params_.servo, phase_);
      break;
    case FsmState::Deliver:
      out.reference.position =
          Vec3(params_.drop_zone.x(), params_.drop_zone.y(), params_.deliver_altitude);
      break;
    case FsmState::Land:
    case FsmState::Grounded:
      out.reference.position = Vec3(land_xy_.x(), land_xy_.y(), 0.0);
      break;
  }

  out.epm_cmd = magnet_cmd_;
  if (magnet_cmd_ && phase_ == ServoPhase::MagnetApproach) {
    remag_timer_ += in.dt;
    if (remag_timer_ >= params_.servo.remagnetize_period) {
      remag_timer_ -= params_.servo.remagnetize_period;
      out.remagnetize = true;
    }
  }
  if (claim_active_) {
    out.claim = (state_ == FsmState::Deliver) ? own_xy
                                              : Vec2(target_.position.head<2>());
  }
  return out;
}

}  // namespace skypick::agent
