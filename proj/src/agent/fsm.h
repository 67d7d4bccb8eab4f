#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "agent/gripper.h"
#include "control/control.h"
#include "coverage/coverage.h"
#include "tracking/kalman.h"

namespace skypick::agent {

enum class FsmState { TakeOff, Explore, Servo, Deliver, ReturnToSearch, Land, Grounded };
enum class ServoPhase { ConeDescent, CenterBall, MagnetApproach, Grasped };

const char* fsm_state_name(FsmState s);
const char* servo_phase_name(ServoPhase p);

struct ServoParams {
  double cone_half_angle = 25.0 * M_PI / 180.0;
  double ball_height = 1.2;    // m above the tracked object
  double ball_radius = 0.25;
  double ball_max_speed = 0.3; // relative speed bound inside the ball
  double approach_speed = 0.4;
  double z_floor = 0.05;
  double remagnetize_period = 1.0;
};

// Last known target state; coasts on the track velocity between sightings.
struct TargetSnapshot {
  Vec3 position = Vec3::Zero();
  Vec2 velocity = Vec2::Zero();
};

// Descent reference toward a ball above the target. The altitude reference
// is clamped so the commanded point stays inside a cone of the given half
// angle over the object: descent is only permitted while centered. In
// MagnetApproach the reference instead descends at approach_speed straight
// onto the target.
control::ReferencePoint servo_reference(const TargetSnapshot& target,
                                        const control::AgentKinematics& own,
                                        const ServoParams& params, ServoPhase phase);

// Inside a ball of ball_radius centered ball_height above the target and
// moving with it to within ball_max_speed.
bool check_ball(const control::AgentKinematics& own, const TargetSnapshot& target,
                const ServoParams& params);

struct MissionParams {
  ServoParams servo;
  double waypoint_tolerance = 0.5;
  double claim_radius = 1.5;   // peer claims blank out tracks within this radius
  double land_altitude = 0.05;
  Vec2 drop_zone = Vec2::Zero();
  double drop_radius = 2.0;
  double deliver_altitude = 3.0;
};

struct FsmEvent {
  std::string name;
  std::string detail;
};

struct FsmInputs {
  control::AgentKinematics kin;  // own estimated state
  const std::vector<tracking::Track>* confirmed_tracks = nullptr;
  const GripperState* gripper = nullptr;
  const Battery* battery = nullptr;
  std::vector<Vec2> peer_claims;
  double t = 0.0;
  double dt = 0.0;
};

struct FsmOutputs {
  control::ReferencePoint reference;
  bool epm_cmd = false;
  bool remagnetize = false;
  std::optional<Vec2> claim;  // broadcast while pursuing or carrying
  std::vector<FsmEvent> events;
};

// Mission state machine for one agent: take off, sweep the assigned region,
// stoop on claimable confirmed tracks, pick up, deliver, resume the sweep,
// land when the battery runs down. Deleting the servo target track regresses
// the machine within one step; the magnet is only ever commanded on after
// check_ball has passed in the same servo episode.
class MissionFsm {
 public:
  MissionFsm(const coverage::ConvexRegion& region, const coverage::SweepPlan& plan,
             const MissionParams& params);

  FsmOutputs step(const FsmInputs& in);

  FsmState state() const { return state_; }
  ServoPhase phase() const { return phase_; }
  int64_t servo_track() const { return servo_track_id_; }
  size_t sweep_cursor() const { return cursor_; }
  const TargetSnapshot& target() const { return target_; }

 private:
  void abandon_servo(std::vector<FsmEvent>& events, const char* reason);

  coverage::ConvexRegion region_;
  coverage::SweepPlan plan_;
  MissionParams params_;

  FsmState state_ = FsmState::TakeOff;
  ServoPhase phase_ = ServoPhase::ConeDescent;
  size_t cursor_ = 0;
  int64_t servo_track_id_ = -1;
  TargetSnapshot target_;
  bool claim_active_ = false;
  bool magnet_cmd_ = false;
  double remag_timer_ = 0.0;
  double last_seen_stamp_ = -1.0;
  Vec2 land_xy_ = Vec2::Zero();
  bool anchored_ = false;
  bool delivered_any_ = false;
};

}  // namespace skypick::agent
