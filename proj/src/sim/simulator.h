#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "agent/fsm.h"
#include "agent/gripper.h"
#include "control/control.h"
#include "estimation/fusion.h"
#include "estimation/rmse.h"
#include "estimation/sensors.h"
#include "sim/logging.h"
#include "sim/network.h"
#include "sim/scenario.h"
#include "sim/world.h"
#include "tracking/tracker.h"
#include "vision/render.h"

namespace skypick::sim {

// Everything one agent is allowed to see in a tick: its own sensor data and
// the broadcast messages already delivered to it. No world access.
struct AgentInputs {
  double t = 0.0;
  double dt = 0.0;
  const vision::Image* image = nullptr;  // camera frame, perception ticks only
  estimation::OdomReading odom;
  std::optional<estimation::GpsFix> gps;
  std::vector<NetMessage> messages;
  double ferrous_distance = 1e9;  // gripper proximity sense
  int nearest_object = -1;
};

struct AgentOutputs {
  Vec3 accel = Vec3::Zero();
  bool epm = false;
  // World-side bookkeeping requests, derived from the gripper transitions.
  int attached_object = -1;  // became attached this tick
  int released_object = -1;  // became detached this tick
  // Broadcast content.
  Vec3 position_est = Vec3::Zero();
  Vec3 velocity_est = Vec3::Zero();
  bool claiming = false;
  std::vector<Vec2> claims;
  // Logging.
  control::ReferencePoint reference;
  const char* state_name = "-";
  const char* phase_name = "-";
  std::vector<agent::FsmEvent> events;
  int detections = 0;
};

// One agent's complete onboard pipeline: estimation, perception, tracking,
// mission logic, control and the gripper. Steps on AgentInputs alone, which
// is what keeps the system decentralized.
class AgentRuntime {
 public:
  AgentRuntime(const Scenario& sc, const AgentSpec& spec, uint64_t master_seed);

  AgentOutputs step(const AgentInputs& in);

  // Introspection for tests and logging. The mutable accessors exist so a
  // test can perturb one agent's private state and observe that the others
  // are unaffected until a broadcast tells them.
  estimation::FusionFilter& fusion() { return filter_; }
  const estimation::FusionFilter& fusion() const { return filter_; }
  tracking::TrackerState& tracker() { return tracker_; }
  const tracking::TrackerState& tracker() const { return tracker_; }
  const agent::GripperState& gripper() const { return grip_; }
  const agent::Battery& battery() const { return battery_; }
  const agent::MissionFsm* fsm() const { return fsm_ ? &*fsm_ : nullptr; }
  Vec3 velocity_estimate() const { return vel_est_; }
  const AgentSpec& spec() const { return spec_; }

 private:
  const Scenario* sc_;
  AgentSpec spec_;
  std::vector<vision::ColorClass> classes_;
  int agent_count_;

  estimation::FusionFilter filter_;
  Vec3 vel_est_ = Vec3::Zero();
  Vec3 prev_vel_est_ = Vec3::Zero();
  Vec3 last_cmd_accel_ = Vec3::Zero();
  control::DisturbanceObserver observer_;
  tracking::TrackerState tracker_;
  double last_perception_ = -1.0;
  std::set<int64_t> announced_tracks_;
  std::optional<agent::MissionFsm> fsm_;
  size_t wp_cursor_ = 0;
  agent::GripperState grip_;
  int prev_attached_ = -1;
  agent::Battery battery_;
  RandomStream grip_rng_;
  bool epm_cmd_ = false;
  bool remag_cmd_ = false;
  std::map<int, NetMessage> peers_;  // latest broadcast per sender
};

struct Metrics {
  int objects = 0;
  int delivered = 0;
  std::vector<double> pickup_durations;
  std::vector<double> grasp_track_errors;  // track-to-truth distance at attach
  std::optional<double> min_agent_distance;
  std::optional<double> coverage_fraction;
  long long detections = 0;
  int grasp_attempts = 0;
  int grasp_failures = 0;
  std::vector<double> final_goal_distance;  // fixed-goal agents, in id order
  // Fusion evaluation block (agent 0), when the scenario asks for it.
  struct Fusion {
    double fused_rmse_aligned = 0.0;
    double fused_rmse_raw = 0.0;
    double gps_rmse = 0.0;
    double odom_end_error = 0.0;
  };
  std::optional<Fusion> fusion;
  double duration = 0.0;
  long long ticks = 0;
  uint64_t seed = 0;

  std::string to_json() const;
};

class Simulator {
 public:
  explicit Simulator(const Scenario& sc);
  Simulator(const Simulator&) = delete;
  Simulator& operator=(const Simulator&) = delete;

  // Empty dir keeps the run log-free.
  Err open_logs(const std::string& dir);

  void tick();
  void run();  // until duration, or all objects delivered and agents landed
  Metrics finalize();

  double time() const { return tick_count_ * sc_.dt; }
  long long ticks() const { return tick_count_; }
  AgentRuntime& runtime(size_t i) { return *runtimes_[i]; }
  const control::AgentKinematics& true_state(size_t i) const { return kin_[i]; }
  const std::vector<ObjectState>& objects() const { return objects_; }
  const Scenario& scenario() const { return sc_; }

 private:
  void commit_gripper(int agent_id, const AgentOutputs& out, double t);

  Scenario sc_;
  std::vector<control::AgentKinematics> kin_;
  std::vector<Vec3> prev_pos_;
  std::vector<ObjectState> objects_;
  std::vector<estimation::SensorSim> sensors_;
  std::vector<std::unique_ptr<AgentRuntime>> runtimes_;
  BroadcastBus bus_;
  std::vector<std::vector<NetMessage>> inbox_;
  RunLogs logs_;
  long long tick_count_ = 0;

  // Scratch, reused across stages of one tick.
  std::vector<Vec3> accel_;
  std::vector<NetMessage> outgoing_;
  std::vector<std::optional<vision::Image>> frames_;

  // Metrics accumulation.
  double min_dist_ = std::numeric_limits<double>::infinity();
  int delivered_ = 0;
  std::vector<double> pickup_durations_;
  std::vector<double> grasp_track_errors_;
  long long detections_ = 0;
  int grasp_attempts_ = 0;
  int grasp_failures_ = 0;

  // Coverage oracle grid: cell centers of each mission agent's region.
  struct CoverageGrid {
    int agent = 0;
    std::vector<Vec2> centers;
    std::vector<uint8_t> seen;
  };
  std::vector<CoverageGrid> coverage_;

  // Fusion evaluation recording (agent 0).
  estimation::TimedPath truth_path_;
  estimation::TimedPath fused_path_;
  Vec3 odom_dr_ = Vec3::Zero();
  double gps_err2_ = 0.0;
  long long gps_count_ = 0;
};

// Load-and-go entry used by the C API and the CLI. Writes the five CSV logs
// and metrics.json under out_dir (if non-empty) and returns the metrics JSON.
struct RunOutcome {
  Err err = Err::None;
  std::string message;
  std::string metrics_json;
};
RunOutcome run_scenario(const Scenario& sc, const std::string& out_dir);

}  // namespace skypick::sim
