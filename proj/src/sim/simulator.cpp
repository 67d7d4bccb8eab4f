#include "sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "coverage/coverage.h"
#include "vision/detect.h"

namespace skypick::sim {

namespace {

// Straight-down camera, body axes aligned with the world: image x east,
// image y south, optical axis toward the ground.
geom::Rotation nadir_rotation() {
  Mat3 r;
  r << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  return geom::Rotation::from_matrix(r).value();
}

double smoothing(double dt, double tau) { return 1.0 - std::exp(-dt / tau); }

constexpr double kVelocityTau = 0.4;     // s, velocity estimate smoothing
constexpr double kWaypointTol = 0.5;     // m
constexpr double kCoverageCell = 0.5;    // m

}  // namespace

AgentRuntime::AgentRuntime(const Scenario& sc, const AgentSpec& spec, uint64_t master_seed)
    : sc_(&sc),
      spec_(spec),
      agent_count_(static_cast<int>(sc.agents.size())),
      grip_rng_(derive_seed(master_seed, "gripper", static_cast<uint64_t>(spec.id))) {
  for (const ColorSpec& c : sc.colors) {
    classes_.push_back(vision::color_class_around(c.name, c.rgb, sc.color_window.dl,
                                                  sc.color_window.da, sc.color_window.db));
  }
  // The launch point is surveyed, so the filter starts there with a tight
  // prior instead of waiting for the first fix.
  estimation::GpsFix home;
  home.stamp = 0.0;
  home.position = spec.start;
  home.sigma = 0.05;
  filter_ = estimation::init_filter(home, 0.0, 0.05).value();
  filter_.bias_walk = sc.sensors.bias_walk;

  if (spec.mode == AgentMode::Mission) {
    auto region = coverage::ConvexRegion::create(spec.region).value();
    coverage::SweepParams sweep;
    sweep.altitude = spec.altitude;
    sweep.fov = 2.0 * std::atan2(sc.camera.width / 2.0, sc.camera.fx);
    sweep.overlap = spec.overlap;
    auto plan = coverage::plan_sweep(region, sweep);
    agent::MissionParams mp;
    mp.servo = sc.servo;
    mp.drop_zone = sc.drop_zone.center;
    mp.drop_radius = sc.drop_zone.radius;
    fsm_.emplace(region, plan.has_value() ? plan.value() : coverage::SweepPlan{}, mp);
  }
}

AgentOutputs AgentRuntime::step(const AgentInputs& in) {
  AgentOutputs out;

  // Self-localization first: everything downstream uses the fused pose.
  estimation::propagate(filter_, in.odom);
  if (in.gps.has_value()) estimation::correct(filter_, *in.gps);
  if (in.dt > 0.0) {
    const Vec3 v_raw = in.odom.delta / in.dt;
    vel_est_ += smoothing(in.dt, kVelocityTau) * (v_raw - vel_est_);
  }
  const control::AgentKinematics kin{filter_.position(), vel_est_};

  // Gripper physics respond to last tick's command so the state machine can
  // react to the resulting contact and attach events below.
  agent::gripper_update(grip_, epm_cmd_, in.ferrous_distance, in.nearest_object, remag_cmd_,
                        in.dt, grip_rng_, sc_->gripper);
  remag_cmd_ = false;
  if (grip_.attached_object >= 0 && prev_attached_ < 0) {
    out.attached_object = grip_.attached_object;
  }
  if (grip_.attached_object < 0 && prev_attached_ >= 0) {
    out.released_object = prev_attached_;
  }
  prev_attached_ = grip_.attached_object;

  for (const NetMessage& m : in.messages) {
    auto it = peers_.find(m.sender);
    if (it == peers_.end() || m.stamp >= it->second.stamp) peers_[m.sender] = m;
  }

  if (in.image != nullptr) {
    geom::Pose cam{nadir_rotation(), kin.position};
    vision::DetectStats stats;
    const auto detections = vision::detect_objects(*in.image, cam, sc_->camera, classes_,
                                                   sc_->detect, in.t, &stats);
    out.detections = static_cast<int>(detections.size());
    const double dt_track = last_perception_ < 0.0 ? 0.0 : in.t - last_perception_;
    tracking::tracker_step(tracker_, detections, dt_track, in.t, sc_->kf);
    last_perception_ = in.t;
    for (const auto& tr : tracker_.tracks) {
      if (tr.confirmed && announced_tracks_.insert(tr.id).second) {
        out.events.push_back({"detect", std::to_string(tr.id) + ":" + tr.color});
      }
    }
  }

  agent::battery_step(battery_, in.dt, 1.0);

  std::vector<Vec2> peer_claims;
  for (const auto& [id, msg] : peers_) {
    peer_claims.insert(peer_claims.end(), msg.claims.begin(), msg.claims.end());
  }

  control::ReferencePoint ref;
  switch (spec_.mode) {
    case AgentMode::Mission: {
      std::vector<tracking::Track> confirmed;
      for (const auto& tr : tracker_.tracks) {
        if (tr.confirmed) confirmed.push_back(tr);
      }
      agent::FsmInputs fin;
      fin.kin = kin;
      fin.confirmed_tracks = &confirmed;
      fin.gripper = &grip_;
      fin.battery = &battery_;
      fin.peer_claims = peer_claims;
      fin.t = in.t;
      fin.dt = in.dt;
      agent::FsmOutputs fout = fsm_->step(fin);
      ref = fout.reference;
      epm_cmd_ = fout.epm_cmd;
      if (fout.remagnetize) remag_cmd_ = true;
      if (fout.claim.has_value()) out.claims.push_back(*fout.claim);
      out.events.insert(out.events.end(), fout.events.begin(), fout.events.end());
      out.state_name = agent::fsm_state_name(fsm_->state());
      out.phase_name = fsm_->state() == agent::FsmState::Servo
                           ? agent::servo_phase_name(fsm_->phase())
                           : "-";
      break;
    }
    case AgentMode::FixedGoal: {
      ref.position = spec_.goal;
      if (spec_.claiming) out.claims.push_back(spec_.goal.head<2>());
      out.state_name = "fixed_goal";
      break;
    }
    case AgentMode::Waypoints: {
      if (wp_cursor_ + 1 < spec_.waypoints.size() &&
          (kin.position - spec_.waypoints[wp_cursor_]).norm() < kWaypointTol) {
        ++wp_cursor_;
      }
      ref.position = spec_.waypoints[wp_cursor_];
      out.state_name = "waypoints";
      break;
    }
  }
  out.claiming = !out.claims.empty();

  // A peer gone quiet means its whereabouts are unknown: hold position and
  // keep avoiding on the last data rather than flying the mission blind.
  bool stale = false;
  for (int id = 0; id < agent_count_; ++id) {
    if (id == spec_.id) continue;
    auto it = peers_.find(id);
    if (it == peers_.end() || in.t - it->second.stamp > sc_->avoidance.stale_after) {
      stale = true;
      break;
    }
  }
  if (stale) {
    ref.position = kin.position;
    ref.velocity = Vec3::Zero();
  }

  Vec3 desired = control::track_reference(kin, ref, observer_.estimate, sc_->gains);
  std::vector<control::ObstacleState> obstacles;
  for (const auto& [id, msg] : peers_) {
    control::ObstacleState o;
    o.agent_id = id;
    o.position = msg.position + msg.velocity * std::max(0.0, in.t - msg.stamp);
    o.velocity = msg.velocity;
    o.stamp = msg.stamp;
    o.claiming = msg.claiming;
    obstacles.push_back(o);
  }
  const control::PriorityRank rank{out.claiming, spec_.id};
  auto avoided =
      control::avoid(desired, kin, obstacles, rank, sc_->avoidance, in.t, !stale);
  Vec3 accel = avoided.has_value() ? avoided.value() : desired;

  if (in.dt > 0.0) {
    control::estimate_disturbance(observer_, (vel_est_ - prev_vel_est_) / in.dt,
                                  last_cmd_accel_, in.dt);
  }
  prev_vel_est_ = vel_est_;
  last_cmd_accel_ = accel;

  out.accel = accel;
  out.epm = epm_cmd_;
  out.position_est = kin.position;
  out.velocity_est = vel_est_;
  out.reference = ref;
  return out;
}

Simulator::Simulator(const Scenario& sc)
    : sc_(sc),
      bus_(sc.network, static_cast<int>(sc.agents.size()),
           derive_seed(sc.seed, "network", 0)) {
  const size_t n = sc_.agents.size();
  kin_.resize(n);
  prev_pos_.resize(n);
  inbox_.resize(n);
  accel_.assign(n, Vec3::Zero());
  outgoing_.resize(n);
  frames_.resize(n);
  for (size_t i = 0; i < n; ++i) {
    kin_[i].position = sc_.agents[i].start;
    prev_pos_[i] = sc_.agents[i].start;
    sensors_.emplace_back(sc_.sensors, derive_seed(sc_.seed, "sensors", i));
    runtimes_.push_back(std::make_unique<AgentRuntime>(sc_, sc_.agents[i], sc_.seed));
  }
  for (const ObjectSpec& spec : sc_.objects) {
    ObjectState o;
    o.position = spec.start;
    o.velocity = spec.velocity;
    objects_.push_back(o);
  }
  // Rasterize each mission region once; the run marks cells as the true
  // camera footprint passes over them.
  for (const AgentSpec& a : sc_.agents) {
    if (a.mode != AgentMode::Mission) continue;
    auto region = coverage::ConvexRegion::create(a.region);
    if (!region.has_value()) continue;
    CoverageGrid grid;
    grid.agent = a.id;
    double xmin = a.region[0].x(), xmax = xmin, ymin = a.region[0].y(), ymax = ymin;
    for (const Vec2& v : a.region) {
      xmin = std::min(xmin, v.x());
      xmax = std::max(xmax, v.x());
      ymin = std::min(ymin, v.y());
      ymax = std::max(ymax, v.y());
    }
    for (double y = ymin + kCoverageCell / 2; y < ymax; y += kCoverageCell) {
      for (double x = xmin + kCoverageCell / 2; x < xmax; x += kCoverageCell) {
        if (region.value().contains(Vec2(x, y))) grid.centers.emplace_back(x, y);
      }
    }
    grid.seen.assign(grid.centers.size(), 0);
    coverage_.push_back(std::move(grid));
  }
}

Err Simulator::open_logs(const std::string& dir) { return logs_.open(dir); }

void Simulator::commit_gripper(int agent_id, const AgentOutputs& out, double t) {
  if (out.attached_object >= 0 && out.attached_object < static_cast<int>(objects_.size())) {
    ObjectState& o = objects_[out.attached_object];
    if (o.phase == ObjectPhase::OnGround) {
      o.phase = ObjectPhase::Attached;
      o.attached_to = agent_id;
      o.attached_at = t;
      // How far the belief about the grasped object sat from the truth.
      const AgentRuntime& rt = *runtimes_[agent_id];
      if (rt.fsm() != nullptr) {
        for (const auto& tr : rt.tracker().tracks) {
          if (tr.id == rt.fsm()->servo_track()) {
            const Vec3 truth(o.position.x(), o.position.y(), 0.0);
            grasp_track_errors_.push_back((tr.position() - truth).norm());
            break;
          }
        }
      }
    }
  }
  if (out.released_object >= 0 && out.released_object < static_cast<int>(objects_.size())) {
    ObjectState& o = objects_[out.released_object];
    if (o.phase == ObjectPhase::Attached && o.attached_to == agent_id) {
      const Vec2 at = kin_[agent_id].position.head<2>();
      o.position = at;
      o.velocity = Vec2::Zero();
      if ((at - sc_.drop_zone.center).norm() <= sc_.drop_zone.radius) {
        o.phase = ObjectPhase::Delivered;
        o.delivered_at = t;
        ++delivered_;
        pickup_durations_.push_back(t - o.attached_at);
      } else {
        o.phase = ObjectPhase::OnGround;
      }
      o.attached_to = -1;
    }
  }
}

void Simulator::tick() {
  const double t = tick_count_ * sc_.dt;
  const double dt = sc_.dt;
  const size_t n = sc_.agents.size();

  // (1) Object motion.
  for (ObjectState& o : objects_) step_object(o, sc_.arena, dt);

  // (2) Sensors: odometry increments, GPS fixes, rendered frames.
  const bool perception =
      tick_count_ % sc_.perception_every == 0 && !sc_.colors.empty();
  std::vector<estimation::OdomReading> odom(n);
  std::vector<std::optional<estimation::GpsFix>> gps(n);
  for (size_t i = 0; i < n; ++i) {
    const Vec3 delta = kin_[i].position - prev_pos_[i];
    odom[i] = sensors_[i].odom_step(delta, dt, t);
    gps[i] = sensors_[i].maybe_fix(kin_[i].position, t);
    prev_pos_[i] = kin_[i].position;
    frames_[i].reset();
  }
  if (perception) {
    std::vector<vision::GroundDisc> discs;
    for (size_t k = 0; k < objects_.size(); ++k) {
      if (objects_[k].phase == ObjectPhase::Attached) continue;
      vision::GroundDisc d;
      d.center = objects_[k].position;
      d.diameter = sc_.objects[k].diameter;
      for (const ColorSpec& c : sc_.colors) {
        if (c.name == sc_.objects[k].color) d.rgb = c.rgb;
      }
      discs.push_back(d);
    }
    for (size_t i = 0; i < n; ++i) {
      if (kin_[i].position.z() < 0.2) continue;  // on the ground: no usable view
      vision::RenderParams rp = sc_.render;
      rp.seed = derive_seed(sc_.seed, "render",
                            static_cast<uint64_t>(tick_count_) * n + i);
      geom::Pose cam{nadir_rotation(), kin_[i].position};
      frames_[i] = vision::render_scene(discs, cam, sc_.camera, rp);
    }
  }

  // (3) Per-agent pipeline, ascending id. Gripper attach and release are
  // committed to the world inline so a later agent cannot grab the same
  // object in the same tick.
  for (size_t i = 0; i < n; ++i) {
    AgentInputs in;
    in.t = t;
    in.dt = dt;
    in.image = frames_[i].has_value() ? &*frames_[i] : nullptr;
    in.odom = odom[i];
    in.gps = gps[i];
    in.messages = std::move(inbox_[i]);
    inbox_[i].clear();
    in.ferrous_distance = 1e9;
    in.nearest_object = -1;
    for (size_t k = 0; k < objects_.size(); ++k) {
      if (objects_[k].phase != ObjectPhase::OnGround) continue;
      const Vec3 center(objects_[k].position.x(), objects_[k].position.y(), 0.0);
      const double d = std::max(
          0.0, (kin_[i].position - center).norm() - 0.5 * sc_.objects[k].diameter);
      if (d < in.ferrous_distance) {
        in.ferrous_distance = d;
        in.nearest_object = static_cast<int>(k);
      }
    }

    AgentOutputs out = runtimes_[i]->step(in);
    commit_gripper(static_cast<int>(i), out, t);
    accel_[i] = out.accel;

    NetMessage msg;
    msg.sender = static_cast<int>(i);
    msg.stamp = t;
    msg.position = out.position_est;
    msg.velocity = out.velocity_est;
    msg.claiming = out.claiming;
    msg.claims = out.claims;
    outgoing_[i] = msg;

    detections_ += out.detections;
    for (const auto& ev : out.events) {
      if (ev.name == "contact") ++grasp_attempts_;
      if (ev.name == "grasp_fail") ++grasp_failures_;
      logs_.event(t, static_cast<int>(i), ev.name, ev.detail);
    }

    logs_.estimate(t, static_cast<int>(i), runtimes_[i]->fusion().position(),
                   runtimes_[i]->fusion().bias());
    logs_.reference(t, static_cast<int>(i), out.state_name, out.phase_name,
                    out.reference.position);
    logs_.pose(t, static_cast<int>(i), kin_[i].position, kin_[i].velocity);
    if (perception) {
      for (const auto& tr : runtimes_[i]->tracker().tracks) {
        logs_.track(t, static_cast<int>(i), tr.id, tr.color, tr.position(), tr.velocity(),
                    tr.confirmed);
      }
    }
  }

  // Fusion evaluation samples are taken at the estimate stamp, against the
  // truth those sensors saw.
  if (sc_.fusion_eval && n > 0) {
    truth_path_.stamps.push_back(t);
    truth_path_.positions.push_back(kin_[0].position);
    fused_path_.stamps.push_back(t);
    fused_path_.positions.push_back(runtimes_[0]->fusion().position());
    odom_dr_ += odom[0].delta;
    if (gps[0].has_value()) {
      gps_err2_ += (gps[0]->position - kin_[0].position).squaredNorm();
      ++gps_count_;
    }
  }

  // (4) Broadcast.
  if (tick_count_ % sc_.broadcast_every == 0) {
    for (size_t i = 0; i < n; ++i) bus_.send(outgoing_[i], t);
  }

  // (5) Dynamics, then carried objects follow their carriers.
  for (size_t i = 0; i < n; ++i) {
    kin_[i] = control::step_dynamics(kin_[i], accel_[i], sc_.wind, dt, sc_.plant);
    if (kin_[i].position.z() <= 0.0) {
      kin_[i].position.z() = 0.0;
      if (kin_[i].velocity.z() < 0.0) kin_[i].velocity.z() = 0.0;
    }
  }
  for (ObjectState& o : objects_) {
    if (o.phase == ObjectPhase::Attached) {
      o.position = kin_[o.attached_to].position.head<2>();
    }
  }

  // (6) Network delivery.
  for (size_t i = 0; i < n; ++i) {
    auto arrived = bus_.deliver(static_cast<int>(i), t);
    for (auto& m : arrived) inbox_[i].push_back(std::move(m));
  }

  // (7) End-of-tick metrics over the advanced true state.
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      min_dist_ = std::min(min_dist_, (kin_[i].position - kin_[j].position).norm());
    }
  }
  const double fov = 2.0 * std::atan2(sc_.camera.width / 2.0, sc_.camera.fx);
  for (CoverageGrid& grid : coverage_) {
    const auto fp = coverage::camera_footprint(kin_[grid.agent].position, fov);
    if (fp.half_width <= 0.0) continue;
    for (size_t c = 0; c < grid.centers.size(); ++c) {
      if (grid.seen[c]) continue;
      const Vec2 d = grid.centers[c] - fp.center;
      if (std::abs(d.x()) <= fp.half_width && std::abs(d.y()) <= fp.half_width) {
        grid.seen[c] = 1;
      }
    }
  }

  ++tick_count_;
}

void Simulator::run() {
  const long long total = static_cast<long long>(std::ceil(sc_.duration / sc_.dt));
  while (tick_count_ < total) {
    tick();
    if (!objects_.empty()) {
      bool all_delivered = true;
      for (const ObjectState& o : objects_) {
        all_delivered = all_delivered && o.phase == ObjectPhase::Delivered;
      }
      bool all_landed = true;
      for (const auto& k : kin_) {
        all_landed = all_landed && k.position.z() <= 0.05 && k.velocity.norm() < 0.05;
      }
      if (all_delivered && all_landed) break;
    }
  }
  logs_.close();
}

Metrics Simulator::finalize() {
  Metrics m;
  m.objects = static_cast<int>(objects_.size());
  m.delivered = delivered_;
  m.pickup_durations = pickup_durations_;
  m.grasp_track_errors = grasp_track_errors_;
  if (sc_.agents.size() >= 2) m.min_agent_distance = min_dist_;
  if (!coverage_.empty()) {
    size_t seen = 0, total = 0;
    for (const CoverageGrid& g : coverage_) {
      total += g.seen.size();
      for (uint8_t s : g.seen) seen += s;
    }
    m.coverage_fraction = total == 0 ? 0.0 : static_cast<double>(seen) / total;
  }
  m.detections = detections_;
  m.grasp_attempts = grasp_attempts_;
  m.grasp_failures = grasp_failures_;
  for (size_t i = 0; i < sc_.agents.size(); ++i) {
    if (sc_.agents[i].mode == AgentMode::FixedGoal) {
      m.final_goal_distance.push_back((kin_[i].position - sc_.agents[i].goal).norm());
    }
  }
  if (sc_.fusion_eval && !truth_path_.stamps.empty()) {
    Metrics::Fusion f;
    auto aligned = estimation::rmse_aligned(fused_path_, truth_path_);
    if (aligned.has_value()) f.fused_rmse_aligned = aligned.value().rmse;
    auto raw = estimation::rmse_raw(fused_path_, truth_path_);
    if (raw.has_value()) f.fused_rmse_raw = raw.value();
    f.gps_rmse = gps_count_ > 0 ? std::sqrt(gps_err2_ / (3.0 * gps_count_)) : 0.0;
    const Vec3 odom_end = sc_.agents[0].start + odom_dr_;
    f.odom_end_error = (odom_end - truth_path_.positions.back()).norm();
    m.fusion = f;
  }
  m.duration = tick_count_ * sc_.dt;
  m.ticks = tick_count_;
  m.seed = sc_.seed;
  return m;
}

std::string Metrics::to_json() const {
  nlohmann::json j;
  j["objects"] = objects;
  j["delivered"] = delivered;
  j["pickup_durations"] = pickup_durations;
  j["grasp_track_errors"] = grasp_track_errors;
  if (min_agent_distance.has_value()) j["min_agent_distance"] = *min_agent_distance;
  if (coverage_fraction.has_value()) j["coverage_fraction"] = *coverage_fraction;
  j["detections"] = detections;
  j["grasp_attempts"] = grasp_attempts;
  j["grasp_failures"] = grasp_failures;
  j["final_goal_distance"] = final_goal_distance;
  if (fusion.has_value()) {
    j["fusion"] = {{"fused_rmse_aligned", fusion->fused_rmse_aligned},
                   {"fused_rmse_raw", fusion->fused_rmse_raw},
                   {"gps_rmse", fusion->gps_rmse},
                   {"odom_end_error", fusion->odom_end_error}};
  }
  j["duration"] = duration;
  j["ticks"] = ticks;
  j["seed"] = seed;
  return j.dump(2) + "\n";
}

RunOutcome run_scenario(const Scenario& sc, const std::string& out_dir) {
  Simulator sim(sc);
  const Err log_err = sim.open_logs(out_dir);
  if (log_err != Err::None) {
    return {log_err, "cannot write logs under '" + out_dir + "'", ""};
  }
  sim.run();
  const std::string metrics = sim.finalize().to_json();
  if (!out_dir.empty()) {
    std::ofstream f(std::filesystem::path(out_dir) / "metrics.json",
                    std::ios::binary | std::ios::trunc);
    if (!f) return {Err::Io, "cannot write metrics.json", metrics};
    f << metrics;
  }
  return {Err::None, "", metrics};
}

}  // namespace skypick::sim
