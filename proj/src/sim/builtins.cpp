#include "sim/builtins.h"

namespace skypick::sim {

namespace {

// Precise positioning profile used by the pickup and collision setups,
// standing in for an RTK-grade receiver. The looser SensorParams defaults
// model the plain GPS characterized by the fusion evaluation.
void rtk_sensors(Scenario& sc) {
  sc.sensors.gps_sigma = 0.03;
  sc.sensors.odom_sigma = 0.004;
  sc.sensors.gps_rate = 5.0;
  sc.sensors.bias_walk = 1e-4;
}

void strong_avoidance(Scenario& sc) {
  sc.avoidance.d_min = 1.0;
  sc.avoidance.d_soft = 3.0;
  sc.avoidance.k_rep = 20.0;
}

Scenario collision() {
  Scenario sc;
  sc.name = "collision";
  sc.duration = 20.0;
  sc.arena = {-10.0, 10.0, -10.0, 10.0};
  sc.drop_zone = {{8.0, 8.0}, 2.0};
  sc.colors = {{"red", {255, 0, 0}}};
  sc.objects = {{Vec2(0.0, 0.0), Vec2::Zero(), "red", 0.2}};
  sc.render.noise_sigma = 2.0;
  rtk_sensors(sc);
  strong_avoidance(sc);

  // Both agents are sent to the servo point above the same object and both
  // call dibs, so the rank tie falls to the lower id.
  AgentSpec a0;
  a0.id = 0;
  a0.mode = AgentMode::FixedGoal;
  a0.start = Vec3(-6.0, 0.0, 0.0);
  a0.goal = Vec3(0.0, 0.0, 1.2);
  a0.claiming = true;
  AgentSpec a1 = a0;
  a1.id = 1;
  a1.start = Vec3(6.0, 0.0, 0.0);
  sc.agents = {a0, a1};
  return sc;
}

Scenario pickup_base() {
  Scenario sc;
  sc.duration = 120.0;
  sc.arena = {0.0, 20.0, 0.0, 15.0};
  sc.drop_zone = {{18.0, 13.5}, 2.0};
  sc.colors = {{"red", {255, 0, 0}}};
  sc.render.noise_sigma = 2.0;
  rtk_sensors(sc);
  strong_avoidance(sc);

  AgentSpec a;
  a.id = 0;
  a.mode = AgentMode::Mission;
  a.start = Vec3(1.0, 1.0, 0.0);
  a.region = {Vec2(0.0, 0.0), Vec2(20.0, 0.0), Vec2(20.0, 15.0), Vec2(0.0, 15.0)};
  a.altitude = 5.0;
  a.overlap = 0.2;
  sc.agents = {a};
  return sc;
}

Scenario static_pickup() {
  Scenario sc = pickup_base();
  sc.name = "static-pickup";
  sc.objects = {{Vec2(14.0, 10.0), Vec2::Zero(), "red", 0.2}};
  return sc;
}

Scenario moving_pickup() {
  Scenario sc = pickup_base();
  sc.name = "moving-pickup";
  // 1 km/h along the first sweep lane's footprint.
  sc.objects = {{Vec2(4.0, 4.0), Vec2(0.278, 0.0), "red", 0.2}};
  sc.gripper.p_grasp = 1.0;
  return sc;
}

Scenario fusion_eval() {
  Scenario sc;
  sc.name = "fusion-eval";
  sc.duration = 60.0;
  sc.dt = 0.01;
  sc.arena = {-5.0, 30.0, -5.0, 30.0};
  sc.fusion_eval = true;

  AgentSpec a;
  a.id = 0;
  a.mode = AgentMode::Waypoints;
  a.start = Vec3(0.0, 0.0, 0.0);
  // A 90 m square loop.
  a.waypoints = {Vec3(0.0, 0.0, 5.0), Vec3(22.5, 0.0, 5.0), Vec3(22.5, 22.5, 5.0),
                 Vec3(0.0, 22.5, 5.0), Vec3(0.0, 0.0, 5.0)};
  sc.agents = {a};
  return sc;
}

Scenario full_arena() {
  Scenario sc;
  sc.name = "full-arena";
  sc.duration = 180.0;
  sc.arena = {0.0, 40.0, 0.0, 30.0};
  sc.drop_zone = {{20.0, 2.0}, 2.0};
  sc.colors = {{"red", {230, 30, 30}}, {"green", {40, 200, 60}}, {"blue", {50, 90, 230}}};
  sc.objects = {{Vec2(6.0, 20.0), Vec2::Zero(), "red", 0.2},
                {Vec2(20.0, 8.0), Vec2(0.2, 0.1), "green", 0.2},
                {Vec2(33.0, 25.0), Vec2::Zero(), "blue", 0.2}};
  sc.render.noise_sigma = 2.0;
  sc.network.drop_rate = 0.02;
  rtk_sensors(sc);
  strong_avoidance(sc);

  const double w = 40.0 / 3.0;
  for (int i = 0; i < 3; ++i) {
    AgentSpec a;
    a.id = i;
    a.mode = AgentMode::Mission;
    a.start = Vec3(2.0 + 13.0 * i, 2.0, 0.0);
    const double x0 = w * i;
    const double x1 = w * (i + 1);
    a.region = {Vec2(x0, 0.0), Vec2(x1, 0.0), Vec2(x1, 30.0), Vec2(x0, 30.0)};
    a.altitude = 5.0;
    a.overlap = 0.2;
    sc.agents.push_back(a);
  }
  return sc;
}

Scenario detection_map() {
  Scenario sc;
  sc.name = "detection-map";
  sc.kind = ScenarioKind::DetectionMap;
  return sc;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {
      "collision", "moving-pickup", "static-pickup", "fusion-eval", "detection-map",
      "full-arena"};
  return names;
}

std::optional<Scenario> builtin_scenario(const std::string& name) {
  if (name == "collision") return collision();
  if (name == "moving-pickup") return moving_pickup();
  if (name == "static-pickup") return static_pickup();
  if (name == "fusion-eval") return fusion_eval();
  if (name == "detection-map") return detection_map();
  if (name == "full-arena") return full_arena();
  return std::nullopt;
}

}  // namespace skypick::sim
