#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "agent/fsm.h"
#include "agent/gripper.h"
#include "control/control.h"
#include "core/result.h"
#include "estimation/sensors.h"
#include "geometry/geometry.h"
#include "sim/network.h"
#include "sim/world.h"
#include "tracking/kalman.h"
#include "vision/detect.h"
#include "vision/render.h"

namespace skypick::sim {

enum class AgentMode { Mission, FixedGoal, Waypoints };

struct AgentSpec {
  int id = 0;
  AgentMode mode = AgentMode::Mission;
  Vec3 start = Vec3::Zero();
  // Mission mode: assigned search region and sweep parameters.
  std::vector<Vec2> region;
  double altitude = 5.0;
  double overlap = 0.2;
  // FixedGoal mode.
  Vec3 goal = Vec3::Zero();
  bool claiming = false;
  // Waypoints mode: visited once, then the last one is held.
  std::vector<Vec3> waypoints;
};

struct ColorSpec {
  std::string name;
  std::array<uint8_t, 3> rgb{0, 0, 0};
};

// Half widths of the Lab acceptance box around each palette color.
struct ColorWindow {
  double dl = 25.0;
  double da = 20.0;
  double db = 25.0;
};

struct DropZone {
  Vec2 center = Vec2::Zero();
  double radius = 2.0;
};

enum class ScenarioKind { Mission, DetectionMap };

// Parameters of the detection error sweep: one rendered frame per grid cell
// and altitude, object centered on that cell's pixel.
struct DetectionMapParams {
  std::vector<double> altitudes{5.0, 7.5, 10.0};
  int grid_cols = 9;
  int grid_rows = 7;
  double object_diameter = 1.0;
  geom::CameraIntrinsics camera{800.0, 800.0, 512.0, 384.0, 1024, 768};
  double vignette = 0.55;
  double noise_sigma = 2.0;
  std::array<uint8_t, 3> rgb{255, 0, 0};
};

struct Scenario {
  std::string name = "scenario";
  ScenarioKind kind = ScenarioKind::Mission;
  double duration = 60.0;
  double dt = 0.02;
  uint64_t seed = 1;
  int perception_every = 5;  // camera ticks
  int broadcast_every = 5;   // network ticks
  ArenaBounds arena;
  Vec3 wind = Vec3::Zero();
  DropZone drop_zone{{20.0, 2.0}, 2.0};
  std::vector<ColorSpec> colors;
  ColorWindow color_window;
  std::vector<ObjectSpec> objects;
  geom::CameraIntrinsics camera{160.0, 160.0, 160.0, 120.0, 320, 240};
  vision::RenderParams render;
  NetworkParams network;
  estimation::SensorParams sensors;
  control::Gains gains;
  control::AvoidanceParams avoidance;
  control::PlantParams plant;
  agent::GripperParams gripper;
  agent::ServoParams servo;
  tracking::KfParams kf;
  vision::DetectParams detect;
  bool fusion_eval = false;
  std::vector<AgentSpec> agents;
  DetectionMapParams detection_map;
};

// Loader outcome: either a scenario or a diagnostic naming the offending
// field. Unknown keys are rejected.
struct ScenarioLoad {
  std::optional<Scenario> scenario;
  Err err = Err::None;
  std::string message;
};

ScenarioLoad scenario_from_json_text(const std::string& text);
ScenarioLoad load_scenario_file(const std::string& path);

// Cross-field checks shared by the JSON loader and programmatic configs.
ScenarioLoad validate_scenario(Scenario sc);

}  // namespace skypick::sim
