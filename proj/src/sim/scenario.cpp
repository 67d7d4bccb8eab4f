#include "sim/scenario.h"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "coverage/coverage.h"

namespace skypick::sim {

namespace {

using nlohmann::json;

// Parse failure carrying the field path.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (ok.count(it.key()) == 0) fail(path, "unknown key '" + it.key() + "'");
  }
}

double get_num(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

double field_num(const json& j, const char* key, const std::string& path, double fallback) {
  if (!j.contains(key)) return fallback;
  return get_num(j.at(key), path + "." + key);
}

int field_int(const json& j, const char* key, const std::string& path, int fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) fail(path + "." + key, "expected an integer");
  return v.get<int>();
}

bool field_bool(const json& j, const char* key, const std::string& path, bool fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_boolean()) fail(path + "." + key, "expected a boolean");
  return v.get<bool>();
}

std::string field_str(const json& j, const char* key, const std::string& path,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) fail(path + "." + key, "expected a string");
  return v.get<std::string>();
}

Vec3 get_vec3(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected [x, y, z]");
  return Vec3(get_num(j[0], path + "[0]"), get_num(j[1], path + "[1]"),
              get_num(j[2], path + "[2]"));
}

Vec2 get_vec2(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) fail(path, "expected [x, y]");
  return Vec2(get_num(j[0], path + "[0]"), get_num(j[1], path + "[1]"));
}

std::array<uint8_t, 3> get_rgb(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected [r, g, b]");
  std::array<uint8_t, 3> out{};
  for (size_t i = 0; i < 3; ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_number_integer()) fail(p, "expected an integer 0..255");
    const int v = j[i].get<int>();
    if (v < 0 || v > 255) fail(p, "expected an integer 0..255");
    out[i] = static_cast<uint8_t>(v);
  }
  return out;
}

void parse_arena(const json& j, const std::string& path, ArenaBounds& a) {
  check_keys(j, path, {"xmin", "xmax", "ymin", "ymax"});
  a.xmin = field_num(j, "xmin", path, a.xmin);
  a.xmax = field_num(j, "xmax", path, a.xmax);
  a.ymin = field_num(j, "ymin", path, a.ymin);
  a.ymax = field_num(j, "ymax", path, a.ymax);
  if (a.xmax <= a.xmin || a.ymax <= a.ymin) fail(path, "empty arena");
}

void parse_camera(const json& j, const std::string& path, geom::CameraIntrinsics& c) {
  check_keys(j, path, {"fx", "fy", "cx", "cy", "width", "height"});
  c.width = field_int(j, "width", path, c.width);
  c.height = field_int(j, "height", path, c.height);
  c.fx = field_num(j, "fx", path, c.fx);
  c.fy = field_num(j, "fy", path, c.fy);
  c.px = field_num(j, "cx", path, c.width / 2.0);
  c.py = field_num(j, "cy", path, c.height / 2.0);
  if (c.width <= 0 || c.height <= 0 || c.fx <= 0.0 || c.fy <= 0.0) {
    fail(path, "camera dimensions and focal lengths must be positive");
  }
}

AgentSpec parse_agent(const json& j, const std::string& path) {
  check_keys(j, path,
             {"id", "mode", "start", "region", "altitude", "overlap", "goal", "claiming",
              "waypoints"});
  AgentSpec a;
  if (!j.contains("id")) fail(path, "missing 'id'");
  a.id = field_int(j, "id", path, 0);
  const std::string mode = field_str(j, "mode", path, "mission");
  if (mode == "mission") {
    a.mode = AgentMode::Mission;
  } else if (mode == "fixed_goal") {
    a.mode = AgentMode::FixedGoal;
  } else if (mode == "waypoints") {
    a.mode = AgentMode::Waypoints;
  } else {
    fail(path + ".mode", "unknown mode '" + mode + "'");
  }
  if (j.contains("start")) a.start = get_vec3(j.at("start"), path + ".start");
  a.altitude = field_num(j, "altitude", path, a.altitude);
  a.overlap = field_num(j, "overlap", path, a.overlap);
  a.claiming = field_bool(j, "claiming", path, false);
  if (j.contains("goal")) a.goal = get_vec3(j.at("goal"), path + ".goal");
  if (j.contains("region")) {
    const json& r = j.at("region");
    if (!r.is_array()) fail(path + ".region", "expected an array of [x, y]");
    for (size_t i = 0; i < r.size(); ++i) {
      a.region.push_back(get_vec2(r[i], path + ".region[" + std::to_string(i) + "]"));
    }
  }
  if (j.contains("waypoints")) {
    const json& w = j.at("waypoints");
    if (!w.is_array()) fail(path + ".waypoints", "expected an array of [x, y, z]");
    for (size_t i = 0; i < w.size(); ++i) {
      a.waypoints.push_back(get_vec3(w[i], path + ".waypoints[" + std::to_string(i) + "]"));
    }
  }
  switch (a.mode) {
    case AgentMode::Mission:
      if (a.region.size() < 3) fail(path, "mission mode needs a 'region' polygon");
      break;
    case AgentMode::FixedGoal:
      if (!j.contains("goal")) fail(path, "fixed_goal mode needs a 'goal'");
      break;
    case AgentMode::Waypoints:
      if (a.waypoints.empty()) fail(path, "waypoints mode needs 'waypoints'");
      break;
  }
  return a;
}

Scenario parse_scenario(const json& j) {
  check_keys(j, "$",
             {"name", "duration", "dt", "seed", "perception_every", "broadcast_every", "arena",
              "wind", "drop_zone", "colors", "color_window", "objects", "camera", "render",
              "network", "sensors", "control", "avoidance", "plant", "gripper", "servo", "kf",
              "fusion_eval", "agents"});
  Scenario sc;
  sc.name = field_str(j, "name", "$", sc.name);
  sc.duration = field_num(j, "duration", "$", sc.duration);
  sc.dt = field_num(j, "dt", "$", sc.dt);
  if (j.contains("seed")) {
    const json& s = j.at("seed");
    if (!s.is_number_integer() || s.get<long long>() < 0) {
      fail("$.seed", "expected a non-negative integer");
    }
    sc.seed = s.get<uint64_t>();
  }
  sc.perception_every = field_int(j, "perception_every", "$", sc.perception_every);
  sc.broadcast_every = field_int(j, "broadcast_every", "$", sc.broadcast_every);
  if (j.contains("arena")) parse_arena(j.at("arena"), "$.arena", sc.arena);
  if (j.contains("wind")) sc.wind = get_vec3(j.at("wind"), "$.wind");

  if (j.contains("drop_zone")) {
    const json& d = j.at("drop_zone");
    check_keys(d, "$.drop_zone", {"x", "y", "radius"});
    sc.drop_zone.center.x() = field_num(d, "x", "$.drop_zone", sc.drop_zone.center.x());
    sc.drop_zone.center.y() = field_num(d, "y", "$.drop_zone", sc.drop_zone.center.y());
    sc.drop_zone.radius = field_num(d, "radius", "$.drop_zone", sc.drop_zone.radius);
  }

  if (j.contains("colors")) {
    const json& cs = j.at("colors");
    if (!cs.is_array()) fail("$.colors", "expected an array");
    for (size_t i = 0; i < cs.size(); ++i) {
      const std::string path = "$.colors[" + std::to_string(i) + "]";
      check_keys(cs[i], path, {"name", "rgb"});
      ColorSpec c;
      c.name = field_str(cs[i], "name", path, "");
      if (c.name.empty()) fail(path, "missing 'name'");
      if (!cs[i].contains("rgb")) fail(path, "missing 'rgb'");
      c.rgb = get_rgb(cs[i].at("rgb"), path + ".rgb");
      sc.colors.push_back(c);
    }
  }
  if (j.contains("color_window")) {
    const json& w = j.at("color_window");
    check_keys(w, "$.color_window", {"dl", "da", "db"});
    sc.color_window.dl = field_num(w, "dl", "$.color_window", sc.color_window.dl);
    sc.color_window.da = field_num(w, "da", "$.color_window", sc.color_window.da);
    sc.color_window.db = field_num(w, "db", "$.color_window", sc.color_window.db);
  }

  if (j.contains("objects")) {
    const json& os = j.at("objects");
    if (!os.is_array()) fail("$.objects", "expected an array");
    for (size_t i = 0; i < os.size(); ++i) {
      const std::string path = "$.objects[" + std::to_string(i) + "]";
      check_keys(os[i], path, {"x", "y", "vx", "vy", "color", "diameter"});
      ObjectSpec o;
      o.start.x() = field_num(os[i], "x", path, 0.0);
      o.start.y() = field_num(os[i], "y", path, 0.0);
      o.velocity.x() = field_num(os[i], "vx", path, 0.0);
      o.velocity.y() = field_num(os[i], "vy", path, 0.0);
      o.color = field_str(os[i], "color", path, "red");
      o.diameter = field_num(os[i], "diameter", path, o.diameter);
      if (o.diameter <= 0.0) fail(path + ".diameter", "must be positive");
      sc.objects.push_back(o);
    }
  }

  if (j.contains("camera")) parse_camera(j.at("camera"), "$.camera", sc.camera);

  if (j.contains("render")) {
    const json& r = j.at("render");
    check_keys(r, "$.render", {"noise_sigma", "vignette"});
    sc.render.noise_sigma = field_num(r, "noise_sigma", "$.render", sc.render.noise_sigma);
    sc.render.vignette = field_num(r, "vignette", "$.render", sc.render.vignette);
  }

  if (j.contains("network")) {
    const json& n = j.at("network");
    check_keys(n, "$.network", {"latency", "drop_rate"});
    sc.network.latency = field_num(n, "latency", "$.network", sc.network.latency);
    sc.network.drop_rate = field_num(n, "drop_rate", "$.network", sc.network.drop_rate);
    if (sc.network.latency < 0.0) fail("$.network.latency", "must be non-negative");
    if (sc.network.drop_rate < 0.0 || sc.network.drop_rate > 1.0) {
      fail("$.network.drop_rate", "must be in [0, 1]");
    }
  }

  if (j.contains("sensors")) {
    const json& s = j.at("sensors");
    check_keys(s, "$.sensors",
               {"gps_sigma", "odom_sigma", "gps_rate_hz", "bias_walk", "gps_dropouts"});
    sc.sensors.gps_sigma = field_num(s, "gps_sigma", "$.sensors", sc.sensors.gps_sigma);
    sc.sensors.odom_sigma = field_num(s, "odom_sigma", "$.sensors", sc.sensors.odom_sigma);
    sc.sensors.gps_rate = field_num(s, "gps_rate_hz", "$.sensors", sc.sensors.gps_rate);
    sc.sensors.bias_walk = field_num(s, "bias_walk", "$.sensors", sc.sensors.bias_walk);
    if (s.contains("gps_dropouts")) {
      const json& d = s.at("gps_dropouts");
      if (!d.is_array()) fail("$.sensors.gps_dropouts", "expected an array of [start, end]");
      for (size_t i = 0; i < d.size(); ++i) {
        const std::string path = "$.sensors.gps_dropouts[" + std::to_string(i) + "]";
        const Vec2 w = get_vec2(d[i], path);
        if (w.y() <= w.x()) fail(path, "end must exceed start");
        sc.sensors.gps_dropouts.emplace_back(w.x(), w.y());
      }
    }
  }

  if (j.contains("control")) {
    const json& c = j.at("control");
    check_keys(c, "$.control", {"kp", "kv", "a_max"});
    sc.gains.kp = field_num(c, "kp", "$.control", sc.gains.kp);
    sc.gains.kv = field_num(c, "kv", "$.control", sc.gains.kv);
    sc.gains.a_max = field_num(c, "a_max", "$.control", sc.gains.a_max);
  }

  if (j.contains("avoidance")) {
    const json& a = j.at("avoidance");
    check_keys(a, "$.avoidance",
               {"d_min", "d_soft", "k_rep", "v_max", "a_max", "stale_after", "predict_horizon",
                "brake_tau"});
    auto& p = sc.avoidance;
    p.d_min = field_num(a, "d_min", "$.avoidance", p.d_min);
    p.d_soft = field_num(a, "d_soft", "$.avoidance", p.d_soft);
    p.k_rep = field_num(a, "k_rep", "$.avoidance", p.k_rep);
    p.v_max = field_num(a, "v_max", "$.avoidance", p.v_max);
    p.a_max = field_num(a, "a_max", "$.avoidance", p.a_max);
    p.stale_after = field_num(a, "stale_after", "$.avoidance", p.stale_after);
    p.predict_horizon = field_num(a, "predict_horizon", "$.avoidance", p.predict_horizon);
    p.brake_tau = field_num(a, "brake_tau", "$.avoidance", p.brake_tau);
    if (p.d_soft < p.d_min) fail("$.avoidance.d_soft", "must be at least d_min");
  }

  if (j.contains("plant")) {
    const json& p = j.at("plant");
    check_keys(p, "$.plant", {"drag", "v_max"});
    sc.plant.drag = field_num(p, "drag", "$.plant", sc.plant.drag);
    sc.plant.v_max = field_num(p, "v_max", "$.plant", sc.plant.v_max);
  }

  if (j.contains("gripper")) {
    const json& g = j.at("gripper");
    check_keys(g, "$.gripper", {"p_grasp", "decay_time", "decay_floor"});
    sc.gripper.p_grasp = field_num(g, "p_grasp", "$.gripper", sc.gripper.p_grasp);
    sc.gripper.decay_time = field_num(g, "decay_time", "$.gripper", sc.gripper.decay_time);
    sc.gripper.decay_floor = field_num(g, "decay_floor", "$.gripper", sc.gripper.decay_floor);
    if (sc.gripper.p_grasp < 0.0 || sc.gripper.p_grasp > 1.0) {
      fail("$.gripper.p_grasp", "must be in [0, 1]");
    }
  }

  if (j.contains("servo")) {
    const json& s = j.at("servo");
    check_keys(s, "$.servo",
               {"cone_half_angle_deg", "ball_height", "ball_radius", "ball_max_speed",
                "approach_speed", "remagnetize_period"});
    auto& p = sc.servo;
    if (s.contains("cone_half_angle_deg")) {
      p.cone_half_angle = get_num(s.at("cone_half_angle_deg"), "$.servo.cone_half_angle_deg") *
                          M_PI / 180.0;
    }
    p.ball_height = field_num(s, "ball_height", "$.servo", p.ball_height);
    p.ball_radius = field_num(s, "ball_radius", "$.servo", p.ball_radius);
    p.ball_max_speed = field_num(s, "ball_max_speed", "$.servo", p.ball_max_speed);
    p.approach_speed = field_num(s, "approach_speed", "$.servo", p.approach_speed);
    p.remagnetize_period = field_num(s, "remagnetize_period", "$.servo", p.remagnetize_period);
  }

  if (j.contains("kf")) {
    const json& k = j.at("kf");
    check_keys(k, "$.kf",
               {"process_noise", "measurement_noise", "gate", "max_misses", "min_hits_confirm"});
    sc.kf.process_noise = field_num(k, "process_noise", "$.kf", sc.kf.process_noise);
    sc.kf.measurement_noise = field_num(k, "measurement_noise", "$.kf", sc.kf.measurement_noise);
    sc.kf.gate = field_num(k, "gate", "$.kf", sc.kf.gate);
    sc.kf.max_misses = field_int(k, "max_misses", "$.kf", sc.kf.max_misses);
    sc.kf.min_hits_confirm = field_int(k, "min_hits_confirm", "$.kf", sc.kf.min_hits_confirm);
  }

  sc.fusion_eval = field_bool(j, "fusion_eval", "$", sc.fusion_eval);

  if (j.contains("agents")) {
    const json& as = j.at("agents");
    if (!as.is_array()) fail("$.agents", "expected an array");
    for (size_t i = 0; i < as.size(); ++i) {
      sc.agents.push_back(parse_agent(as[i], "$.agents[" + std::to_string(i) + "]"));
    }
  }
  return sc;
}

}  // namespace

ScenarioLoad validate_scenario(Scenario sc) {
  auto bad = [](const std::string& msg) {
    return ScenarioLoad{std::nullopt, Err::ConfigInvalid, msg};
  };
  if (sc.dt <= 0.0) return bad("$.dt: must be positive");
  if (sc.duration < 0.0) return bad("$.duration: must be non-negative");
  if (sc.perception_every < 1) return bad("$.perception_every: must be at least 1");
  if (sc.broadcast_every < 1) return bad("$.broadcast_every: must be at least 1");
  for (size_t i = 0; i < sc.agents.size(); ++i) {
    const AgentSpec& a = sc.agents[i];
    const std::string path = "$.agents[" + std::to_string(i) + "]";
    if (a.id != static_cast<int>(i)) {
      return bad(path + ".id: ids must be 0..n-1 in order");
    }
    if (a.mode == AgentMode::Mission) {
      auto region = coverage::ConvexRegion::create(a.region);
      if (!region.has_value()) {
        return bad(path + ".region: not a valid convex polygon (counter-clockwise, area > 0)");
      }
      if (a.altitude <= 0.0) return bad(path + ".altitude: must be positive");
      if (a.overlap < 0.0 || a.overlap >= 1.0) return bad(path + ".overlap: must be in [0, 1)");
    }
  }
  for (size_t i = 0; i < sc.objects.size(); ++i) {
    const ObjectSpec& o = sc.objects[i];
    bool known = false;
    for (const auto& c : sc.colors) known = known || c.name == o.color;
    if (!known) {
      return bad("$.objects[" + std::to_string(i) + "].color: '" + o.color +
                 "' is not in the palette");
    }
  }
  return ScenarioLoad{std::move(sc), Err::None, ""};
}

ScenarioLoad scenario_from_json_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    return {std::nullopt, Err::ConfigInvalid, "$: not valid JSON"};
  }
  if (!j.is_object()) {
    return {std::nullopt, Err::ConfigInvalid, "$: expected a JSON object"};
  }
  try {
    return validate_scenario(parse_scenario(j));
  } catch (const ConfigError& e) {
    return {std::nullopt, Err::ConfigInvalid, e.what()};
  }
}

ScenarioLoad load_scenario_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return {std::nullopt, Err::Io, "cannot open scenario file '" + path + "'"};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

}  // namespace skypick::sim
