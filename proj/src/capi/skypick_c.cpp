#include "skypick/skypick.h"

#include <algorithm>
#include <cstring>
#include <string>

#include "sim/builtins.h"
#include "sim/detection_map.h"
#include "sim/scenario.h"
#include "sim/simulator.h"

struct sp_scenario {
  skypick::sim::Scenario sc;
};

struct sp_result {
  std::string metrics;
};

namespace {

void put_err(char* errbuf, size_t errbuf_len, const std::string& msg) {
  if (errbuf == nullptr || errbuf_len == 0) return;
  const size_t n = std::min(errbuf_len - 1, msg.size());
  std::memcpy(errbuf, msg.data(), n);
  errbuf[n] = '\0';
}

sp_status from_load(skypick::sim::ScenarioLoad load, sp_scenario** out, char* errbuf,
                    size_t errbuf_len) {
  if (!load.scenario.has_value()) {
    put_err(errbuf, errbuf_len, load.message);
    return load.err == skypick::Err::Io ? SP_ERR_IO : SP_ERR_CONFIG;
  }
  *out = new sp_scenario{std::move(*load.scenario)};
  return SP_OK;
}

}  // namespace

extern "C" {

const char* sp_status_name(sp_status status) {
  switch (status) {
    case SP_OK: return "ok";
    case SP_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case SP_ERR_CONFIG: return "config";
    case SP_ERR_IO: return "io";
    case SP_ERR_RUNTIME: return "runtime";
  }
  return "unknown";
}

const char* sp_version(void) { return "0.1.0"; }

int sp_builtin_count(void) {
  return static_cast<int>(skypick::sim::builtin_names().size());
}

const char* sp_builtin_name(int index) {
  const auto& names = skypick::sim::builtin_names();
  if (index < 0 || index >= static_cast<int>(names.size())) return nullptr;
  return names[static_cast<size_t>(index)].c_str();
}

sp_status sp_scenario_from_file(const char* path, sp_scenario** out, char* errbuf,
                                size_t errbuf_len) {
  if (path == nullptr || out == nullptr) return SP_ERR_INVALID_ARGUMENT;
  return from_load(skypick::sim::load_scenario_file(path), out, errbuf, errbuf_len);
}

sp_status sp_scenario_from_json(const char* text, sp_scenario** out, char* errbuf,
                                size_t errbuf_len) {
  if (text == nullptr || out == nullptr) return SP_ERR_INVALID_ARGUMENT;
  return from_load(skypick::sim::scenario_from_json_text(text), out, errbuf, errbuf_len);
}

sp_status sp_scenario_from_builtin(const char* name, sp_scenario** out) {
  if (name == nullptr || out == nullptr) return SP_ERR_INVALID_ARGUMENT;
  auto sc = skypick::sim::builtin_scenario(name);
  if (!sc.has_value()) return SP_ERR_CONFIG;
  *out = new sp_scenario{std::move(*sc)};
  return SP_OK;
}

const char* sp_scenario_name(const sp_scenario* scenario) {
  return scenario == nullptr ? nullptr : scenario->sc.name.c_str();
}

void sp_scenario_set_seed(sp_scenario* scenario, uint64_t seed) {
  if (scenario != nullptr) scenario->sc.seed = seed;
}

void sp_scenario_free(sp_scenario* scenario) { delete scenario; }

sp_status sp_run(const sp_scenario* scenario, const char* out_dir, sp_result** out,
                 char* errbuf, size_t errbuf_len) {
  if (scenario == nullptr || out == nullptr) return SP_ERR_INVALID_ARGUMENT;
  const std::string dir = out_dir == nullptr ? "" : out_dir;

  if (scenario->sc.kind == skypick::sim::ScenarioKind::DetectionMap) {
    auto result = skypick::sim::run_detection_map(scenario->sc.detection_map,
                                                  scenario->sc.seed);
    const skypick::Err err = skypick::sim::write_detection_map(result, dir);
    if (err != skypick::Err::None) {
      put_err(errbuf, errbuf_len, "cannot write detection map under '" + dir + "'");
      return SP_ERR_IO;
    }
    *out = new sp_result{result.metrics_json()};
    return SP_OK;
  }

  auto outcome = skypick::sim::run_scenario(scenario->sc, dir);
  if (outcome.err != skypick::Err::None) {
    put_err(errbuf, errbuf_len, outcome.message);
    return outcome.err == skypick::Err::Io ? SP_ERR_IO : SP_ERR_RUNTIME;
  }
  *out = new sp_result{std::move(outcome.metrics_json)};
  return SP_OK;
}

const char* sp_result_metrics_json(const sp_result* result) {
  return result == nullptr ? nullptr : result->metrics.c_str();
}

void sp_result_free(sp_result* result) { delete result; }

}  // extern "C"
