#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "skypick/skypick.h"

namespace {

const char* kTinyScenario = R"({
  "name": "tiny",
  "duration": 2,
  "dt": 0.02,
  "seed": 1,
  "arena": {"xmin": 0, "xmax": 10, "ymin": 0, "ymax": 10},
  "agents": [{"id": 0, "mode": "fixed_goal", "start": [1, 1, 0], "goal": [3, 2, 1]}]
})";

std::filesystem::path fresh_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("skypick_capi_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and status names are stable strings") {
  REQUIRE(sp_version() != nullptr);
  CHECK(std::strlen(sp_version()) > 0);

  CHECK(std::string(sp_status_name(SP_OK)) == "ok");
  CHECK(std::string(sp_status_name(SP_ERR_INVALID_ARGUMENT)) == "invalid_argument");
  CHECK(std::string(sp_status_name(SP_ERR_CONFIG)) == "config");
  CHECK(std::string(sp_status_name(SP_ERR_IO)) == "io");
  CHECK(std::string(sp_status_name(SP_ERR_RUNTIME)) == "runtime");
}

TEST_CASE("builtins are enumerable by index") {
  const int n = sp_builtin_count();
  REQUIRE(n == 6);
  bool saw_collision = false;
  for (int i = 0; i < n; ++i) {
    const char* name = sp_builtin_name(i);
    REQUIRE(name != nullptr);
    saw_collision = saw_collision || std::string(name) == "collision";
  }
  CHECK(saw_collision);
  CHECK(sp_builtin_name(-1) == nullptr);
  CHECK(sp_builtin_name(n) == nullptr);
}

TEST_CASE("scenario handles come from builtins, json, and files") {
  sp_scenario* sc = nullptr;
  REQUIRE(sp_scenario_from_builtin("collision", &sc) == SP_OK);
  REQUIRE(sc != nullptr);
  CHECK(std::string(sp_scenario_name(sc)) == "collision");
  sp_scenario_free(sc);

  sc = nullptr;
  CHECK(sp_scenario_from_builtin("no-such", &sc) == SP_ERR_CONFIG);
  CHECK(sc == nullptr);

  char err[256] = {0};
  sc = nullptr;
  REQUIRE(sp_scenario_from_json(kTinyScenario, &sc, err, sizeof err) == SP_OK);
  CHECK(std::string(sp_scenario_name(sc)) == "tiny");
  sp_scenario_free(sc);

  const auto dir = fresh_dir("load");
  const auto path = dir / "tiny.json";
  std::ofstream(path) << kTinyScenario;
  sc = nullptr;
  REQUIRE(sp_scenario_from_file(path.string().c_str(), &sc, err, sizeof err) == SP_OK);
  CHECK(std::string(sp_scenario_name(sc)) == "tiny");
  sp_scenario_free(sc);
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration errors carry a diagnostic") {
  char err[256] = {0};
  sp_scenario* sc = nullptr;
  CHECK(sp_scenario_from_json("{\"dt\": -1}", &sc, err, sizeof err) == SP_ERR_CONFIG);
  CHECK(sc == nullptr);
  CHECK(std::strstr(err, "dt") != nullptr);

  err[0] = '\0';
  CHECK(sp_scenario_from_json("not json at all", &sc, err, sizeof err) == SP_ERR_CONFIG);
  CHECK(err[0] != '\0');

  CHECK(sp_scenario_from_file("/nonexistent/skypick.json", &sc, err, sizeof err) ==
        SP_ERR_IO);
}

TEST_CASE("null arguments are rejected, not dereferenced") {
  sp_scenario* sc = nullptr;
  CHECK(sp_scenario_from_json(nullptr, &sc, nullptr, 0) == SP_ERR_INVALID_ARGUMENT);
  CHECK(sp_scenario_from_json("{}", nullptr, nullptr, 0) == SP_ERR_INVALID_ARGUMENT);
  CHECK(sp_scenario_from_builtin(nullptr, &sc) == SP_ERR_INVALID_ARGUMENT);
  CHECK(sp_scenario_from_builtin("collision", nullptr) == SP_ERR_INVALID_ARGUMENT);
  CHECK(sp_scenario_from_file(nullptr, &sc, nullptr, 0) == SP_ERR_INVALID_ARGUMENT);

  sp_result* result = nullptr;
  CHECK(sp_run(nullptr, nullptr, &result, nullptr, 0) == SP_ERR_INVALID_ARGUMENT);

  // Frees and accessors shrug off nulls.
  sp_scenario_free(nullptr);
  sp_result_free(nullptr);
  CHECK(sp_scenario_name(nullptr) == nullptr);
  CHECK(sp_result_metrics_json(nullptr) == nullptr);
}

TEST_CASE("a run yields metrics and optionally files") {
  char err[256] = {0};
  sp_scenario* sc = nullptr;
  REQUIRE(sp_scenario_from_json(kTinyScenario, &sc, err, sizeof err) == SP_OK);

  sp_result* result = nullptr;
  REQUIRE(sp_run(sc, nullptr, &result, err, sizeof err) == SP_OK);
  REQUIRE(result != nullptr);
  const std::string metrics = sp_result_metrics_json(result);
  CHECK(metrics.find("\"delivered\"") != std::string::npos);
  CHECK(metrics.find("\"seed\": 1") != std::string::npos);
  sp_result_free(result);

  const auto dir = fresh_dir("run");
  result = nullptr;
  REQUIRE(sp_run(sc, dir.string().c_str(), &result, err, sizeof err) == SP_OK);
  CHECK(std::filesystem::exists(dir / "metrics.json"));
  CHECK(std::filesystem::exists(dir / "poses.csv"));
  sp_result_free(result);
  sp_scenario_free(sc);
  std::filesystem::remove_all(dir);
}

TEST_CASE("seed override changes the recorded seed") {
  sp_scenario* sc = nullptr;
  REQUIRE(sp_scenario_from_json(kTinyScenario, &sc, nullptr, 0) == SP_OK);
  sp_scenario_set_seed(sc, 99);

  sp_result* result = nullptr;
  REQUIRE(sp_run(sc, nullptr, &result, nullptr, 0) == SP_OK);
  CHECK(std::string(sp_result_metrics_json(result)).find("\"seed\": 99") !=
        std::string::npos);
  sp_result_free(result);
  sp_scenario_free(sc);
}

TEST_CASE("an unwritable output directory fails as io") {
  sp_scenario* sc = nullptr;
  REQUIRE(sp_scenario_from_json(kTinyScenario, &sc, nullptr, 0) == SP_OK);
  sp_result* result = nullptr;
  char err[256] = {0};
  CHECK(sp_run(sc, "/proc/definitely/not/writable", &result, err, sizeof err) == SP_ERR_IO);
  CHECK(result == nullptr);
  sp_scenario_free(sc);
}
