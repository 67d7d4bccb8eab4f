#include <cstdio>
#include <cstdlib>
#include <string>

#include "CLI11.hpp"

#include "skypick/skypick.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

std::string default_out_dir() {
  const char* env = std::getenv("SKYPICK_OUT_DIR");
  return env != nullptr && env[0] != '\0' ? env : "out";
}

bool is_builtin(const std::string& name) {
  for (int i = 0; i < sp_builtin_count(); ++i) {
    if (name == sp_builtin_name(i)) return true;
  }
  return false;
}

int load_scenario(const std::string& ref, sp_scenario** sc) {
  char err[512] = {0};
  if (is_builtin(ref)) {
    if (sp_scenario_from_builtin(ref.c_str(), sc) != SP_OK) {
      std::fprintf(stderr, "error: cannot load built-in '%s'\n", ref.c_str());
      return kExitConfig;
    }
    return 0;
  }
  const sp_status st = sp_scenario_from_file(ref.c_str(), sc, err, sizeof err);
  if (st != SP_OK) {
    std::fprintf(stderr, "error: %s\n", err[0] != '\0' ? err : sp_status_name(st));
    return kExitConfig;
  }
  return 0;
}

int run_scenario(const std::string& ref, bool has_seed, uint64_t seed,
                 const std::string& out_dir, bool quiet) {
  sp_scenario* sc = nullptr;
  const int rc = load_scenario(ref, &sc);
  if (rc != 0) return rc;
  if (has_seed) sp_scenario_set_seed(sc, seed);

  char err[512] = {0};
  sp_result* result = nullptr;
  const sp_status st = sp_run(sc, out_dir.c_str(), &result, err, sizeof err);
  sp_scenario_free(sc);
  if (st != SP_OK) {
    std::fprintf(stderr, "error: %s\n", err[0] != '\0' ? err : sp_status_name(st));
    return kExitRuntime;
  }
  if (!quiet) std::fputs(sp_result_metrics_json(result), stdout);
  sp_result_free(result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search, track and retrieve simulator"};
  app.require_subcommand(1);

  std::string scenario;
  uint64_t seed = 0;
  bool quiet = false;
  std::string out_dir = default_out_dir();

  CLI::App* run = app.add_subcommand("run", "Run a scenario (built-in name or JSON file)");
  run->add_option("--scenario", scenario, "Built-in name or path to a scenario file")
      ->required();
  CLI::Option* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory (default $SKYPICK_OUT_DIR or ./out)");
  run->add_flag("--quiet", quiet, "Suppress the metrics summary on stdout");

  CLI::App* list = app.add_subcommand("list", "List built-in scenarios");

  CLI::App* map = app.add_subcommand("detection-map",
                                     "Detection error vs image position and altitude");
  CLI::Option* map_seed_opt = map->add_option("--seed", seed, "Override the sweep seed");
  map->add_option("--out", out_dir, "Output directory (default $SKYPICK_OUT_DIR or ./out)");
  map->add_flag("--quiet", quiet, "Suppress the metrics summary on stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitConfig;
  }

  if (list->parsed()) {
    for (int i = 0; i < sp_builtin_count(); ++i) {
      std::printf("%s\n", sp_builtin_name(i));
    }
    return 0;
  }
  if (map->parsed()) {
    return run_scenario("detection-map", map_seed_opt->count() > 0, seed, out_dir, quiet);
  }
  return run_scenario(scenario, seed_opt->count() > 0, seed, out_dir, quiet);
}
