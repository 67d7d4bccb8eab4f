#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d =
        fs::temp_directory_path() / ("skypick_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the installed binary through the shell; env can prefix variable
// assignments ("X=1 ").
CliResult run_cli(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = env + std::string(SKYPICK_CLI_PATH) + " " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

const char* kTinyScenario = R"({
  "name": "tiny",
  "duration": 2,
  "dt": 0.02,
  "seed": 1,
  "arena": {"xmin": 0, "xmax": 10, "ymin": 0, "ymax": 10},
  "agents": [{"id": 0, "mode": "fixed_goal", "start": [1, 1, 0], "goal": [3, 2, 1]}]
})";

fs::path write_tiny() {
  const fs::path p = scratch() / "tiny.json";
  std::ofstream(p) << kTinyScenario;
  return p;
}

}  // namespace

TEST_CASE("help exits clean and shows the subcommands") {
  const CliResult r = run_cli("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("run") != std::string::npos);
  CHECK(r.out.find("list") != std::string::npos);
  CHECK(r.out.find("detection-map") != std::string::npos);
}

TEST_CASE("missing or malformed arguments exit with the config code") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("run").exit_code == 2);  // --scenario is required
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("run --scenario x --no-such-flag").exit_code == 2);
}

TEST_CASE("list prints every builtin on its own line") {
  const CliResult r = run_cli("list");
  CHECK(r.exit_code == 0);
  for (const char* name : {"collision", "moving-pickup", "static-pickup", "fusion-eval",
                           "detection-map", "full-arena"}) {
    CHECK(r.out.find(std::string(name) + "\n") != std::string::npos);
  }
}

TEST_CASE("unknown scenarios and broken files exit with the config code") {
  const CliResult missing = run_cli("run --scenario /nonexistent/sc.json");
  CHECK(missing.exit_code == 2);
  CHECK(missing.err.find("error") != std::string::npos);

  const fs::path bad = scratch() / "bad.json";
  std::ofstream(bad) << "{\"dt\": 0}";
  const CliResult broken = run_cli("run --scenario " + bad.string());
  CHECK(broken.exit_code == 2);
  CHECK(broken.err.find("dt") != std::string::npos);
}

TEST_CASE("run executes a scenario file and writes the output set") {
  const fs::path sc = write_tiny();
  const fs::path out_dir = scratch() / "out_run";
  const CliResult r = run_cli("run --scenario " + sc.string() + " --out " + out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"delivered\"") != std::string::npos);
  CHECK(fs::exists(out_dir / "metrics.json"));
  CHECK(fs::exists(out_dir / "poses.csv"));
  CHECK(fs::exists(out_dir / "events.csv"));
}

TEST_CASE("seed and quiet flags are honored") {
  const fs::path sc = write_tiny();
  const fs::path out_dir = scratch() / "out_seed";
  const CliResult r = run_cli("run --seed 42 --scenario " + sc.string() + " --out " +
                              out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("\"seed\": 42") != std::string::npos);

  const CliResult q = run_cli("run --quiet --seed 42 --scenario " + sc.string() + " --out " +
                              out_dir.string());
  CHECK(q.exit_code == 0);
  CHECK(q.out.empty());
}

TEST_CASE("builtin names run without a file") {
  const fs::path out_dir = scratch() / "out_builtin";
  const CliResult r =
      run_cli("run --scenario collision --quiet --out " + out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out_dir / "metrics.json"));
}

TEST_CASE("the output directory falls back to the environment") {
  const fs::path sc = write_tiny();
  const fs::path env_dir = scratch() / "out_env";
  const CliResult r = run_cli("run --quiet --scenario " + sc.string(),
                              "SKYPICK_OUT_DIR=" + env_dir.string() + " ");
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(env_dir / "metrics.json"));
}

TEST_CASE("an unwritable output directory exits with the runtime code") {
  const fs::path sc = write_tiny();
  const CliResult r =
      run_cli("run --scenario " + sc.string() + " --out /proc/definitely/not/writable");
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("the detection map subcommand writes its sweep") {
  const fs::path out_dir = scratch() / "out_map";
  const CliResult r = run_cli("detection-map --quiet --out " + out_dir.string());
  CHECK(r.exit_code == 0);
  CHECK(fs::exists(out_dir / "detection_map.csv"));
  CHECK(fs::exists(out_dir / "metrics.json"));
}
