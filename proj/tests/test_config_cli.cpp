#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cdyson/commands.hpp"
#include "cdyson/errors.hpp"
#include "cdyson/io.hpp"
#include "cdyson/validation.hpp"

using namespace cdyson;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const auto dir = fs::temp_directory_path() / ("cdyson_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kMinimalConfig = R"({
  "contour": {"type": "circle", "radius": 1.0},
  "beta": 2.0,
  "N": 8
})";

}  // namespace

TEST_CASE("minimal config parses with defaults filled") {
  const auto config = parse_config(kMinimalConfig);
  CHECK(config.n_particles == 8);
  CHECK(config.beta == 2.0);
  CHECK(config.grid_size == 1024);
  CHECK(config.potential.is_zero());
  CHECK(config.conformal.modes == 1024);
  CHECK(!config.seed.has_value());
  // The echo is valid JSON that parses back to the same config.
  const auto echoed = parse_config(config.to_json_string());
  CHECK(echoed.n_particles == config.n_particles);
  CHECK(echoed.contour.canonical_key() == config.contour.canonical_key());
}

TEST_CASE("beta <= 0 is rejected naming beta") {
  CHECK_THROWS_WITH_AS(
      parse_config(R"({"contour":{"type":"circle","radius":1.0},"beta":-1.0})"),
      doctest::Contains("beta"), ConfigError);
}

TEST_CASE("unknown key suggests the nearest field") {
  try {
    parse_config(R"({"contour":{"type":"circle","radius":1.0},"betta":2.0})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("betta") != std::string::npos);
    CHECK(msg.find("did you mean \"beta\"") != std::string::npos);
  }
}

TEST_CASE("nested unknown keys carry the path") {
  try {
    parse_config(
        R"({"contour":{"type":"circle","radius":1.0},"sde":{"dtt":0.001}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("sde") != std::string::npos);
    CHECK(msg.find("dt") != std::string::npos);
  }
}

TEST_CASE("stochastic commands demand a seed") {
  const auto config = parse_config(kMinimalConfig);
  CommandOptions options;
  options.out_dir = temp_dir("seedless").string();
  CHECK_THROWS_WITH_AS(run_simulate(config, options), doctest::Contains("seed"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(run_sample(config, options), doctest::Contains("seed"),
                       ConfigError);
}

TEST_CASE("simulate writes byte-identical output for a fixed seed") {
  auto config = parse_config(R"({
    "contour": {"type": "circle", "radius": 1.0},
    "beta": 2.0, "N": 4, "seed": 42,
    "sde": {"dt": 1e-3, "t_end": 0.2, "thinning": 20}
  })");
  const auto dir_a = temp_dir("sim_a"), dir_b = temp_dir("sim_b");
  CommandOptions options;
  options.out_dir = dir_a.string();
  CHECK(run_simulate(config, options) == kExitOk);
  options.out_dir = dir_b.string();
  CHECK(run_simulate(config, options) == kExitOk);
  CHECK(read_file((dir_a / "trajectory.csv").string()) ==
        read_file((dir_b / "trajectory.csv").string()));
  CHECK(fs::exists(dir_a / "effective_config.json"));

  // Binary column format.
  options.format = "bin";
  options.out_dir = dir_a.string();
  CHECK(run_simulate(config, options) == kExitOk);
  const auto blob = read_file((dir_a / "trajectory.bin").string());
  CHECK(blob.substr(0, 8) == "CDYSCOL1");
}

TEST_CASE("sample command writes the sweep-indexed CSV") {
  auto config = parse_config(R"({
    "contour": {"type": "ellipse", "a": 2.0, "b": 1.0},
    "beta": 2.0, "N": 4, "seed": 7,
    "mcmc": {"sweeps": 200, "burn_in": 50, "thinning": 10}
  })");
  const auto dir = temp_dir("sample");
  CommandOptions options;
  options.out_dir = dir.string();
  CHECK(run_sample(config, options) == kExitOk);
  const auto text = read_file((dir / "samples.csv").string());
  CHECK(text.rfind("sweep,s_1,s_2,s_3,s_4", 0) == 0);
}

TEST_CASE("maps command caches by contour key") {
  auto config = parse_config(R"({
    "contour": {"type": "ellipse", "a": 2.0, "b": 1.0},
    "beta": 2.0, "N": 2,
    "conformal": {"modes": 256}
  })");
  const auto dir = temp_dir("maps");
  CommandOptions options;
  options.out_dir = dir.string();
  options.cache_dir = (dir / "cache").string();
  CHECK(run_maps(config, options) == kExitOk);
  CHECK(fs::exists(dir / "maps.json"));
  std::size_t cache_entries = 0;
  for (const auto& entry : fs::directory_iterator(dir / "cache")) {
    ++cache_entries;
    (void)entry;
  }
  CHECK(cache_entries == 1);
  // Second run must reuse the cache (same single entry, same output).
  const auto first = read_file((dir / "maps.json").string());
  CHECK(run_maps(config, options) == kExitOk);
  CHECK(read_file((dir / "maps.json").string()) == first);
}

TEST_CASE("freeenergy command emits the report with exact fields") {
  auto config = parse_config(R"({
    "contour": {"type": "circle", "radius": 1.0},
    "beta": 2.0, "N": 2,
    "conformal": {"modes": 256}
  })");
  const auto dir = temp_dir("fe");
  CommandOptions options;
  options.out_dir = dir.string();
  CHECK(run_freeenergy(config, options) == kExitOk);
  const auto text = read_file((dir / "free_energy.json").string());
  for (const char* key :
       {"\"beta\"", "\"F0\"", "\"F1\"", "\"F1_convention\"", "\"F2_cl\"", "\"F2_q\"",
        "\"loewner_contour\"", "\"loewner_area\"", "\"tolerances\""})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("partition command writes the bench CSV") {
  auto config = parse_config(R"({
    "contour": {"type": "circle", "radius": 1.0},
    "beta": 2.0, "N": 2,
    "partition": {"nodes": 128, "symmetry_reduction": true,
                   "quadrature_n": [1, 2], "morris_n": [50, 100, 200, 400],
                   "fit": true}
  })");
  const auto dir = temp_dir("part");
  CommandOptions options;
  options.out_dir = dir.string();
  CHECK(run_partition(config, options) == kExitOk);
  const auto text = read_file((dir / "partition.csv").string());
  CHECK(text.rfind("N,beta,logZ,F_N,source", 0) == 0);
  CHECK(text.find("quadrature") != std::string::npos);
  CHECK(text.find("morris") != std::string::npos);
  CHECK(fs::exists(dir / "partition_fit.json"));
}

TEST_CASE("validate passes on the circle benchmark config") {
  auto config = parse_config(R"({
    "contour": {"type": "circle", "radius": 1.0},
    "beta": 2.0, "N": 4,
    "conformal": {"modes": 256}
  })");
  const auto report = run_validation(config);
  for (const auto& check : report.checks) {
    INFO(check.name, ": measured ", check.measured, " threshold ", check.threshold);
    CHECK(check.pass);
  }
  CHECK(report.all_pass);
}

#ifdef CDYSON_CLI_PATH
TEST_CASE("cli binary: exit codes and byte-identical reruns") {
  const auto dir = temp_dir("cli");
  const auto config_path = dir / "config.json";
  {
    std::ofstream out(config_path);
    out << R"({"contour":{"type":"circle","radius":1.0},"beta":2.0,"N":3,
               "seed":42,"sde":{"dt":1e-3,"t_end":0.1,"thinning":10}})";
  }
  const std::string base = std::string(CDYSON_CLI_PATH);
  auto run = [&](const std::string& args) {
    const int status = std::system((base + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  const auto out_a = dir / "a", out_b = dir / "b";
  CHECK(run("simulate --config " + config_path.string() + " --out " + out_a.string()) == 0);
  CHECK(run("simulate --config " + config_path.string() + " --out " + out_b.string()) == 0);
  CHECK(read_file((out_a / "trajectory.csv").string()) ==
        read_file((out_b / "trajectory.csv").string()));

  // Config errors exit with 2.
  const auto bad_path = dir / "bad.json";
  {
    std::ofstream out(bad_path);
    out << R"({"contour":{"type":"circle","radius":1.0},"betta":2.0})";
  }
  CHECK(run("maps --config " + bad_path.string() + " --out " + out_a.string()) == 2);
  // Unknown files exit with 2 as well.
  CHECK(run("maps --config /nonexistent.json") == 2);
}
#endif
