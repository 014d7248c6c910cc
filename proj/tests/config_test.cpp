#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "heraldsim/config.hpp"
#include "heraldsim/export.hpp"

using namespace heraldsim;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& contents)
      : path("config_test_tmp.json") {
    std::ofstream out(path);
    out << contents;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("default config round-trips through json") {
  const RunConfig def = default_run_config();
  const std::string text = run_config_json(def);
  TempFile file(text);
  const RunConfig back = load_run_config(file.path);
  CHECK(run_config_json(back) == text);
  CHECK(back.seed == def.seed);
  CHECK(back.shots == def.shots);
  CHECK(back.grid == def.grid);
  CHECK(back.xi_grid == def.xi_grid);
  CHECK(back.protocol.physical.p_err_cx == def.protocol.physical.p_err_cx);
  CHECK(back.protocol.cavity.g == def.protocol.cavity.g);
}

TEST_CASE("table defaults are preserved in the schema") {
  const RunConfig def = default_run_config();
  CHECK(def.protocol.physical.t1 == 3.0);
  CHECK(def.protocol.physical.t2 == 0.5);
  CHECK(def.protocol.physical.p_err_h == 2.1e-4);
  CHECK(def.protocol.physical.p_err_cx == 8.3e-3);
  CHECK(def.protocol.physical.p_err_m == 7.7e-3);
  CHECK(def.protocol.physical.times.t_h == 150e-6);
  CHECK(def.protocol.physical.times.t_cx == 970e-6);
  CHECK(def.protocol.physical.times.t_m == 130e-6);
  CHECK(def.protocol.scheduler.t_range_q == 400e-6);
  CHECK(def.protocol.scheduler.t_transfer == 100e-6);
  CHECK(def.protocol.eta_conv == 0.9);
  CHECK(def.protocol.p_trs == 0.5);
  CHECK(def.tau_single_mode == 0.17);
  CHECK(def.tau_multi_mode == 0.70);
  CHECK(def.r_glass == 1.44);
}

TEST_CASE("partial configs keep defaults for missing keys") {
  TempFile file(R"({"seed": 42, "physical": {"t1": 7.5}})");
  const RunConfig cfg = load_run_config(file.path);
  CHECK(cfg.seed == 42);
  CHECK(cfg.protocol.seed == 42);
  CHECK(cfg.protocol.physical.t1 == 7.5);
  CHECK(cfg.protocol.physical.t2 == 0.5);
  CHECK(cfg.shots == default_run_config().shots);
}

TEST_CASE("unknown keys are rejected with their path") {
  TempFile file(R"({"physical": {"t_qnd": 1.0}})");
  try {
    load_run_config(file.path);
    FAIL("expected a config error");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find("physical.t_qnd") != std::string::npos);
  }
}

TEST_CASE("malformed values are diagnosed") {
  TempFile bad_json(R"({"seed": )");
  CHECK_THROWS_AS(load_run_config(bad_json.path), std::runtime_error);
  TempFile bad_grid(R"({"grid": [1e-3, 1e-4]})");
  CHECK_THROWS_AS(load_run_config(bad_grid.path), std::runtime_error);
  TempFile bad_shots(R"({"shots": 0})");
  CHECK_THROWS_AS(load_run_config(bad_shots.path), std::runtime_error);
  CHECK_THROWS_AS(load_run_config("does_not_exist.json"),
                  std::runtime_error);
}

TEST_CASE("code specs parse and print") {
  const CodeSpec spec = parse_code_spec("baconshor:5");
  CHECK(spec.family == CodeFamily::BaconShor);
  CHECK(spec.d == 5);
  CHECK(code_spec_name(spec) == "baconshor:5");
  CHECK(parse_code_spec("rotated").d == 3);  // default distance
  CHECK_THROWS_AS(parse_code_spec("steane:3"), std::runtime_error);
}

TEST_CASE("environment variable overrides the master seed") {
  RunConfig cfg = default_run_config();
  setenv("HERALDSIM_SEED", "987654", 1);
  apply_env_overrides(cfg);
  unsetenv("HERALDSIM_SEED");
  CHECK(cfg.seed == 987654);
  CHECK(cfg.protocol.seed == 987654);
}
