#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "truncauct/dataset_io.hpp"

using namespace truncauct;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TRUNCAUCT_CLI_PATH) + " " + args +
                          " > cli_stdout.txt 2> cli_stderr.txt";
  const int status = std::system(cmd.c_str());
  RunResult r;
  if (WIFEXITED(status)) r.code = WEXITSTATUS(status);
  r.out = slurp("cli_stdout.txt");
  r.err = slurp("cli_stderr.txt");
  return r;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

constexpr const char* kSpReserveConfig = R"({
  "distribution": {"family": "uniform", "lo": 0.0, "hi": 1.0},
  "design": {"format": "second_price", "truncation": "reserve", "alpha0": 0.3},
  "population": [[3, 1.0]],
  "info": {"observe_nobs": true, "observe_invalid_count": true},
  "l_total": 2000,
  "seed": 7,
  "assume": {"n_kind": "fixed_known", "n": 3}
})";

}  // namespace

TEST_CASE("simulate writes deterministic CSV + metadata") {
  write_file("cli_cfg_sim.json", kSpReserveConfig);
  const auto a = run_cli("simulate --config cli_cfg_sim.json --out cli_a.csv");
  REQUIRE(a.code == 0);
  CHECK(a.out.find("wrote cli_a.csv") != std::string::npos);
  CHECK(a.out.find("L=") != std::string::npos);

  const auto b = run_cli("simulate --config cli_cfg_sim.json --out cli_b.csv");
  REQUIRE(b.code == 0);
  CHECK(slurp("cli_a.csv") == slurp("cli_b.csv"));
  CHECK_FALSE(slurp("cli_a.meta.json").empty());

  const auto ds = read_dataset("cli_a.csv", "cli_a.meta.json");
  CHECK(ds.l > 1500);
  CHECK(ds.l_invalid.has_value());
}

TEST_CASE("simulate with zero auctions warns but succeeds") {
  write_file("cli_cfg_empty.json", R"({
    "design": {"format": "second_price", "truncation": "reserve", "alpha0": 0.3},
    "l_total": 0
  })");
  const auto r =
      run_cli("simulate --config cli_cfg_empty.json --out cli_empty.csv");
  CHECK(r.code == 0);
  CHECK(r.err.find("empty") != std::string::npos);
}

TEST_CASE("recorded bids replay through simulate --types-file") {
  write_file("cli_cfg_replay.json", R"({
    "distribution": {"family": "uniform", "lo": 0.0, "hi": 5.0},
    "design": {"format": "first_price", "truncation": "reserve", "alpha0": 0.5},
    "info": {"observe_nobs": true, "observe_invalid_count": true},
    "population": [[2, 1.0]]
  })");
  write_file("cli_bids.txt", "3,4\n2,3\n1,2\n");
  const auto r = run_cli(
      "simulate --config cli_cfg_replay.json --types-file cli_bids.txt "
      "--out cli_replay.csv");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("L=2") != std::string::npos);
  CHECK(r.out.find("L_invalid=1") != std::string::npos);

  const auto ds = read_dataset("cli_replay.csv", "cli_replay.meta.json");
  REQUIRE(ds.l == 2);
  CHECK(ds.rows[0].transaction_price == 4.0);
  CHECK(ds.rows[0].n_obs == 2);
  CHECK(ds.rows[1].transaction_price == 3.0);
  CHECK(ds.rows[1].n_obs == 1);
}

TEST_CASE("identify routes auto to the mass-inversion estimator") {
  write_file("cli_cfg_id.json", R"({
    "design": {"format": "second_price", "truncation": "reserve", "alpha0": 0.3},
    "population": [[3, 1.0]],
    "l_total": 50000,
    "seed": 11,
    "assume": {"n_kind": "fixed_known", "n": 3}
  })");
  const auto r = run_cli("identify --config cli_cfg_id.json");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["proposition"] == "prop1");
  CHECK(std::abs(j["alpha_star"].get<double>() - 0.3) <= 0.05);
  // The resolved config rides along, estimator resolved away from auto.
  CHECK(j["config"]["estimator"] == "prop1");
  CHECK(j["config"]["tuning"]["grid_step"].get<double>() == 0.002);
}

TEST_CASE("identify exits 3 when the cell is not identified") {
  write_file("cli_cfg_fp_blind.json", R"({
    "design": {"format": "first_price", "truncation": "reserve", "alpha0": 0.3},
    "population": [[3, 1.0]],
    "l_total": 1000,
    "assume": {"n_kind": "fixed_known", "n": 3}
  })");
  const auto r = run_cli("identify --config cli_cfg_fp_blind.json");
  CHECK(r.code == 3);
  CHECK(r.err.find("prop1") != std::string::npos);

  write_file("cli_cfg_sp_vary.json", R"({
    "design": {"format": "second_price", "truncation": "reserve", "alpha0": 0.3},
    "population": [[2, 0.5], [3, 0.5]],
    "info": {"observe_nobs": true},
    "l_total": 1000,
    "assume": {"n_kind": "varying_unknown"}
  })");
  const auto r2 = run_cli("identify --config cli_cfg_sp_vary.json");
  CHECK(r2.code == 3);
  CHECK(r2.err.find("prop5") != std::string::npos);
}

TEST_CASE("identify exits 2 on unmet estimator requirements") {
  write_file("cli_cfg_wrong_est.json", R"({
    "design": {"format": "first_price", "truncation": "reserve", "alpha0": 0.3},
    "population": [[3, 1.0]],
    "l_total": 1000,
    "assume": {"n_kind": "fixed_known", "n": 3}
  })");
  const auto r =
      run_cli("identify --config cli_cfg_wrong_est.json --estimator prop1");
  CHECK(r.code == 2);
  CHECK(r.err.find("requires") != std::string::npos);
}

TEST_CASE("identify exits 4 when the data contradict the model") {
  // Every recorded price sits exactly at the reserve value V(0.5) = 3, so
  // the reserve-atom inversion has no interior prices to work with.
  write_file("cli_cfg_atom.json", R"({
    "distribution": {"family": "uniform", "lo": 0.0, "hi": 6.0},
    "design": {"format": "second_price", "truncation": "reserve", "alpha0": 0.5},
    "population": [[2, 1.0]],
    "info": {"observe_nobs": true},
    "assume": {"n_kind": "fixed_known", "n": 2}
  })");
  write_file("cli_bids_atom.txt", "3,3\n3,3\n3,3\n");
  const auto sim = run_cli(
      "simulate --config cli_cfg_atom.json --types-file cli_bids_atom.txt "
      "--out cli_atom.csv");
  REQUIRE(sim.code == 0);
  const auto r =
      run_cli("identify --config cli_cfg_atom.json --data cli_atom.csv");
  CHECK(r.code == 4);
}

TEST_CASE("config and usage errors exit 2") {
  write_file("cli_cfg_bad.json", R"({"spurious": 1})");
  CHECK(run_cli("identify --config cli_cfg_bad.json").code == 2);
  CHECK(run_cli("simulate --config cli_missing.json").code == 2);
  CHECK(run_cli("frobnicate").code == 2);
  CHECK(run_cli("verify nosuchsuite").code == 2);
}

TEST_CASE("verify runs fast suites and reports instead of failing") {
  const auto r = run_cli("verify replay --out cli_verify.json");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("== suite replay ==") != std::string::npos);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  const auto j = nlohmann::json::parse(slurp("cli_verify.json"));
  REQUIRE(j.is_array());
  CHECK(j[0]["suite"] == "replay");
  CHECK(j[0]["all_pass"].get<bool>());

  const auto r2 = run_cli("verify screening");
  REQUIRE(r2.code == 0);
  CHECK(r2.out.find("== suite uniform_screening ==") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("identify --help").code == 0);
}
