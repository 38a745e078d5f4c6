#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "truncauct/config.hpp"
#include "truncauct/dataset_io.hpp"
#include "truncauct/empirics.hpp"
#include "truncauct/identification.hpp"
#include "truncauct/simulator.hpp"
#include "truncauct/verify.hpp"

using namespace truncauct;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNotIdentified = 3;
constexpr int kExitInconsistent = 4;
constexpr int kExitIo = 5;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << text;
  if (!out) throw IoError("write failed: " + path);
}

ObservedDataset simulate_dataset(const RunConfig& cfg) {
  const auto raw = simulate(cfg.distribution, cfg.design, cfg.population,
                            cfg.l_total, cfg.seed);
  return observe(raw, cfg.info, cfg.design.format, cfg.design.truncation,
                 cfg.design.reserve_value(cfg.distribution));
}

ObservedDataset load_dataset(const RunConfig& cfg, const std::string& path) {
  auto ds = read_dataset(path, meta_path_for(path));
  if (ds.format != cfg.design.format ||
      ds.truncation != cfg.design.truncation) {
    throw ConfigError("config: design (" + to_string(cfg.design.format) +
                      ", " + to_string(cfg.design.truncation) +
                      ") does not match dataset metadata in " + path);
  }
  return ds;
}

void print_summary(const ObservedDataset& ds) {
  std::cout << "L=" << ds.l;
  if (ds.l_invalid) std::cout << " L_invalid=" << *ds.l_invalid;
  std::cout << "\n";
  if (ds.l == 0) return;
  const auto cs = count_stats(ds);
  for (const auto& [k, share] : cs.shares) {
    std::cout << "share(n_obs=" << k << ") = " << share << "\n";
  }
  if (cs.invalid_share) {
    std::cout << "invalid share = " << *cs.invalid_share << "\n";
  }
}

IdentificationResult run_estimator(const RunConfig& cfg,
                                   const ObservedDataset& ds,
                                   const std::optional<ObservedDataset>& ds2) {
  const auto& id = cfg.estimator;
  const auto& opt = cfg.tuning;
  const auto format = cfg.design.format;
  const auto need_n = [&]() -> int {
    if (cfg.assume && cfg.assume->n) return *cfg.assume->n;
    throw ConfigError("config: estimator " + id + " requires assume.n or --n");
  };
  const auto need_pair = [&]() -> std::pair<int, int> {
    if (cfg.assume && cfg.assume->n_pair) return *cfg.assume->n_pair;
    throw ConfigError("config: estimator " + id +
                      " requires assume.n_pair or --n-pair");
  };
  const auto need_ds2 = [&]() -> const ObservedDataset& {
    if (ds2) return *ds2;
    throw ConfigError("config: estimator " + id +
                      " compares two datasets; pass the second via --data2");
  };
  if (id == "prop1") return id_sp_fixed_price_only(ds, need_n(), opt);
  if (id == "prop2") return id_fp_fixed_invalid(ds, need_n(), opt);
  if (id == "prop3" || id == "prop8") return id_fixed_nobs(ds, opt);
  if (id == "prop4") {
    const auto [na, nb] = need_pair();
    return id_vary_known(ds, need_ds2(), na, nb, format, opt);
  }
  if (id == "prop5") return id_fp_vary_unknown(ds, opt);
  if (id == "prop6") return id_sp_vary_invalid_set(ds, opt);
  if (id == "prop7") return id_entry_fixed(ds, need_n(), format, opt);
  if (id == "prop9") {
    const auto [na, nb] = need_pair();
    return id_entry_vary_known_set(ds, need_ds2(), na, nb, format, opt);
  }
  if (id == "prop10") return id_entry_vary_unknown(ds, format, opt);
  throw ConfigError("config: unknown estimator id: " + id);
}

struct Cli {
  std::string config_path;
  std::string out_path;
  std::string data_path;
  std::string data2_path;
  std::string types_file;
  std::string estimator;
  std::string suite = "all";
  std::uint64_t seed = 0;
  bool seed_set = false;
  int n_override = 0;
  bool n_set = false;
  std::vector<int> n_pair;
  double mass_eps = 0.0;
  bool mass_eps_set = false;
  double bandwidth = 0.0;
  bool bandwidth_set = false;
  double grid_step = 0.0;
  bool grid_step_set = false;
  bool prop2_chainrule = false;
  bool quick = false;
};

void apply_overrides(RunConfig& cfg, const Cli& cli) {
  if (cli.seed_set) cfg.seed = cli.seed;
  if (!cli.estimator.empty()) cfg.estimator = cli.estimator;
  if (cli.n_set) {
    if (!cfg.assume) cfg.assume = AssumeBlock{};
    cfg.assume->n = cli.n_override;
  }
  if (cli.n_pair.size() == 2) {
    if (!cfg.assume) cfg.assume = AssumeBlock{};
    cfg.assume->n_pair = std::make_pair(cli.n_pair[0], cli.n_pair[1]);
  }
  if (cli.mass_eps_set) cfg.tuning.mass_eps = cli.mass_eps;
  if (cli.bandwidth_set) cfg.tuning.bandwidth = cli.bandwidth;
  if (cli.grid_step_set) cfg.tuning.grid_step = cli.grid_step;
  if (cli.prop2_chainrule) cfg.tuning.prop2_chainrule = true;
}

int cmd_simulate(const Cli& cli) {
  RunConfig cfg = RunConfig::parse_file(cli.config_path);
  apply_overrides(cfg, cli);

  ObservedDataset ds;
  if (!cli.types_file.empty()) {
    const auto bids = read_bids_file(cli.types_file);
    const double reserve = cfg.design.reserve_value(cfg.distribution);
    const auto raw = replay_recorded_bids(bids, cfg.design.format, reserve);
    ds = observe(raw, cfg.info, cfg.design.format, cfg.design.truncation,
                 reserve);
  } else {
    ds = simulate_dataset(cfg);
  }

  std::string csv = cli.out_path;
  if (csv.empty()) csv = cfg.out_dataset;
  if (csv.empty()) csv = "dataset.csv";
  write_dataset_csv(ds, csv);
  write_dataset_meta(ds, cfg.seed, meta_path_for(csv), cfg.serialize());

  std::cout << "wrote " << csv << " and " << meta_path_for(csv) << "\n";
  print_summary(ds);
  if (ds.l == 0) std::cerr << "warning: dataset is empty\n";
  return kExitOk;
}

int cmd_identify(const Cli& cli) {
  RunConfig cfg = RunConfig::parse_file(cli.config_path);
  apply_overrides(cfg, cli);

  if (cfg.estimator == "auto") cfg.estimator = route_estimator(cfg);
  cfg.validate_estimator_requirements();

  const ObservedDataset ds = cli.data_path.empty()
                                 ? simulate_dataset(cfg)
                                 : load_dataset(cfg, cli.data_path);
  std::optional<ObservedDataset> ds2;
  if (!cli.data2_path.empty()) ds2 = load_dataset(cfg, cli.data2_path);

  const auto res = run_estimator(cfg, ds, ds2);
  const std::string json = result_to_json(res, cfg.serialize());
  std::cout << json << "\n";
  std::string out = cli.out_path;
  if (out.empty()) out = cfg.out_result;
  if (!out.empty()) write_text(out, json + "\n");
  return kExitOk;
}

int cmd_verify(const Cli& cli, bool table_only) {
  VerifyOptions vopt;
  if (cli.seed_set) vopt.seed = cli.seed;
  if (cli.quick) {
    vopt.l_point = 20000;
    vopt.l_set_lo = 5000;
    vopt.l_set_hi = 20000;
    vopt.l_counterexample = 50000;
    vopt.l_twin = 200000;
    vopt.payoff_grid_points = 2001;
  }

  const std::string want = table_only ? "table" : cli.suite;
  const auto wants = [&](const std::string& name) {
    return want == "all" || want == name;
  };

  std::vector<SuiteReport> reports;
  if (wants("counterexamples") || want == "counterexample") {
    reports.push_back(run_counterexample_suite(vopt));
  }
  if (wants("lemma1")) reports.push_back(run_lemma1_suite(vopt));
  if (wants("screening") || want == "uniform_screening") {
    reports.push_back(run_uniform_screening_suite());
  }
  if (wants("roundtrip")) reports.push_back(run_roundtrip_suite(vopt));
  if (wants("twin")) reports.push_back(run_twin_suite(vopt));
  if (wants("selfconsistency")) reports.push_back(run_selfconsistency_suite());
  if (wants("replay")) reports.push_back(run_replay_suite());
  if (wants("arbitration")) reports.push_back(run_arbitration_suite(vopt));
  if (wants("table")) reports.push_back(run_table_suite(vopt));

  std::string json = "[\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].print(std::cout);
    if (reports[i].suite == "table") {
      std::cout << "\n" << render_table(reports[i]);
    }
    std::cout << "\n";
    json += reports[i].to_json();
    json += i + 1 < reports.size() ? ",\n" : "\n";
  }
  json += "]\n";
  if (!cli.out_path.empty()) write_text(cli.out_path, json);
  // Failing checks are report entries, not process errors.
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and identification for auctions with truncated "
               "transaction prices"};
  app.require_subcommand(1);
  Cli cli;

  const std::vector<std::string> estimators = {
      "auto",  "prop1", "prop2", "prop3", "prop4", "prop5",
      "prop6", "prop7", "prop8", "prop9", "prop10"};
  const std::vector<std::string> suites = {
      "all",          "counterexamples", "counterexample",
      "lemma1",       "screening",       "uniform_screening",
      "roundtrip",    "twin",            "selfconsistency",
      "replay",       "arbitration",     "table"};

  auto* sim = app.add_subcommand("simulate", "simulate a dataset to CSV");
  sim->add_option("--config", cli.config_path, "run config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  auto* sim_seed = sim->add_option("--seed", cli.seed, "override config seed");
  sim->add_option("--out", cli.out_path, "output CSV path");
  sim->add_option("--types-file", cli.types_file,
                  "replay recorded bids, one comma-separated auction per line")
      ->check(CLI::ExistingFile);

  auto* ident = app.add_subcommand("identify", "recover primitives from data");
  ident->add_option("--config", cli.config_path, "run config JSON")
      ->required()
      ->check(CLI::ExistingFile);
  ident->add_option("--data", cli.data_path,
                    "dataset CSV (default: simulate from the config)")
      ->check(CLI::ExistingFile);
  ident->add_option("--data2", cli.data2_path,
                    "second dataset for the two-sample estimators")
      ->check(CLI::ExistingFile);
  auto* id_seed = ident->add_option("--seed", cli.seed,
                                    "override config seed");
  ident->add_option("--out", cli.out_path, "write result JSON here too");
  ident->add_option("--estimator", cli.estimator, "estimator id or auto")
      ->check(CLI::IsMember(estimators));
  auto* id_n = ident->add_option("--n", cli.n_override,
                                 "potential bidders (fixed known N)");
  ident->add_option("--n-pair", cli.n_pair,
                    "two potential-bidder counts (varying known N)")
      ->expected(2);
  auto* id_mass = ident->add_option("--mass-eps", cli.mass_eps,
                                    "atom detection window");
  auto* id_bw = ident->add_option("--bandwidth", cli.bandwidth,
                                  "quantile derivative bandwidth");
  auto* id_gs = ident->add_option("--grid-step", cli.grid_step,
                                  "set-estimator grid step");
  ident->add_flag("--prop2-chainrule", cli.prop2_chainrule,
                  "use the chain-rule value formula in prop2");

  auto* ver = app.add_subcommand("verify", "run acceptance suites");
  ver->add_option("suite", cli.suite, "suite name or all")
      ->check(CLI::IsMember(suites));
  auto* ver_seed = ver->add_option("--seed", cli.seed, "override suite seed");
  ver->add_option("--out", cli.out_path, "write suite reports JSON");
  ver->add_flag("--quick", cli.quick, "smaller samples, looser runtime");

  auto* rpt = app.add_subcommand("report",
                                 "identification summary table");
  auto* rpt_seed = rpt->add_option("--seed", cli.seed, "override suite seed");
  rpt->add_option("--out", cli.out_path, "write table report JSON");
  rpt->add_flag("--quick", cli.quick, "smaller samples, looser runtime");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  cli.seed_set = sim_seed->count() > 0 || id_seed->count() > 0 ||
                 ver_seed->count() > 0 || rpt_seed->count() > 0;
  cli.n_set = id_n->count() > 0;
  cli.mass_eps_set = id_mass->count() > 0;
  cli.bandwidth_set = id_bw->count() > 0;
  cli.grid_step_set = id_gs->count() > 0;

  try {
    if (sim->parsed()) return cmd_simulate(cli);
    if (ident->parsed()) return cmd_identify(cli);
    if (ver->parsed()) return cmd_verify(cli, false);
    if (rpt->parsed()) return cmd_verify(cli, true);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NotIdentifiedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotIdentified;
  } catch (const InconsistentDataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
