#include "truncauct/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "truncauct/dataset_io.hpp"

namespace truncauct {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw ConfigError("config: " + key + ": " + why);
}

void check_keys(const json& j, const std::string& where,
                const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) fail(where + "." + key, "unknown key");
  }
}

double num(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) fail(key, "expected a number");
  return j[key].get<double>();
}

std::vector<std::pair<double, double>> pair_list(const json& j,
                                                 const std::string& key) {
  std::vector<std::pair<double, double>> out;
  if (!j.is_array()) fail(key, "expected an array of [x, y] pairs");
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2) {
      fail(key, "expected an array of [x, y] pairs");
    }
    out.emplace_back(item[0].get<double>(), item[1].get<double>());
  }
  return out;
}

ValueDistribution parse_distribution(const json& j) {
  check_keys(j, "distribution", {"family", "lo", "hi", "exponent", "knots"});
  const std::string family = j.value("family", "uniform");
  try {
    if (family == "uniform") {
      return ValueDistribution::uniform(num(j, "lo", 0.0), num(j, "hi", 1.0));
    }
    if (family == "shifted_uniform") {
      return ValueDistribution::shifted_uniform(num(j, "lo", 0.0),
                                                num(j, "hi", 1.0));
    }
    if (family == "power_law") {
      return ValueDistribution::power_law(num(j, "exponent", 1.0),
                                          num(j, "lo", 0.0),
                                          num(j, "hi", 1.0));
    }
    if (family == "tabulated") {
      if (!j.contains("knots")) fail("distribution.knots", "required");
      return ValueDistribution::tabulated(
          pair_list(j["knots"], "distribution.knots"));
    }
  } catch (const std::invalid_argument& e) {
    fail("distribution", e.what());
  }
  fail("distribution.family", "unknown family " + family);
}

json distribution_to_json(const ValueDistribution& d) {
  json j;
  switch (d.family()) {
    case Family::Uniform:
      j["family"] = "uniform";
      j["lo"] = d.support_lo();
      j["hi"] = d.support_hi();
      break;
    case Family::ShiftedUniform:
      j["family"] = "shifted_uniform";
      j["lo"] = d.support_lo();
      j["hi"] = d.support_hi();
      break;
    case Family::PowerLaw:
      j["family"] = "power_law";
      j["exponent"] = d.power_exponent();
      j["lo"] = d.support_lo();
      j["hi"] = d.support_hi();
      break;
    case Family::Tabulated:
      j["family"] = "tabulated";
      j["knots"] = d.knots();
      break;
  }
  return j;
}

SellerPreferences parse_preferences(const json& j) {
  check_keys(j, "preferences", {"kind", "rho", "outside_value", "knots"});
  const std::string kind = j.value("kind", "risk_neutral");
  const double v0 = num(j, "outside_value", 0.0);
  try {
    if (kind == "risk_neutral") return SellerPreferences::risk_neutral(v0);
    if (kind == "crra") {
      return SellerPreferences::crra(num(j, "rho", 0.5), v0);
    }
    if (kind == "tabulated") {
      if (!j.contains("knots")) fail("preferences.knots", "required");
      return SellerPreferences::tabulated(
          pair_list(j["knots"], "preferences.knots"), v0);
    }
  } catch (const std::invalid_argument& e) {
    fail("preferences", e.what());
  }
  fail("preferences.kind", "unknown kind " + kind);
}

json preferences_to_json(const SellerPreferences& p) {
  json j;
  switch (p.kind()) {
    case UtilityKind::RiskNeutral:
      j["kind"] = "risk_neutral";
      break;
    case UtilityKind::Crra:
      j["kind"] = "crra";
      j["rho"] = p.crra_rho();
      break;
    case UtilityKind::Tabulated:
      j["kind"] = "tabulated";
      j["knots"] = p.knots();
      break;
  }
  j["outside_value"] = p.outside_value();
  return j;
}

AuctionDesign parse_design(const json& j) {
  check_keys(j, "design", {"format", "truncation", "alpha0", "cost"});
  AuctionFormat format = AuctionFormat::SecondPrice;
  if (j.contains("format")) {
    try {
      format = format_from_string(j["format"].get<std::string>());
    } catch (const IoError& e) {
      fail("design.format", e.what());
    }
  }
  const std::string truncation = j.value("truncation", "reserve");
  try {
    if (truncation == "reserve") {
      return AuctionDesign::reserve(format, num(j, "alpha0", 0.0));
    }
    if (truncation == "entry_cost") {
      if (!j.contains("cost")) fail("design.cost", "required for entry_cost");
      return AuctionDesign::entry(format, num(j, "cost", 0.0));
    }
  } catch (const std::invalid_argument& e) {
    fail("design", e.what());
  }
  fail("design.truncation", "unknown truncation " + truncation);
}

json design_to_json(const AuctionDesign& d) {
  json j;
  j["format"] = to_string(d.format);
  j["truncation"] = to_string(d.truncation);
  if (d.truncation == TruncationKind::Reserve) {
    j["alpha0"] = d.alpha0;
  } else {
    j["cost"] = d.cost;
  }
  return j;
}

PopulationSpec parse_population(const json& j) {
  if (!j.is_array()) fail("population", "expected an array of [N, p] pairs");
  std::vector<std::pair<int, double>> support;
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 2) {
      fail("population", "expected an array of [N, p] pairs");
    }
    support.emplace_back(item[0].get<int>(), item[1].get<double>());
  }
  try {
    return PopulationSpec::of(std::move(support));
  } catch (const std::invalid_argument& e) {
    fail("population", e.what());
  }
}

InfoStructure parse_info(const json& j) {
  check_keys(j, "info",
             {"observe_nobs", "observe_invalid_count", "drop_at_reserve"});
  InfoStructure info;
  info.observe_nobs = j.value("observe_nobs", false);
  info.observe_invalid_count = j.value("observe_invalid_count", false);
  info.drop_at_reserve = j.value("drop_at_reserve", false);
  return info;
}

NKind nkind_from_string(const std::string& s) {
  if (s == "fixed_known") return NKind::FixedKnown;
  if (s == "fixed_unknown") return NKind::FixedUnknown;
  if (s == "varying_known") return NKind::VaryingKnown;
  if (s == "varying_unknown") return NKind::VaryingUnknown;
  fail("assume.n_kind", "unknown kind " + s);
}

std::string nkind_to_string(NKind k) {
  switch (k) {
    case NKind::FixedKnown: return "fixed_known";
    case NKind::FixedUnknown: return "fixed_unknown";
    case NKind::VaryingKnown: return "varying_known";
    case NKind::VaryingUnknown: return "varying_unknown";
  }
  return "fixed_known";
}

AssumeBlock parse_assume(const json& j) {
  check_keys(j, "assume", {"n_kind", "n", "n_pair"});
  AssumeBlock a;
  if (!j.contains("n_kind")) fail("assume.n_kind", "required");
  a.n_kind = nkind_from_string(j["n_kind"].get<std::string>());
  if (j.contains("n")) a.n = j["n"].get<int>();
  if (j.contains("n_pair")) {
    const auto& p = j["n_pair"];
    if (!p.is_array() || p.size() != 2) {
      fail("assume.n_pair", "expected [N1, N2]");
    }
    a.n_pair = std::make_pair(p[0].get<int>(), p[1].get<int>());
  }
  return a;
}

EstimatorOptions parse_tuning(const json& j) {
  check_keys(j, "tuning",
             {"bandwidth", "grid_step", "grid_step_2d", "eps_set",
              "noise_slack_sigma", "tail_delta", "tau_eq", "mass_eps",
              "v_grid_step", "prop2_chainrule", "jackknife"});
  EstimatorOptions t;
  t.bandwidth = num(j, "bandwidth", t.bandwidth);
  t.grid_step = num(j, "grid_step", t.grid_step);
  t.grid_step_2d = num(j, "grid_step_2d", t.grid_step_2d);
  t.eps_set = num(j, "eps_set", t.eps_set);
  t.noise_slack_sigma = num(j, "noise_slack_sigma", t.noise_slack_sigma);
  t.tail_delta = num(j, "tail_delta", t.tail_delta);
  t.tau_eq = num(j, "tau_eq", t.tau_eq);
  t.mass_eps = num(j, "mass_eps", t.mass_eps);
  t.v_grid_step = num(j, "v_grid_step", t.v_grid_step);
  t.prop2_chainrule = j.value("prop2_chainrule", t.prop2_chainrule);
  t.jackknife = j.value("jackknife", t.jackknife);
  if (!(t.grid_step > 0.0) || !(t.grid_step_2d > 0.0) ||
      !(t.v_grid_step > 0.0)) {
    fail("tuning", "grid steps must be positive");
  }
  return t;
}

json tuning_to_json(const EstimatorOptions& t) {
  return json{{"bandwidth", t.bandwidth},
              {"grid_step", t.grid_step},
              {"grid_step_2d", t.grid_step_2d},
              {"eps_set", t.eps_set},
              {"noise_slack_sigma", t.noise_slack_sigma},
              {"tail_delta", t.tail_delta},
              {"tau_eq", t.tau_eq},
              {"mass_eps", t.mass_eps},
              {"v_grid_step", t.v_grid_step},
              {"prop2_chainrule", t.prop2_chainrule},
              {"jackknife", t.jackknife}};
}

const std::set<std::string> kEstimators = {
    "auto",  "prop1", "prop2", "prop3", "prop4", "prop5",
    "prop6", "prop7", "prop8", "prop9", "prop10"};

}  // namespace

RunConfig RunConfig::parse(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  check_keys(j, "config",
             {"distribution", "preferences", "design", "population", "info",
              "l_total", "seed", "estimator", "assume", "tuning",
              "out_dataset", "out_result"});

  RunConfig cfg;
  if (j.contains("distribution")) {
    cfg.distribution = parse_distribution(j["distribution"]);
  }
  if (j.contains("preferences")) {
    cfg.preferences = parse_preferences(j["preferences"]);
  }
  if (j.contains("design")) cfg.design = parse_design(j["design"]);
  if (j.contains("population")) {
    cfg.population = parse_population(j["population"]);
  }
  if (j.contains("info")) cfg.info = parse_info(j["info"]);
  cfg.l_total = j.value("l_total", std::uint64_t{0});
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.estimator = j.value("estimator", "auto");
  if (!kEstimators.count(cfg.estimator)) {
    fail("estimator", "unknown estimator id " + cfg.estimator);
  }
  if (j.contains("assume")) cfg.assume = parse_assume(j["assume"]);
  if (j.contains("tuning")) cfg.tuning = parse_tuning(j["tuning"]);
  cfg.out_dataset = j.value("out_dataset", "");
  cfg.out_result = j.value("out_result", "");

  try {
    cfg.design.validate(cfg.distribution);
  } catch (const std::invalid_argument& e) {
    fail("design", e.what());
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::string RunConfig::serialize() const {
  json j;
  j["distribution"] = distribution_to_json(distribution);
  j["preferences"] = preferences_to_json(preferences);
  j["design"] = design_to_json(design);
  j["population"] = population.support;
  j["info"] = json{{"observe_nobs", info.observe_nobs},
                   {"observe_invalid_count", info.observe_invalid_count},
                   {"drop_at_reserve", info.drop_at_reserve}};
  j["l_total"] = l_total;
  j["seed"] = seed;
  j["estimator"] = estimator;
  if (assume.has_value()) {
    json a;
    a["n_kind"] = nkind_to_string(assume->n_kind);
    if (assume->n.has_value()) a["n"] = *assume->n;
    if (assume->n_pair.has_value()) {
      a["n_pair"] = json::array({assume->n_pair->first, assume->n_pair->second});
    }
    j["assume"] = a;
  }
  j["tuning"] = tuning_to_json(tuning);
  j["out_dataset"] = out_dataset;
  j["out_result"] = out_result;
  return j.dump(2);
}

std::string route_estimator(const RunConfig& cfg) {
  if (!cfg.assume.has_value()) {
    throw ConfigError(
        "config: assume: the auto estimator needs the N assumption block "
        "(assume.n_kind plus n or n_pair)");
  }
  const AssumeBlock& a = *cfg.assume;
  const bool fp = cfg.design.format == AuctionFormat::FirstPrice;
  const bool reserve = cfg.design.truncation == TruncationKind::Reserve;
  const InfoStructure& info = cfg.info;

  switch (a.n_kind) {
    case NKind::FixedKnown:
      if (!a.n.has_value()) {
        throw ConfigError("config: assume.n: required for fixed_known");
      }
      if (reserve) {
        if (!fp) return "prop1";
        if (info.observe_invalid_count) return "prop2";
        throw NotIdentifiedError(
            "first-price transaction prices under a binding reserve do not "
            "identify the value distribution (prop1 holds for second-price "
            "auctions only); the invalid-auction count would enable prop2");
      }
      if (fp && !info.observe_invalid_count) {
        throw NotIdentifiedError(
            "first-price transaction prices under entry costs do not "
            "identify the model; the invalid-auction count would enable "
            "prop7");
      }
      return "prop7";
    case NKind::FixedUnknown:
      if (!info.observe_nobs) {
        throw NotIdentifiedError(
            "a fixed unknown N without observed active-bidder counts leaves "
            "the model unidentified");
      }
      return reserve ? "prop3" : "prop8";
    case NKind::VaryingKnown:
      if (!a.n_pair.has_value()) {
        throw ConfigError("config: assume.n_pair: required for varying_known");
      }
      return reserve ? "prop4" : "prop9";
    case NKind::VaryingUnknown:
      if (!info.observe_nobs) {
        throw NotIdentifiedError(
            "a varying unknown N without observed active-bidder counts "
            "leaves the model unidentified");
      }
      if (!reserve) return "prop10";
      if (fp) return "prop5";
      if (info.observe_invalid_count) return "prop6";
      throw NotIdentifiedError(
          "second-price prices with observed counts but varying unknown N "
          "are not identified (prop5's counterexample: two distinct "
          "populations generate the same observables); the invalid-auction "
          "count would enable the prop6 set estimator");
  }
  throw ConfigError("config: assume.n_kind: unrecognized value");
}

void RunConfig::validate_estimator_requirements() const {
  const std::string id = estimator == "auto" ? route_estimator(*this) : estimator;
  const bool fp = design.format == AuctionFormat::FirstPrice;
  const bool reserve = design.truncation == TruncationKind::Reserve;

  const auto want = [&](bool ok, const std::string& requirement) {
    if (!ok) {
      throw ConfigError("config: estimator " + id + " requires " +
                        requirement);
    }
  };

  if (id == "prop1") {
    want(!fp, "second-price data");
    want(reserve, "reserve-price truncation");
    want(!info.drop_at_reserve,
         "the full price record including the reserve-price atom "
         "(info.drop_at_reserve must be off)");
  } else if (id == "prop2") {
    want(fp, "first-price data");
    want(reserve, "reserve-price truncation");
    want(info.observe_invalid_count,
         "the invalid-auction count (info.observe_invalid_count)");
  } else if (id == "prop3") {
    want(reserve, "reserve-price truncation");
    want(info.observe_nobs, "observed active-bidder counts (info.observe_nobs)");
  } else if (id == "prop4") {
    want(reserve, "reserve-price truncation");
    if (!fp) {
      want(info.drop_at_reserve,
           "prices strictly above the reserve (info.drop_at_reserve)");
    }
  } else if (id == "prop5") {
    want(fp, "first-price data");
    want(reserve, "reserve-price truncation");
    want(info.observe_nobs, "observed active-bidder counts (info.observe_nobs)");
  } else if (id == "prop6") {
    want(!fp, "second-price data");
    want(reserve, "reserve-price truncation");
    want(info.observe_nobs, "observed active-bidder counts (info.observe_nobs)");
    want(info.observe_invalid_count,
         "the invalid-auction count (info.observe_invalid_count)");
  } else if (id == "prop7") {
    want(!reserve, "entry-cost truncation");
    if (fp) {
      want(info.observe_invalid_count,
           "the invalid-auction count (info.observe_invalid_count)");
    }
  } else if (id == "prop8") {
    want(!reserve, "entry-cost truncation");
    want(info.observe_nobs, "observed active-bidder counts (info.observe_nobs)");
  } else if (id == "prop9") {
    want(!reserve, "entry-cost truncation");
  } else if (id == "prop10") {
    want(!reserve, "entry-cost truncation");
    want(info.observe_nobs, "observed active-bidder counts (info.observe_nobs)");
  }
}

}  // namespace truncauct
