#include "truncauct/dataset_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace truncauct {

namespace {

using nlohmann::json;

std::string format_price(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json info_to_json(const InfoStructure& info) {
  return json{{"observe_nobs", info.observe_nobs},
              {"observe_invalid_count", info.observe_invalid_count},
              {"drop_at_reserve", info.drop_at_reserve}};
}

InfoStructure info_from_json(const json& j) {
  InfoStructure info;
  info.observe_nobs = j.value("observe_nobs", false);
  info.observe_invalid_count = j.value("observe_invalid_count", false);
  info.drop_at_reserve = j.value("drop_at_reserve", false);
  return info;
}

}  // namespace

std::string to_string(AuctionFormat format) {
  return format == AuctionFormat::FirstPrice ? "first_price" : "second_price";
}

std::string to_string(TruncationKind kind) {
  return kind == TruncationKind::Reserve ? "reserve" : "entry_cost";
}

AuctionFormat format_from_string(const std::string& s) {
  if (s == "first_price") return AuctionFormat::FirstPrice;
  if (s == "second_price") return AuctionFormat::SecondPrice;
  throw IoError("unknown auction format: " + s);
}

TruncationKind truncation_from_string(const std::string& s) {
  if (s == "reserve") return TruncationKind::Reserve;
  if (s == "entry_cost") return TruncationKind::EntryCost;
  throw IoError("unknown truncation kind: " + s);
}

void write_dataset_csv(const ObservedDataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << "auction_id,transaction_price,n_obs\n";
  for (const ObservedRow& row : ds.rows) {
    out << row.auction_id << ',' << format_price(row.transaction_price) << ',';
    if (row.n_obs.has_value()) out << *row.n_obs;
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

void write_dataset_meta(const ObservedDataset& ds, std::uint64_t seed,
                        const std::string& path,
                        const std::string& resolved_config) {
  json j;
  j["L"] = ds.l;
  if (ds.l_invalid.has_value()) {
    j["L_invalid"] = *ds.l_invalid;
  } else {
    j["L_invalid"] = nullptr;
  }
  j["format"] = to_string(ds.format);
  j["truncation_kind"] = to_string(ds.truncation);
  j["info_structure"] = info_to_json(ds.info);
  j["seed"] = seed;
  if (!resolved_config.empty()) {
    j["config"] = json::parse(resolved_config);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

std::string meta_path_for(const std::string& csv_path) {
  const std::size_t dot = csv_path.rfind('.');
  if (dot == std::string::npos) return csv_path + ".meta.json";
  return csv_path.substr(0, dot) + ".meta.json";
}

ObservedDataset read_dataset(const std::string& csv_path,
                             const std::string& meta_path) {
  std::ifstream meta_in(meta_path);
  if (!meta_in) throw IoError("cannot open metadata: " + meta_path);
  json meta;
  try {
    meta_in >> meta;
  } catch (const json::exception& e) {
    throw IoError("malformed metadata JSON in " + meta_path + ": " + e.what());
  }

  ObservedDataset ds;
  try {
    ds.format = format_from_string(meta.at("format").get<std::string>());
    ds.truncation =
        truncation_from_string(meta.at("truncation_kind").get<std::string>());
    if (meta.contains("info_structure")) {
      ds.info = info_from_json(meta["info_structure"]);
    }
    if (meta.contains("L_invalid") && !meta["L_invalid"].is_null()) {
      ds.l_invalid = meta["L_invalid"].get<std::uint64_t>();
    }
  } catch (const json::exception& e) {
    throw IoError("metadata schema violation in " + meta_path + ": " +
                  e.what());
  }

  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open dataset: " + csv_path);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty dataset file: " + csv_path);
  if (line != "auction_id,transaction_price,n_obs") {
    throw IoError("unexpected CSV header in " + csv_path + ": " + line);
  }
  std::uint64_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    ObservedRow row;
    const char* p = line.c_str();
    char* end = nullptr;
    row.auction_id = std::strtoull(p, &end, 10);
    if (end == p || *end != ',') {
      throw IoError("bad auction_id at " + csv_path + ":" +
                    std::to_string(lineno));
    }
    p = end + 1;
    row.transaction_price = std::strtod(p, &end);
    if (end == p || *end != ',') {
      throw IoError("bad transaction_price at " + csv_path + ":" +
                    std::to_string(lineno));
    }
    p = end + 1;
    if (*p != '\0') {
      row.n_obs = static_cast<int>(std::strtol(p, &end, 10));
      if (end == p || *end != '\0') {
        throw IoError("bad n_obs at " + csv_path + ":" +
                      std::to_string(lineno));
      }
    }
    ds.rows.push_back(row);
  }
  ds.l = ds.rows.size();
  if (meta.contains("L")) {
    const std::uint64_t expected = meta["L"].get<std::uint64_t>();
    if (expected != ds.l) {
      throw IoError("metadata L=" + std::to_string(expected) + " but " +
                    csv_path + " holds " + std::to_string(ds.l) + " rows");
    }
  }
  return ds;
}

std::vector<std::vector<double>> read_bids_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bids file: " + path);
  std::vector<std::vector<double>> out;
  std::string line;
  std::uint64_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> bids;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        bids.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("bad bid value at " + path + ":" +
                      std::to_string(lineno));
      }
    }
    if (bids.empty()) {
      throw IoError("empty auction row at " + path + ":" +
                    std::to_string(lineno));
    }
    out.push_back(std::move(bids));
  }
  return out;
}

std::string result_to_json(const IdentificationResult& res,
                           const std::string& resolved_config) {
  nlohmann::json j;
  j["proposition"] = res.proposition;
  if (res.alpha_star) j["alpha_star"] = *res.alpha_star;
  if (!res.alpha_set.empty()) {
    auto set = nlohmann::json::array();
    for (const auto& iv : res.alpha_set) set.push_back({iv.lo, iv.hi});
    j["alpha_set"] = set;
  }
  if (!res.alpha_set_2.empty()) {
    auto set = nlohmann::json::array();
    for (const auto& iv : res.alpha_set_2) set.push_back({iv.lo, iv.hi});
    j["alpha_set_2"] = set;
  }
  if (!res.accepted_pairs.empty()) {
    auto pairs = nlohmann::json::array();
    for (const auto& [a, b] : res.accepted_pairs) pairs.push_back({a, b});
    j["accepted_pairs"] = pairs;
  }
  if (res.n_recovered) j["n"] = *res.n_recovered;
  if (res.entry_cost) j["f"] = *res.entry_cost;
  if (!res.v_grid.empty()) {
    auto grid = nlohmann::json::array();
    for (const auto& [a, v] : res.v_grid) grid.push_back({a, v});
    j["v_grid"] = grid;
  }
  if (!res.v_band.empty()) {
    auto band = nlohmann::json::array();
    for (const auto& [a, lo, hi] : res.v_band) band.push_back({a, lo, hi});
    j["v_band"] = band;
  }
  nlohmann::json diag;
  diag["residuals"] = res.diagnostics.residuals;
  diag["bandwidths"] = res.diagnostics.bandwidths;
  diag["tuning"] = res.diagnostics.tuning;
  diag["warnings"] = res.diagnostics.warnings;
  diag["rearranged"] = res.diagnostics.rearranged;
  diag["rearrange_frequency"] = res.diagnostics.rearrange_frequency;
  j["diagnostics"] = diag;
  if (!resolved_config.empty()) {
    j["config"] = nlohmann::json::parse(resolved_config);
  }
  return j.dump(2);
}

}  // namespace truncauct
