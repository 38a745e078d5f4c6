#ifndef TRUNCAUCT_DATASET_IO_HPP
#define TRUNCAUCT_DATASET_IO_HPP

#include <stdexcept>
#include <string>

#include "truncauct/identification.hpp"
#include "truncauct/simulator.hpp"

namespace truncauct {

// File-level failures (open, malformed CSV/JSON, schema violations).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// CSV with header auction_id,transaction_price,n_obs; missing n_obs is an
// empty field; prices carry 17 significant digits so that reads are
// bit-exact.
void write_dataset_csv(const ObservedDataset& ds, const std::string& path);

// Sidecar metadata: L, L_invalid (null when unobserved), format,
// truncation_kind, info_structure, seed, plus the resolved run config when
// one is supplied (resolved_config as serialized JSON, empty = omit).
void write_dataset_meta(const ObservedDataset& ds, std::uint64_t seed,
                        const std::string& path,
                        const std::string& resolved_config = "");

ObservedDataset read_dataset(const std::string& csv_path,
                             const std::string& meta_path);

// Derives the conventional sidecar name: data.csv -> data.meta.json.
std::string meta_path_for(const std::string& csv_path);

// One auction per line, comma-separated bid values (see
// replay_recorded_bids).
std::vector<std::vector<double>> read_bids_file(const std::string& path);

// Serializes an estimate for the CLI: point fields appear when present, set
// results as interval or pair lists, diagnostics always. resolved_config, if
// nonempty, must be serialized JSON and is embedded under "config".
std::string result_to_json(const IdentificationResult& res,
                           const std::string& resolved_config = "");

std::string to_string(AuctionFormat format);
std::string to_string(TruncationKind kind);
AuctionFormat format_from_string(const std::string& s);
TruncationKind truncation_from_string(const std::string& s);

}  // namespace truncauct

#endif  // TRUNCAUCT_DATASET_IO_HPP
