#ifndef TRUNCAUCT_CONFIG_HPP
#define TRUNCAUCT_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "truncauct/identification.hpp"
#include "truncauct/simulator.hpp"

namespace truncauct {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// How the number of potential bidders is assumed to behave, which
// together with the design and the info structure routes `auto` to an
// estimator.
enum class NKind { FixedKnown, FixedUnknown, VaryingKnown, VaryingUnknown };

struct AssumeBlock {
  NKind n_kind = NKind::FixedKnown;
  std::optional<int> n;                        // FixedKnown
  std::optional<std::pair<int, int>> n_pair;   // VaryingKnown
};

struct RunConfig {
  ValueDistribution distribution = ValueDistribution::uniform(0.0, 1.0);
  SellerPreferences preferences = SellerPreferences::risk_neutral(0.0);
  AuctionDesign design = AuctionDesign::reserve(AuctionFormat::SecondPrice, 0.0);
  PopulationSpec population = PopulationSpec::degenerate(2);
  InfoStructure info;
  std::uint64_t l_total = 0;
  std::uint64_t seed = 0;
  std::string estimator = "auto";  // prop1..prop10 | auto
  std::optional<AssumeBlock> assume;
  EstimatorOptions tuning;
  std::string out_dataset;  // simulate: CSV path
  std::string out_result;   // identify/verify: JSON path

  // Parses, applying defaults for absent fields; throws ConfigError with
  // the offending key on violations.
  static RunConfig parse(const std::string& json_text);
  static RunConfig parse_file(const std::string& path);

  // Full resolved form, defaults included. parse(serialize()) is identity.
  std::string serialize() const;

  // Checks that the chosen estimator's required observables are contained
  // in the info structure, quoting the requirement on failure.
  void validate_estimator_requirements() const;
};

// Picks the estimator id for `auto` from the design, N assumption, and
// observables. Throws NotIdentifiedError for cells where the requested
// quantities are not recoverable, ConfigError when the assume block is
// missing or inconsistent.
std::string route_estimator(const RunConfig& cfg);

}  // namespace truncauct

#endif  // TRUNCAUCT_CONFIG_HPP
