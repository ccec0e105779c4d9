#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vanet/montecarlo.hpp"

namespace vanet {

// Validation failure; key() is the JSON path of the offending entry, e.g.
// "range_policy.fraction_high".
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::runtime_error(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

struct RunConfig {
  ExperimentSpec spec;
  std::string output;  // empty: caller decides
  int verbosity = 0;
  unsigned workers = 0;  // 0: hardware concurrency
};

// Command-line values; any field that is set wins over the config file.
struct ConfigOverrides {
  std::optional<std::vector<double>> densities_per_km;
  std::optional<double> density_start;
  std::optional<double> density_stop;
  std::optional<double> density_step;
  std::optional<double> segment_length_m;
  std::optional<std::string> policy;
  std::optional<double> range_m;
  std::optional<double> range_low_m;
  std::optional<double> range_high_m;
  std::optional<double> fraction_high;
  std::optional<bool> exact_count;
  std::optional<double> mean_m;
  std::optional<double> std_m;
  std::optional<std::vector<double>> support;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> master_seed;
  std::optional<std::vector<std::string>> methods;
  std::optional<std::string> direction;
  std::optional<std::string> output;
  std::optional<int> verbosity;
  std::optional<unsigned> workers;
  std::optional<bool> relaxed_exponent;
};

// Merges overrides into the document, then validates it. Throws ConfigError.
RunConfig parse_config(nlohmann::json doc, const ConfigOverrides& overrides = {});

// Reads a JSON file (or starts from an empty document when path is empty).
RunConfig load_config(const std::string& path, const ConfigOverrides& overrides = {});

// Inclusive arithmetic grid start, start + step, ... <= stop.
std::vector<double> density_grid(double start, double stop, double step);

// Parses a range policy object such as {"type": "fixed", "range_m": 750}.
RangePolicy parse_range_policy(const nlohmann::json& obj, const std::string& path = "range_policy");

// Inverse of parse_range_policy.
nlohmann::json to_json(const RangePolicy& policy);

}  // namespace vanet
