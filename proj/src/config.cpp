#include "vanet/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "vanet/overloaded.hpp"

namespace vanet {
namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double get_number(const json& obj, const std::string& path, const std::string& key) {
  const std::string where = join(path, key);
  if (!obj.contains(key)) throw ConfigError(where, "missing required field");
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where, "expected a finite number");
  return x;
}

double get_positive(const json& obj, const std::string& path, const std::string& key) {
  const double x = get_number(obj, path, key);
  if (!(x > 0.0)) throw ConfigError(join(path, key), "must be positive");
  return x;
}

std::vector<double> parse_densities(const json& v) {
  const std::string where = "densities_per_km";
  std::vector<double> out;
  if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string at = where + "[" + std::to_string(i) + "]";
      if (!v[i].is_number()) throw ConfigError(at, "expected a number");
      const double d = v[i].get<double>();
      if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError(at, "must be positive");
      out.push_back(d);
    }
  } else if (v.is_object()) {
    reject_unknown(v, where, {"start", "stop", "step"});
    const double start = get_positive(v, where, "start");
    const double stop = get_positive(v, where, "stop");
    const double step = get_positive(v, where, "step");
    if (stop < start) throw ConfigError(where + ".stop", "must not be below start");
    out = density_grid(start, stop, step);
  } else {
    throw ConfigError(where, "expected a list or {start, stop, step}");
  }
  if (out.empty()) throw ConfigError(where, "must not be empty");
  return out;
}

}  // namespace

std::vector<double> density_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("density_grid: step must be positive");
  std::vector<double> out;
  // Index-based stepping keeps grid values free of accumulated rounding.
  for (std::size_t i = 0;; ++i) {
    const double d = start + static_cast<double>(i) * step;
    if (d > stop + 1e-9 * step) break;
    out.push_back(d);
  }
  return out;
}

RangePolicy parse_range_policy(const json& obj, const std::string& path) {
  if (!obj.is_object()) throw ConfigError(path, "expected an object");
  if (!obj.contains("type")) throw ConfigError(path + ".type", "missing required field");
  if (!obj.at("type").is_string()) throw ConfigError(path + ".type", "expected a string");
  const std::string type = obj.at("type").get<std::string>();

  RangePolicy policy;
  if (type == "fixed") {
    reject_unknown(obj, path, {"type", "range_m"});
    policy = FixedRange{get_positive(obj, path, "range_m")};
  } else if (type == "two_tier") {
    reject_unknown(obj, path, {"type", "range_low_m", "range_high_m", "fraction_high", "exact_count"});
    TwoTierRange p{get_positive(obj, path, "range_low_m"), get_positive(obj, path, "range_high_m"),
                   get_number(obj, path, "fraction_high")};
    if (!(p.fraction_high >= 0.0 && p.fraction_high <= 1.0)) {
      throw ConfigError(path + ".fraction_high", "must lie in [0, 1]");
    }
    if (!(p.range_low_m < p.range_high_m)) {
      throw ConfigError(path + ".range_high_m", "must exceed range_low_m");
    }
    if (obj.contains("exact_count")) {
      if (!obj.at("exact_count").is_boolean()) throw ConfigError(path + ".exact_count", "expected a boolean");
      p.exact_count = obj.at("exact_count").get<bool>();
    }
    policy = p;
  } else if (type == "uniform") {
    reject_unknown(obj, path, {"type", "mean_m", "std_m", "support"});
    UniformRange p{get_positive(obj, path, "mean_m"), get_number(obj, path, "std_m"), {}};
    if (p.std_m < 0.0) throw ConfigError(path + ".std_m", "must be non-negative");
    if (obj.contains("support")) {
      const json& s = obj.at("support");
      if (s.is_string()) {
        if (s.get<std::string>() != "continuous") {
          throw ConfigError(path + ".support", "expected \"continuous\" or a list of values");
        }
      } else if (s.is_array() && !s.empty()) {
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (!s[i].is_number() || !(s[i].get<double>() > 0.0)) {
            throw ConfigError(path + ".support[" + std::to_string(i) + "]", "must be a positive number");
          }
          p.support.push_back(s[i].get<double>());
        }
      } else {
        throw ConfigError(path + ".support", "expected \"continuous\" or a non-empty list of values");
      }
    }
    policy = p;
  } else {
    throw ConfigError(path + ".type", "unknown policy type '" + type + "'");
  }
  try {
    validate(policy);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path, e.what());
  }
  return policy;
}

json to_json(const RangePolicy& policy) {
  return std::visit(overloaded{
                        [](const FixedRange& p) { return json{{"type", "fixed"}, {"range_m", p.range_m}}; },
                        [](const TwoTierRange& p) {
                          return json{{"type", "two_tier"},
                                      {"range_low_m", p.range_low_m},
                                      {"range_high_m", p.range_high_m},
                                      {"fraction_high", p.fraction_high},
                                      {"exact_count", p.exact_count}};
                        },
                        [](const UniformRange& p) {
                          json j{{"type", "uniform"}, {"mean_m", p.mean_m}, {"std_m", p.std_m}};
                          if (p.continuous()) {
                            j["support"] = "continuous";
                          } else {
                            j["support"] = p.support;
                          }
                          return j;
                        },
                    },
                    policy);
}

RunConfig parse_config(json doc, const ConfigOverrides& o) {
  if (doc.is_null()) doc = json::object();
  if (!doc.is_object()) throw ConfigError("", "config must be a JSON object");

  // Flags take precedence over file values.
  if (o.densities_per_km) doc["densities_per_km"] = *o.densities_per_km;
  if (o.density_start || o.density_stop || o.density_step) {
    json grid = doc.contains("densities_per_km") && doc["densities_per_km"].is_object()
                    ? doc["densities_per_km"]
                    : json::object();
    if (o.density_start) grid["start"] = *o.density_start;
    if (o.density_stop) grid["stop"] = *o.density_stop;
    if (o.density_step) grid["step"] = *o.density_step;
    if (!grid.contains("step")) grid["step"] = 1.0;
    if (grid.contains("start") && !grid.contains("stop")) grid["stop"] = grid["start"];
    doc["densities_per_km"] = grid;
  }
  if (o.segment_length_m) doc["segment_length_m"] = *o.segment_length_m;
  if (o.trials) doc["trials"] = *o.trials;
  if (o.master_seed) doc["master_seed"] = *o.master_seed;
  if (o.methods) doc["methods"] = *o.methods;
  if (o.direction) doc["direction"] = *o.direction;
  if (o.output) doc["output"] = *o.output;
  if (o.verbosity) doc["verbosity"] = *o.verbosity;
  if (o.workers) doc["workers"] = *o.workers;
  if (o.relaxed_exponent) doc["relaxed_exponent"] = *o.relaxed_exponent;
  {
    json& rp = doc["range_policy"];
    if (rp.is_null()) rp = json::object();
    if (rp.is_object()) {
      if (o.policy && (!rp.contains("type") || rp["type"] != *o.policy)) {
        rp = json{{"type", *o.policy}};
      }
      if (!rp.contains("type")) {
        if (o.range_m) rp["type"] = "fixed";
        else if (o.range_low_m || o.range_high_m || o.fraction_high) rp["type"] = "two_tier";
        else if (o.mean_m || o.std_m || o.support) rp["type"] = "uniform";
      }
      if (o.range_m) rp["range_m"] = *o.range_m;
      if (o.range_low_m) rp["range_low_m"] = *o.range_low_m;
      if (o.range_high_m) rp["range_high_m"] = *o.range_high_m;
      if (o.fraction_high) rp["fraction_high"] = *o.fraction_high;
      if (o.exact_count) rp["exact_count"] = *o.exact_count;
      if (o.mean_m) rp["mean_m"] = *o.mean_m;
      if (o.std_m) rp["std_m"] = *o.std_m;
      if (o.support) rp["support"] = *o.support;
      if (rp.empty()) doc.erase("range_policy");
    }
  }

  reject_unknown(doc, "",
                 {"segment_length_m", "densities_per_km", "trials", "master_seed", "direction", "methods",
                  "range_policy", "output", "verbosity", "workers", "relaxed_exponent"});

  RunConfig cfg;
  ExperimentSpec& spec = cfg.spec;

  if (!doc.contains("densities_per_km")) throw ConfigError("densities_per_km", "missing required field");
  spec.densities_per_km = parse_densities(doc["densities_per_km"]);

  if (doc.contains("segment_length_m")) spec.segment_length_m = get_positive(doc, "", "segment_length_m");

  if (!doc.contains("range_policy")) throw ConfigError("range_policy", "missing required field");
  spec.policy = parse_range_policy(doc["range_policy"]);

  if (doc.contains("direction")) {
    const json& d = doc["direction"];
    auto parsed = d.is_string() ? parse_direction(d.get<std::string>()) : std::nullopt;
    if (!parsed) throw ConfigError("direction", "expected \"undirected\" or \"upward\"");
    spec.direction = *parsed;
  } else {
    spec.direction = std::holds_alternative<FixedRange>(spec.policy) ? NetworkDirection::undirected
                                                                       : NetworkDirection::upward;
  }
  if (spec.direction == NetworkDirection::undirected && !std::holds_alternative<FixedRange>(spec.policy)) {
    throw ConfigError("direction", "undirected requires a fixed range policy");
  }

  if (doc.contains("methods")) {
    const json& m = doc["methods"];
    if (!m.is_array() || m.empty()) throw ConfigError("methods", "expected a non-empty list");
    for (std::size_t i = 0; i < m.size(); ++i) {
      const std::string at = "methods[" + std::to_string(i) + "]";
      auto parsed = m[i].is_string() ? parse_method(m[i].get<std::string>()) : std::nullopt;
      if (!parsed) throw ConfigError(at, "unknown method");
      spec.methods.push_back(*parsed);
    }
  } else if (spec.direction == NetworkDirection::undirected) {
    spec.methods = {Method::analytic, Method::exponent, Method::laplacian, Method::oracle};
  } else {
    spec.methods = {Method::analytic, Method::analytic_chain, Method::chain, Method::laplacian};
  }

  if (doc.contains("trials")) {
    const json& t = doc["trials"];
    if (!t.is_number_integer() || t.get<long long>() < 1) throw ConfigError("trials", "must be a positive integer");
    spec.trials = t.get<std::size_t>();
  } else {
    spec.trials = default_trials(spec.methods);
  }

  if (doc.contains("master_seed")) {
    const json& s = doc["master_seed"];
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() && s.get<long long>() < 0)) {
      throw ConfigError("master_seed", "must be a non-negative 64-bit integer");
    }
    spec.master_seed = s.get<std::uint64_t>();
  } else {
    spec.master_seed = 1;
  }

  if (doc.contains("relaxed_exponent")) {
    if (!doc["relaxed_exponent"].is_boolean()) throw ConfigError("relaxed_exponent", "expected a boolean");
    spec.relaxed_exponent = doc["relaxed_exponent"].get<bool>();
  }
  if (doc.contains("output")) {
    if (!doc["output"].is_string()) throw ConfigError("output", "expected a string");
    cfg.output = doc["output"].get<std::string>();
  }
  if (doc.contains("verbosity")) {
    if (!doc["verbosity"].is_number_integer()) throw ConfigError("verbosity", "expected an integer");
    cfg.verbosity = doc["verbosity"].get<int>();
  }
  if (doc.contains("workers")) {
    const json& w = doc["workers"];
    if (!w.is_number_integer() || w.get<long long>() < 0) throw ConfigError("workers", "must be a non-negative integer");
    cfg.workers = w.get<unsigned>();
  }

  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    const std::string msg = e.what();
    throw ConfigError(msg.substr(0, msg.find(':')), msg.substr(std::min(msg.size(), msg.find(':') + 2)));
  }
  return cfg;
}

RunConfig load_config(const std::string& path, const ConfigOverrides& overrides) {
  if (path.empty()) return parse_config(json::object(), overrides);
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config(std::move(doc), overrides);
}

}  // namespace vanet
