#ifndef EDGE_OUTAGE_CONFIG_JSON_HPP
#define EDGE_OUTAGE_CONFIG_JSON_HPP

// JSON configuration object:
//   {"library_size": N, "cache_size": M, "backhaul_capacity": C,
//    "num_requests": d, "scheme": "rap"|"mop", "zipf_alpha": A}
// Every field is optional; unknown fields are rejected.

#include <cstdint>
#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "edge_outage/error.hpp"
#include "edge_outage/model.hpp"

namespace edge_outage {

struct ConfigFile {
  std::optional<std::int64_t> library_size;
  std::optional<std::int64_t> cache_size;
  std::optional<std::int64_t> backhaul_capacity;
  std::optional<std::int64_t> num_requests;
  std::optional<CacheScheme> scheme;
  std::optional<double> zipf_alpha;
};

namespace detail {

inline std::int64_t json_integer(const nlohmann::json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ValidationError(key, "must be an integer");
  return v.get<std::int64_t>();
}

}  // namespace detail

inline ConfigFile parse_config_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config", "top level must be a JSON object");
  ConfigFile out;
  for (const auto& [key, value] : j.items()) {
    if (key == "library_size") {
      out.library_size = detail::json_integer(value, key);
    } else if (key == "cache_size") {
      out.cache_size = detail::json_integer(value, key);
    } else if (key == "backhaul_capacity") {
      out.backhaul_capacity = detail::json_integer(value, key);
    } else if (key == "num_requests") {
      out.num_requests = detail::json_integer(value, key);
    } else if (key == "scheme") {
      if (!value.is_string()) throw ValidationError(key, "must be \"rap\" or \"mop\"");
      out.scheme = parse_scheme(value.get<std::string>());
    } else if (key == "zipf_alpha") {
      if (!value.is_number()) throw ValidationError(key, "must be a number");
      out.zipf_alpha = value.get<double>();
      check_alpha(*out.zipf_alpha);
    } else {
      throw ValidationError(key, "unknown configuration field");
    }
  }
  return out;
}

inline ConfigFile load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", std::string("malformed JSON: ") + e.what());
  }
  return parse_config_json(j);
}

}  // namespace edge_outage

#endif  // EDGE_OUTAGE_CONFIG_JSON_HPP
