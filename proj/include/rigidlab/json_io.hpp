#pragma once

#include "rigidlab/cifs.hpp"
#include "rigidlab/schottky.hpp"

#include <string>

#include "json.hpp"

namespace rigidlab {

// parse with line/column positions in the error message
nlohmann::json load_json_file(const std::string& path);

MobiusMap parse_map(const nlohmann::json& spec);
Region parse_region(const nlohmann::json& spec);
CIFS parse_system(const nlohmann::json& spec, const std::string& id);
SchottkyGroup parse_group(const nlohmann::json& spec);

// stamp {tool_version, seed, config_hash} and write with sorted keys
void write_report(nlohmann::json report, const std::string& path,
                  std::uint64_t seed, const std::string& config_canonical);

std::string config_hash(const std::string& canonical);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace rigidlab
