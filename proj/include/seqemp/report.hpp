// JSON serialization of the report records emitted by the CLI. Every record
// carries schema_version; doubles round-trip exactly via the shortest
// representation.
#pragma once

#include <string>

#include "json.hpp"

#include "seqemp/config.hpp"
#include "seqemp/cpt.hpp"
#include "seqemp/entropy.hpp"
#include "seqemp/limits.hpp"
#include "seqemp/setar.hpp"
#include "seqemp/verify.hpp"

namespace seqemp {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const QuantileTable& table);
nlohmann::json to_json(const SetarReport& report);
nlohmann::json to_json(const CptReport& report);
nlohmann::json to_json(const A1Report& report);
nlohmann::json to_json(const A2Report& report);
nlohmann::json to_json(const A3Report& report);
nlohmann::json to_json(const MomentScalingReport& report, const MomentScalingConfig& config);
nlohmann::json to_json(const ModulusReport& report);
nlohmann::json to_json(const FidiReport& report, const FidiConfig& config);

nlohmann::json config_echo(const Config& config);

void write_json_file(const std::string& path, const nlohmann::json& j);

} // namespace seqemp
