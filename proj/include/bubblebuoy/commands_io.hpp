#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "bubblebuoy/simulation.hpp"

namespace bubblebuoy {

inline constexpr int kScriptSchemaVersion = 1;

/// Wire name of a command, e.g. "set_target_depth".
std::string command_name(const Command& command);

/// Builds a command from its wire name and argument object. Throws SchemaError
/// for unknown names, missing or mistyped arguments.
Command command_from_json(const std::string& name, const nlohmann::json& args);
nlohmann::json command_args_to_json(const Command& command);

/// {"schema_version": 1, "commands": [{"time": s, "command": name, "args": {...}}, ...]}
std::vector<TimedCommand> script_from_json(const nlohmann::json& j);
nlohmann::json script_to_json(const std::vector<TimedCommand>& script);
std::vector<TimedCommand> load_script(const std::filesystem::path& path);

nlohmann::json record_to_json(const TelemetryRecord& r);

}  // namespace bubblebuoy
