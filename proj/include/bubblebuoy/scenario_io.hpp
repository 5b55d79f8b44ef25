#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "bubblebuoy/scenario.hpp"

namespace bubblebuoy {

inline constexpr int kScenarioSchemaVersion = 1;

/// Malformed JSON, wrong types, unknown fields or an unsupported schema_version.
class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The file could not be opened or read.
class FileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses and validates. Missing sections and fields take their defaults.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

// Pieces reused by the tuner and wire formats.
ControlGains gains_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json gains_to_json(const ControlGains& g);

const char* mode_name(Mode m);
Mode mode_from_name(const std::string& name);

}  // namespace bubblebuoy
