#pragma once

#include <filesystem>
#include <iosfwd>

#include <json.hpp>

#include "bubblebuoy/tuner.hpp"

namespace bubblebuoy {

inline constexpr int kTuneSpecSchemaVersion = 1;

/// `scenario` is either an inline scenario object or a path, resolved against
/// `base_dir` when relative. Throws SchemaError, FileError or ValidationError.
TuneSpec tunespec_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json tunespec_to_json(const TuneSpec& spec);
TuneSpec load_tunespec(const std::filesystem::path& path);

nlohmann::json tune_result_to_json(const TuneResult& result);
void write_trace_csv(std::ostream& out, const TuneResult& result);

}  // namespace bubblebuoy
