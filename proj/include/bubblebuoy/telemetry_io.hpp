#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "bubblebuoy/metrics.hpp"
#include "bubblebuoy/simulation.hpp"

namespace bubblebuoy {

/// Column order of the telemetry CSV. Never reorder; append only.
inline constexpr const char* kTelemetryHeader =
    "t,depth,measured_depth,setpoint,output,elec_duty,vib_duty,v_electrode,v_releasable,v_residual,"
    "net_force,power,cumulative_energy,event";

/// One CSV row, no trailing newline. Floats use 9 significant digits.
std::string telemetry_row(const TelemetryRecord& r);

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRecord> telemetry);

nlohmann::json metrics_to_json(const ResponseMetrics& m);

/// Sidecar written next to the CSV: per-segment metrics, energy, gas ledger.
nlohmann::json run_summary_json(const Scenario& scenario, const RunResult& run,
                                std::span<const ResponseMetrics> metrics);

}  // namespace bubblebuoy
