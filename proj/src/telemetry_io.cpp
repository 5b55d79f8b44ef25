#include "bubblebuoy/telemetry_io.hpp"

#include <cstdio>
#include <ostream>

#include "bubblebuoy/scenario_io.hpp"

namespace bubblebuoy {

using nlohmann::json;

namespace {

void append(std::string& row, double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    row += buf;
    row += ',';
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

std::string telemetry_row(const TelemetryRecord& r) {
    std::string row;
    row.reserve(192);
    for (double x : {r.t, r.depth, r.measured_depth, r.setpoint, r.output, r.elec_duty, r.vib_duty, r.v_electrode,
                     r.v_releasable, r.v_residual, r.net_force, r.power, r.cumulative_energy}) {
        append(row, x);
    }
    row += event_string(r.events);
    return row;
}

void write_telemetry_csv(std::ostream& out, std::span<const TelemetryRecord> telemetry) {
    out << kTelemetryHeader << '\n';
    for (const auto& r : telemetry) out << telemetry_row(r) << '\n';
}

json metrics_to_json(const ResponseMetrics& m) {
    return {{"t_start", m.segment.t_start},
            {"t_end", m.segment.t_end},
            {"target_depth", m.segment.target},
            {"step_mm", m.step_mm},
            {"overshoot_mm", m.overshoot_mm},
            {"rise_time_10_90_s", optional_number(m.rise_time_10_90)},
            {"settling_time_5pct_s", optional_number(m.settling_time_5pct)},
            {"steady_state_error_mm", optional_number(m.steady_state_error_mm)},
            {"itae_mm_s2", m.itae},
            {"transition_energy_j", m.transition_energy}};
}

json run_summary_json(const Scenario& scenario, const RunResult& run, std::span<const ResponseMetrics> metrics) {
    json j;
    j["schema_version"] = 1;
    j["label"] = scenario.label;
    j["records"] = run.telemetry.size();
    j["total_energy_j"] = run.telemetry.empty() ? 0.0 : run.telemetry.back().cumulative_energy;
    j["segments"] = json::array();
    for (const auto& m : metrics) j["segments"].push_back(metrics_to_json(m));
    const auto& f = run.gas_ledger;
    j["gas_ledger_m3"] = {{"source", f.source},
                          {"escaped", f.escaped},
                          {"released", f.released},
                          {"dissolved", f.dissolved},
                          {"overflow", f.overflow},
                          {"disturbance", f.disturbance},
                          {"stored_initial", total_buoyant_gas(run.initial_inventory)},
                          {"stored_final", total_buoyant_gas(run.final_inventory)}};
    return j;
}

}  // namespace bubblebuoy
