#include "bubblebuoy/tuner_io.hpp"

#include <cstdio>
#include <ostream>

#include "bubblebuoy/scenario_io.hpp"
#include "json_reader.hpp"

namespace bubblebuoy {

using nlohmann::json;

namespace {

GainRange range_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw SchemaError(where + ": expected [min, max]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

json breakdown_to_json(const CostBreakdown& c) {
    return {{"cost", c.cost},
            {"overshoot_mm", c.overshoot_mm},
            {"settling_s", c.settling_s},
            {"itae_norm", c.itae_norm},
            {"unsettled_segments", c.unsettled},
            {"failed", c.failed}};
}

}  // namespace

TuneSpec tunespec_from_json(const json& j, const std::filesystem::path& base_dir) {
    ObjectReader r(j, "tunespec");
    int version = 0;
    if (!r.get("schema_version", version)) throw SchemaError("tunespec.schema_version: required");
    if (version != kTuneSpecSchemaVersion) {
        throw SchemaError("tunespec.schema_version: unsupported version " + std::to_string(version));
    }

    TuneSpec spec;
    const json* scenario = r.field("scenario");
    if (!scenario) throw SchemaError("tunespec.scenario: required");
    if (scenario->is_string()) {
        std::filesystem::path p = scenario->get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        spec.scenario = load_scenario(p);
    } else {
        spec.scenario = scenario_from_json(*scenario);
    }

    if (const json* b = r.field("bounds")) {
        ObjectReader br(*b, "tunespec.bounds");
        if (auto* v = br.field("kp")) spec.bounds.kp = range_from_json(*v, "tunespec.bounds.kp");
        if (auto* v = br.field("ki")) spec.bounds.ki = range_from_json(*v, "tunespec.bounds.ki");
        if (auto* v = br.field("kd")) spec.bounds.kd = range_from_json(*v, "tunespec.bounds.kd");
        br.finish();
    }
    if (const json* w = r.field("weights")) {
        ObjectReader wr(*w, "tunespec.weights");
        wr.get("overshoot", spec.weights.overshoot);
        wr.get("settling", spec.weights.settling);
        wr.get("itae", spec.weights.itae);
        wr.finish();
    }
    r.get("budget", spec.budget);
    r.get("seed", spec.seed);
    if (const json* g = r.field("grid")) {
        if (!g->is_array() || g->size() != 3) throw SchemaError("tunespec.grid: expected [n_kp, n_ki, n_kd]");
        for (std::size_t i = 0; i < 3; ++i) {
            if (!(*g)[i].is_number_integer()) throw SchemaError("tunespec.grid: expected integers");
            spec.grid[i] = (*g)[i].get<int>();
        }
    }
    r.finish();

    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw ValidationError({std::string("tunespec: ") + e.what()});
    }
    return spec;
}

json tunespec_to_json(const TuneSpec& spec) {
    return {{"schema_version", kTuneSpecSchemaVersion},
            {"scenario", scenario_to_json(spec.scenario)},
            {"bounds",
             {{"kp", {spec.bounds.kp.min, spec.bounds.kp.max}},
              {"ki", {spec.bounds.ki.min, spec.bounds.ki.max}},
              {"kd", {spec.bounds.kd.min, spec.bounds.kd.max}}}},
            {"weights",
             {{"overshoot", spec.weights.overshoot}, {"settling", spec.weights.settling}, {"itae", spec.weights.itae}}},
            {"budget", spec.budget},
            {"seed", spec.seed},
            {"grid", spec.grid}};
}

TuneSpec load_tunespec(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return tunespec_from_json(j, path.parent_path());
}

json tune_result_to_json(const TuneResult& result) {
    json j;
    j["schema_version"] = 1;
    j["best_gains"] = gains_to_json(result.best_gains);
    j["best_cost"] = result.best_cost;
    j["truncated"] = result.truncated;
    j["evaluations"] = result.trace.size();
    j["trace"] = json::array();
    for (const TraceEntry& e : result.trace) {
        json row = breakdown_to_json(e.breakdown);
        row["index"] = e.index;
        row["phase"] = phase_name(e.phase);
        row["gains"] = gains_to_json(e.gains);
        row["best_cost"] = e.best_cost;
        j["trace"].push_back(std::move(row));
    }
    return j;
}

void write_trace_csv(std::ostream& out, const TuneResult& result) {
    out << "index,phase,kp,ki,kd,cost,overshoot_mm,settling_s,itae_norm,unsettled_segments,failed,best_cost\n";
    for (const TraceEntry& e : result.trace) {
        const CostBreakdown& c = e.breakdown;
        out << e.index << ',' << phase_name(e.phase) << ',' << fmt(e.gains.kp) << ',' << fmt(e.gains.ki) << ','
            << fmt(e.gains.kd) << ',' << fmt(c.cost) << ',' << fmt(c.overshoot_mm) << ',' << fmt(c.settling_s) << ','
            << fmt(c.itae_norm) << ',' << c.unsettled << ',' << (c.failed ? 1 : 0) << ',' << fmt(e.best_cost) << '\n';
    }
}

}  // namespace bubblebuoy
