#include "bubblebuoy/commands_io.hpp"

#include <cmath>

#include "bubblebuoy/scenario_io.hpp"
#include "json_reader.hpp"

namespace bubblebuoy {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string command_name(const Command& command) {
    return std::visit(overloaded{
                          [](const SetModeCmd&) { return "set_mode"; },
                          [](const SetTargetDepthCmd&) { return "set_target_depth"; },
                          [](const SetGainsCmd&) { return "set_gains"; },
                          [](const SetPotsCmd&) { return "set_pots"; },
                          [](const PauseCmd&) { return "pause"; },
                          [](const ResumeCmd&) { return "resume"; },
                          [](const ResetCmd&) { return "reset"; },
                          [](const InjectDisturbanceCmd&) { return "inject_disturbance"; },
                      },
                      command);
}

Command command_from_json(const std::string& name, const json& args) {
    const json empty = json::object();
    ObjectReader r(args.is_null() ? empty : args, "args");
    Command out;
    if (name == "set_mode") {
        std::string mode;
        r.require("mode", mode);
        out = SetModeCmd{mode_from_name(mode)};
    } else if (name == "set_target_depth") {
        SetTargetDepthCmd c{};
        r.require("depth", c.depth);
        out = c;
    } else if (name == "set_gains") {
        SetGainsCmd c{};
        r.require("kp", c.gains.kp);
        r.require("ki", c.gains.ki);
        r.require("kd", c.gains.kd);
        out = c;
    } else if (name == "set_pots") {
        SetPotsCmd c{};
        r.require("pot_e", c.pot_e);
        r.require("pot_m", c.pot_m);
        out = c;
    } else if (name == "pause") {
        out = PauseCmd{};
    } else if (name == "resume") {
        out = ResumeCmd{};
    } else if (name == "reset") {
        out = ResetCmd{};
    } else if (name == "inject_disturbance") {
        InjectDisturbanceCmd c{};
        r.require("volume", c.volume);
        out = c;
    } else {
        throw SchemaError("unknown command \"" + name + "\"");
    }
    r.finish();
    return out;
}

json command_args_to_json(const Command& command) {
    return std::visit(overloaded{
                          [](const SetModeCmd& c) { return json{{"mode", mode_name(c.mode)}}; },
                          [](const SetTargetDepthCmd& c) { return json{{"depth", c.depth}}; },
                          [](const SetGainsCmd& c) { return gains_to_json(c.gains); },
                          [](const SetPotsCmd& c) { return json{{"pot_e", c.pot_e}, {"pot_m", c.pot_m}}; },
                          [](const InjectDisturbanceCmd& c) { return json{{"volume", c.volume}}; },
                          [](const auto&) { return json::object(); },
                      },
                      command);
}

std::vector<TimedCommand> script_from_json(const json& j) {
    ObjectReader r(j, "script");
    int version = 0;
    if (!r.get("schema_version", version)) throw SchemaError("script.schema_version: required");
    if (version != kScriptSchemaVersion) {
        throw SchemaError("script.schema_version: unsupported version " + std::to_string(version));
    }
    const json* list = r.field("commands");
    if (!list || !list->is_array()) throw SchemaError("script.commands: expected an array");
    r.finish();

    std::vector<TimedCommand> out;
    for (std::size_t i = 0; i < list->size(); ++i) {
        const std::string where = "script.commands[" + std::to_string(i) + "]";
        ObjectReader er((*list)[i], where);
        TimedCommand tc;
        std::string name;
        er.require("time", tc.time);
        er.require("command", name);
        const json* args = er.field("args");
        er.finish();
        if (!(std::isfinite(tc.time) && tc.time >= 0.0)) throw SchemaError(where + ".time: must be non-negative");
        if (!out.empty() && tc.time < out.back().time) throw SchemaError(where + ".time: commands must be time-sorted");
        try {
            tc.command = command_from_json(name, args ? *args : json());
        } catch (const SchemaError& e) {
            throw SchemaError(where + ": " + e.what());
        }
        out.push_back(std::move(tc));
    }
    return out;
}

json script_to_json(const std::vector<TimedCommand>& script) {
    json list = json::array();
    for (const auto& tc : script) {
        list.push_back({{"time", tc.time}, {"command", command_name(tc.command)}, {"args", command_args_to_json(tc.command)}});
    }
    return {{"schema_version", kScriptSchemaVersion}, {"commands", std::move(list)}};
}

std::vector<TimedCommand> load_script(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return script_from_json(j);
}

json record_to_json(const TelemetryRecord& r) {
    return {{"t", r.t},
            {"depth", r.depth},
            {"measured_depth", r.measured_depth},
            {"setpoint", r.setpoint},
            {"output", r.output},
            {"elec_duty", r.elec_duty},
            {"vib_duty", r.vib_duty},
            {"v_electrode", r.v_electrode},
            {"v_releasable", r.v_releasable},
            {"v_residual", r.v_residual},
            {"net_force", r.net_force},
            {"power", r.power},
            {"cumulative_energy", r.cumulative_energy},
            {"event", event_string(r.events)}};
}

}  // namespace bubblebuoy
