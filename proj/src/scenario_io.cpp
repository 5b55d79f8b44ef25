#include "bubblebuoy/scenario_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json_reader.hpp"

namespace bubblebuoy {

using nlohmann::json;

namespace {

FluidEnv env_from_json(const json& j, const std::string& where) {
    FluidEnv e;
    ObjectReader r(j, where);
    r.get("water_density", e.water_density);
    r.get("surface_tension", e.surface_tension);
    r.get("gravity", e.gravity);
    r.finish();
    return e;
}

RobotParams robot_from_json(const json& j, const std::string& where) {
    RobotParams p;
    ObjectReader r(j, where);
    r.get("mass", p.mass);
    r.get("hull_volume", p.hull_volume);
    r.get("drag_coeff", p.drag_coeff);
    r.get("added_mass_coeff", p.added_mass_coeff);
    r.get("tank_depth", p.tank_depth);
    r.finish();
    return p;
}

InventoryParams inventory_params_from_json(const json& j, const std::string& where) {
    InventoryParams p;
    ObjectReader r(j, where);
    r.get("q_max", p.q_max);
    r.get("electrode_detach_diameter", p.electrode_detach_diameter);
    r.get("capture_efficiency", p.capture_efficiency);
    r.get("releasable_split", p.releasable_split);
    r.get("k_release_I", p.k_release_I);
    r.get("k_release_II", p.k_release_II);
    r.get("k_dissolve", p.k_dissolve);
    r.get("canopy_capacity", p.canopy_capacity);
    r.get("electrode_holdup", p.electrode_holdup);
    r.finish();
    return p;
}

GasInventory inventory_from_json(const json& j, const std::string& where) {
    GasInventory g;
    ObjectReader r(j, where);
    r.get("v_electrode", g.v_electrode);
    r.get("v_releasable", g.v_releasable);
    r.get("v_residual", g.v_residual);
    r.finish();
    return g;
}

ControllerOptions controller_from_json(const json& j, const std::string& where) {
    ControllerOptions o;
    ObjectReader r(j, where);
    r.get("anti_windup", o.anti_windup);
    std::string source = o.derivative_source == DerivativeSource::Measurement ? "measurement" : "error";
    r.get("derivative_on", source);
    if (source == "measurement") {
        o.derivative_source = DerivativeSource::Measurement;
    } else if (source == "error") {
        o.derivative_source = DerivativeSource::Error;
    } else {
        throw SchemaError(where + ".derivative_on: expected \"measurement\" or \"error\"");
    }
    r.get("derivative_filter_tau", o.derivative_filter_tau);
    r.get("integral_limit", o.integral_limit);
    r.get("deadband", o.deadband);
    r.finish();
    return o;
}

SensorModel sensor_from_json(const json& j, const std::string& where) {
    SensorModel s;
    ObjectReader r(j, where);
    r.get("noise_sigma", s.noise_sigma);
    r.get("quantization", s.quantization);
    r.get("seed", s.seed);
    r.finish();
    return s;
}

template <typename Entry, typename Fn>
std::vector<Entry> list_from_json(const json& j, const std::string& where, Fn&& parse_one) {
    if (!j.is_array()) throw SchemaError(where + ": expected an array");
    std::vector<Entry> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(parse_one(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace

const char* mode_name(Mode m) { return m == Mode::Auto ? "auto" : "manual"; }

Mode mode_from_name(const std::string& name) {
    if (name == "auto") return Mode::Auto;
    if (name == "manual") return Mode::Manual;
    throw SchemaError("mode: expected \"auto\" or \"manual\", got \"" + name + "\"");
}

ControlGains gains_from_json(const json& j, const std::string& where) {
    ControlGains g;
    ObjectReader r(j, where);
    r.get("kp", g.kp);
    r.get("ki", g.ki);
    r.get("kd", g.kd);
    r.finish();
    return g;
}

json gains_to_json(const ControlGains& g) { return {{"kp", g.kp}, {"ki", g.ki}, {"kd", g.kd}}; }

Scenario scenario_from_json(const json& j) {
    ObjectReader r(j, "scenario");
    int version = 0;
    if (!r.get("schema_version", version)) throw SchemaError("scenario.schema_version: required");
    if (version != kScenarioSchemaVersion) {
        throw SchemaError("scenario.schema_version: unsupported version " + std::to_string(version));
    }

    Scenario s;
    r.get("label", s.label);
    std::string mode = mode_name(s.mode);
    r.get("mode", mode);
    s.mode = mode_from_name(mode);
    r.get("duration", s.duration);
    r.get("physics_dt", s.physics_dt);
    r.get("control_period", s.control_period);
    r.get("initial_depth", s.initial_depth);

    if (auto* v = r.field("env")) s.env = env_from_json(*v, "env");
    if (auto* v = r.field("robot")) s.robot = robot_from_json(*v, "robot");
    if (auto* v = r.field("inventory")) s.inventory = inventory_params_from_json(*v, "inventory");
    if (auto* v = r.field("initial_inventory")) s.initial_inventory = inventory_from_json(*v, "initial_inventory");
    if (auto* v = r.field("gains")) s.gains = gains_from_json(*v, "gains");
    if (auto* v = r.field("controller")) s.controller = controller_from_json(*v, "controller");
    if (auto* v = r.field("sensor")) s.sensor = sensor_from_json(*v, "sensor");

    if (auto* v = r.field("setpoint_schedule")) {
        s.setpoint_schedule = list_from_json<SetpointEntry>(*v, "setpoint_schedule", [](const json& e, const std::string& w) {
            SetpointEntry out;
            ObjectReader er(e, w);
            er.require("time", out.time);
            er.require("target_depth", out.target_depth);
            er.finish();
            return out;
        });
    }
    if (auto* v = r.field("manual_schedule")) {
        s.manual_schedule = list_from_json<ManualEntry>(*v, "manual_schedule", [](const json& e, const std::string& w) {
            ManualEntry out;
            ObjectReader er(e, w);
            er.require("time", out.time);
            er.require("pot_e", out.pot_e);
            er.require("pot_m", out.pot_m);
            er.finish();
            return out;
        });
    }
    if (auto* v = r.field("disturbances")) {
        s.disturbances = list_from_json<DisturbanceEntry>(*v, "disturbances", [](const json& e, const std::string& w) {
            DisturbanceEntry out;
            ObjectReader er(e, w);
            er.require("time", out.time);
            er.require("volume", out.volume);
            er.finish();
            return out;
        });
    }
    r.finish();

    validate(s);
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema_version"] = kScenarioSchemaVersion;
    j["label"] = s.label;
    j["mode"] = mode_name(s.mode);
    j["duration"] = s.duration;
    j["physics_dt"] = s.physics_dt;
    j["control_period"] = s.control_period;
    j["initial_depth"] = s.initial_depth;
    j["env"] = {{"water_density", s.env.water_density},
                {"surface_tension", s.env.surface_tension},
                {"gravity", s.env.gravity}};
    j["robot"] = {{"mass", s.robot.mass},
                  {"hull_volume", s.robot.hull_volume},
                  {"drag_coeff", s.robot.drag_coeff},
                  {"added_mass_coeff", s.robot.added_mass_coeff},
                  {"tank_depth", s.robot.tank_depth}};
    const auto& p = s.inventory;
    j["inventory"] = {{"q_max", p.q_max},
                      {"electrode_detach_diameter", p.electrode_detach_diameter},
                      {"capture_efficiency", p.capture_efficiency},
                      {"releasable_split", p.releasable_split},
                      {"k_release_I", p.k_release_I},
                      {"k_release_II", p.k_release_II},
                      {"k_dissolve", p.k_dissolve},
                      {"canopy_capacity", p.canopy_capacity},
                      {"electrode_holdup", p.electrode_holdup}};
    j["initial_inventory"] = {{"v_electrode", s.initial_inventory.v_electrode},
                              {"v_releasable", s.initial_inventory.v_releasable},
                              {"v_residual", s.initial_inventory.v_residual}};
    j["gains"] = gains_to_json(s.gains);
    j["controller"] = {
        {"anti_windup", s.controller.anti_windup},
        {"derivative_on", s.controller.derivative_source == DerivativeSource::Measurement ? "measurement" : "error"},
        {"derivative_filter_tau", s.controller.derivative_filter_tau},
        {"integral_limit", s.controller.integral_limit},
        {"deadband", s.controller.deadband}};
    j["sensor"] = {{"noise_sigma", s.sensor.noise_sigma},
                   {"quantization", s.sensor.quantization},
                   {"seed", s.sensor.seed}};
    j["setpoint_schedule"] = json::array();
    for (const auto& e : s.setpoint_schedule) {
        j["setpoint_schedule"].push_back({{"time", e.time}, {"target_depth", e.target_depth}});
    }
    j["manual_schedule"] = json::array();
    for (const auto& e : s.manual_schedule) {
        j["manual_schedule"].push_back({{"time", e.time}, {"pot_e", e.pot_e}, {"pot_m", e.pot_m}});
    }
    j["disturbances"] = json::array();
    for (const auto& e : s.disturbances) j["disturbances"].push_back({{"time", e.time}, {"volume", e.volume}});
    return j;
}

Scenario parse_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("malformed JSON: ") + e.what());
    }
    return scenario_from_json(j);
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw FileError("cannot read " + path.string());
    return ss.str();
}

Scenario load_scenario(const std::filesystem::path& path) { return parse_scenario(read_text_file(path)); }

}  // namespace bubblebuoy
