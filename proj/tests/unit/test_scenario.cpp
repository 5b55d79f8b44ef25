#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <string>

#include "bubblebuoy/scenario.hpp"
#include "bubblebuoy/scenario_io.hpp"
#include "support.hpp"

using namespace bubblebuoy;
using nlohmann::json;

namespace {

bool mentions(const std::vector<std::string>& problems, const std::string& field) {
    return std::any_of(problems.begin(), problems.end(),
                       [&](const std::string& p) { return p.rfind(field + ":", 0) == 0; });
}

json minimal() { return {{"schema_version", 1}}; }

}  // namespace

TEST(Scenario, DefaultsAreValid) {
    const Scenario s;
    EXPECT_TRUE(validation_problems(s).empty());
    EXPECT_EQ(s.steps_per_period(), 100);
    EXPECT_EQ(s.ticks(), 600);
}

TEST(Scenario, ReportsEveryOffendingField) {
    Scenario s;
    s.duration = 0.0;
    s.control_period = 0.1005;
    s.initial_depth = 0.5;
    s.setpoint_schedule = {{10.0, 0.1}, {5.0, 0.2}, {20.0, 0.9}};
    s.manual_schedule = {{0.0, 300, 0}};
    s.gains.kp = -1.0;
    const auto problems = validation_problems(s);
    EXPECT_TRUE(mentions(problems, "duration"));
    EXPECT_TRUE(mentions(problems, "control_period"));
    EXPECT_TRUE(mentions(problems, "initial_depth"));
    EXPECT_TRUE(mentions(problems, "setpoint_schedule"));
    EXPECT_TRUE(mentions(problems, "setpoint_schedule[2].target_depth"));
    EXPECT_TRUE(mentions(problems, "manual_schedule[0].pot_e"));
    EXPECT_TRUE(mentions(problems, "gains"));
    try {
        validate(s);
        FAIL() << "expected a ValidationError";
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.problems(), problems);
    }
}

TEST(Scenario, RejectsOverfullInitialCanopy) {
    Scenario s;
    s.initial_inventory.v_releasable = 2.0 * s.inventory.canopy_capacity;
    EXPECT_TRUE(mentions(validation_problems(s), "initial_inventory"));
}

TEST(Scenario, ControlPeriodMustBeAWholeNumberOfPhysicsSteps) {
    Scenario s;
    s.physics_dt = 0.003;
    EXPECT_TRUE(mentions(validation_problems(s), "control_period"));
    s.physics_dt = 0.0005;
    EXPECT_TRUE(validation_problems(s).empty());
    EXPECT_EQ(s.steps_per_period(), 200);
}

TEST(ScenarioJson, MissingSectionsTakeDefaults) {
    const Scenario s = scenario_from_json(minimal());
    EXPECT_EQ(s.gains, ControlGains{});
    EXPECT_EQ(s.duration, 60.0);
    EXPECT_EQ(s.mode, Mode::Auto);
}

TEST(ScenarioJson, RoundTripsEveryField) {
    Scenario s = testsupport::step_scenario(ControlGains{3.0, 0.2, 7.0}, 42.0);
    s.label = "round trip";
    s.mode = Mode::Manual;
    s.manual_schedule = {{0.0, 10, 20}, {5.0, 255, 0}};
    s.disturbances = {{3.0, 1e-8}};
    s.controller.derivative_source = DerivativeSource::Error;
    s.controller.derivative_filter_tau = 0.2;
    s.sensor.seed = 123456789012345ULL;
    s.robot.added_mass_coeff = 0.5;
    s.env.water_density = 998.0;
    s.inventory.capture_efficiency = 0.9;
    const Scenario back = scenario_from_json(scenario_to_json(s));
    EXPECT_EQ(scenario_to_json(back), scenario_to_json(s));
    EXPECT_EQ(back.sensor.seed, 123456789012345ULL);
    EXPECT_EQ(back.controller.derivative_source, DerivativeSource::Error);
    EXPECT_EQ(back.manual_schedule.size(), 2u);
}

TEST(ScenarioJson, RejectsUnknownFieldsAnywhere) {
    json j = minimal();
    j["colour"] = "blue";
    EXPECT_THROW(scenario_from_json(j), SchemaError);
    j = minimal();
    j["gains"] = {{"kp", 1.0}, {"kq", 2.0}};
    EXPECT_THROW(scenario_from_json(j), SchemaError);
    j = minimal();
    j["setpoint_schedule"] = {{{"time", 0.0}, {"target_depth", 0.1}, {"speed", 1}}};
    EXPECT_THROW(scenario_from_json(j), SchemaError);
}

TEST(ScenarioJson, RequiresASupportedSchemaVersion) {
    EXPECT_THROW(scenario_from_json(json::object()), SchemaError);
    EXPECT_THROW(scenario_from_json({{"schema_version", 2}}), SchemaError);
    EXPECT_THROW(scenario_from_json({{"schema_version", "1"}}), SchemaError);
}

TEST(ScenarioJson, EnforcesTypes) {
    json j = minimal();
    j["duration"] = "long";
    EXPECT_THROW(scenario_from_json(j), SchemaError);
    j = minimal();
    j["manual_schedule"] = {{{"time", 0.0}, {"pot_e", 1.5}, {"pot_m", 0}}};
    EXPECT_THROW(scenario_from_json(j), SchemaError);
    j = minimal();
    j["sensor"] = {{"seed", -1}};
    EXPECT_THROW(scenario_from_json(j), SchemaError);
    j = minimal();
    j["mode"] = "cruise";
    EXPECT_THROW(scenario_from_json(j), SchemaError);
}

TEST(ScenarioJson, ValidatesAfterParsing) {
    json j = minimal();
    j["physics_dt"] = 0.003;
    EXPECT_THROW(scenario_from_json(j), ValidationError);
}

TEST(ScenarioJson, MalformedTextIsASchemaError) {
    EXPECT_THROW(parse_scenario("{\"schema_version\": 1,"), SchemaError);
}

TEST(ScenarioJson, MissingFileIsAFileError) {
    EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), FileError);
}

TEST(ScenarioJson, ShippedScenariosLoad) {
    const std::filesystem::path dir = std::filesystem::path(BUBBLEBUOY_SOURCE_DIR) / "scenarios";
    int loaded = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("tune_", 0) == 0 || name.find("script") != std::string::npos) continue;
        EXPECT_NO_THROW(load_scenario(entry.path())) << name;
        ++loaded;
    }
    EXPECT_GE(loaded, 4);
}
