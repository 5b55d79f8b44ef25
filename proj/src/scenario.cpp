#include "bubblebuoy/scenario.hpp"

#include <cmath>
#include <utility>

namespace bubblebuoy {

namespace {

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& s : items) {
        if (!out.empty()) out += "; ";
        out += s;
    }
    return out;
}

// Runs a validate() member and records its message under `field`.
template <typename T>
void check(std::vector<std::string>& problems, const char* field, const T& value) {
    try {
        value.validate();
    } catch (const std::exception& e) {
        problems.push_back(std::string(field) + ": " + e.what());
    }
}

template <typename Entry>
bool time_sorted(const std::vector<Entry>& entries) {
    for (std::size_t i = 1; i < entries.size(); ++i) {
        if (entries[i].time < entries[i - 1].time) return false;
    }
    return true;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error("invalid scenario: " + join(problems)), problems_(std::move(problems)) {}

long Scenario::steps_per_period() const { return std::lround(control_period / physics_dt); }

long Scenario::ticks() const { return std::lround(std::floor(duration / control_period + 1e-9)); }

std::vector<std::string> validation_problems(const Scenario& s) {
    std::vector<std::string> problems;
    auto fail = [&](const std::string& field, const std::string& why) { problems.push_back(field + ": " + why); };

    check(problems, "env", s.env);
    check(problems, "robot", s.robot);
    check(problems, "inventory", s.inventory);
    check(problems, "gains", s.gains);
    check(problems, "controller", s.controller);
    check(problems, "sensor", s.sensor);

    if (!(std::isfinite(s.duration) && s.duration > 0.0)) fail("duration", "must be positive");
    if (!(std::isfinite(s.physics_dt) && s.physics_dt > 0.0)) fail("physics_dt", "must be positive");
    if (!(std::isfinite(s.control_period) && s.control_period > 0.0)) {
        fail("control_period", "must be positive");
    } else if (std::isfinite(s.physics_dt) && s.physics_dt > 0.0) {
        const double ratio = s.control_period / s.physics_dt;
        const double whole = std::round(ratio);
        if (whole < 1.0 || std::abs(ratio - whole) > 1e-9 * ratio) {
            fail("control_period", "must be an integer multiple of physics_dt");
        }
    }

    const double tank = s.robot.tank_depth;
    if (!(s.initial_depth >= 0.0 && s.initial_depth <= tank)) fail("initial_depth", "must lie in [0, tank_depth]");

    try {
        validate_inventory(s.initial_inventory, s.inventory);
    } catch (const std::exception& e) {
        fail("initial_inventory", e.what());
    }

    if (!time_sorted(s.setpoint_schedule)) fail("setpoint_schedule", "entries must be time-sorted");
    for (std::size_t i = 0; i < s.setpoint_schedule.size(); ++i) {
        const auto& e = s.setpoint_schedule[i];
        const std::string field = "setpoint_schedule[" + std::to_string(i) + "]";
        if (!(e.time >= 0.0)) fail(field + ".time", "must be non-negative");
        if (!(e.target_depth >= 0.0 && e.target_depth <= tank)) {
            fail(field + ".target_depth", "must lie in [0, tank_depth]");
        }
    }

    if (!time_sorted(s.manual_schedule)) fail("manual_schedule", "entries must be time-sorted");
    for (std::size_t i = 0; i < s.manual_schedule.size(); ++i) {
        const auto& e = s.manual_schedule[i];
        const std::string field = "manual_schedule[" + std::to_string(i) + "]";
        if (!(e.time >= 0.0)) fail(field + ".time", "must be non-negative");
        if (e.pot_e < 0 || e.pot_e > 255) fail(field + ".pot_e", "must lie in 0..255");
        if (e.pot_m < 0 || e.pot_m > 255) fail(field + ".pot_m", "must lie in 0..255");
    }

    if (!time_sorted(s.disturbances)) fail("disturbances", "entries must be time-sorted");
    for (std::size_t i = 0; i < s.disturbances.size(); ++i) {
        const auto& e = s.disturbances[i];
        const std::string field = "disturbances[" + std::to_string(i) + "]";
        if (!(e.time >= 0.0)) fail(field + ".time", "must be non-negative");
        if (!(e.volume >= 0.0)) fail(field + ".volume", "must be non-negative");
    }
    return problems;
}

void validate(const Scenario& scenario) {
    auto problems = validation_problems(scenario);
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

}  // namespace bubblebuoy
