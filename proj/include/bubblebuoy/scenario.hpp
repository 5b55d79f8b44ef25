#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "bubblebuoy/bubble_physics.hpp"
#include "bubblebuoy/control.hpp"
#include "bubblebuoy/gas_inventory.hpp"
#include "bubblebuoy/vehicle_dynamics.hpp"

namespace bubblebuoy {

enum class Mode { Manual, Auto };

struct SetpointEntry {
    double time = 0.0;          // s
    double target_depth = 0.0;  // m
};

struct ManualEntry {
    double time = 0.0;  // s
    int pot_e = 0;
    int pot_m = 0;
};

/// Instantaneous removal of canopy gas, e.g. small bubbles escaping.
struct DisturbanceEntry {
    double time = 0.0;    // s
    double volume = 0.0;  // m^3
};

/// Everything needed to reproduce one run.
struct Scenario {
    std::string label = "scenario";
    FluidEnv env;
    RobotParams robot;
    InventoryParams inventory;
    ControlGains gains;
    ControllerOptions controller;
    SensorModel sensor;
    Mode mode = Mode::Auto;
    std::vector<SetpointEntry> setpoint_schedule;
    std::vector<ManualEntry> manual_schedule;
    std::vector<DisturbanceEntry> disturbances;
    double initial_depth = 0.30;
    GasInventory initial_inventory;
    double duration = 60.0;
    double physics_dt = 1e-3;
    double control_period = 0.1;

    /// Physics steps per control period. Only meaningful for a valid scenario.
    long steps_per_period() const;
    /// Control ticks after t = 0; a run emits ticks() + 1 records.
    long ticks() const;
};

/// Thrown when a scenario breaks one or more invariants. `problems` holds one
/// "field: reason" entry per offending field.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(std::vector<std::string> problems);
    const std::vector<std::string>& problems() const { return problems_; }

private:
    std::vector<std::string> problems_;
};

std::vector<std::string> validation_problems(const Scenario& scenario);
void validate(const Scenario& scenario);

}  // namespace bubblebuoy
