#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "bubblebuoy/control.hpp"
#include "bubblebuoy/gas_inventory.hpp"
#include "bubblebuoy/noise.hpp"
#include "bubblebuoy/scenario.hpp"
#include "bubblebuoy/vehicle_dynamics.hpp"

namespace bubblebuoy {

/// Electronics draw plus electrolysis and vibration-motor draw, in watts.
inline constexpr double kIdlePower = 0.26;
inline constexpr double kElectrolysisPower = 0.75;
inline constexpr double kMotorPower = 1.875;

double instantaneous_power(double elec_duty, double vib_duty);

/// Telemetry event flags; a record may carry several.
enum Event : std::uint32_t {
    kEventNone = 0,
    kEventOverflow = 1u << 0,
    kEventBottomContact = 1u << 1,
    kEventSurfaceContact = 1u << 2,
    kEventSetpointChange = 1u << 3,
    kEventDisturbance = 1u << 4,
};

/// "none", or the set flags joined with '|' in declaration order.
std::string event_string(std::uint32_t events);

struct TelemetryRecord {
    double t = 0.0;
    double depth = 0.0;
    double measured_depth = 0.0;
    double setpoint = 0.0;
    double output = 0.0;
    double elec_duty = 0.0;
    double vib_duty = 0.0;
    double v_electrode = 0.0;
    double v_releasable = 0.0;
    double v_residual = 0.0;
    double net_force = 0.0;
    double power = 0.0;
    double cumulative_energy = 0.0;
    std::uint32_t events = kEventNone;

    bool operator==(const TelemetryRecord&) const = default;
};

// Operator commands. They take effect at the next control tick.
struct SetModeCmd { Mode mode; };
struct SetTargetDepthCmd { double depth; };
struct SetGainsCmd { ControlGains gains; };
struct SetPotsCmd { int pot_e; int pot_m; };
struct PauseCmd {};
struct ResumeCmd {};
struct ResetCmd {};
struct InjectDisturbanceCmd { double volume; };

using Command = std::variant<SetModeCmd, SetTargetDepthCmd, SetGainsCmd, SetPotsCmd, PauseCmd, ResumeCmd, ResetCmd,
                             InjectDisturbanceCmd>;

/// Throws std::invalid_argument if the command cannot apply to this scenario.
void validate_command(const Command& command, const Scenario& scenario);

/// A setpoint hold: opened at each setpoint change, closed by the next one.
struct SegmentMark {
    double t_start = 0.0;
    double target = 0.0;
};

/**
 * Fixed-step co-simulation of gas inventory, hull dynamics and controller.
 *
 * Time advances in control periods. control_tick() handles everything that
 * happens on a tick (commands, schedules, sensing, control) and returns that
 * tick's record; advance() then integrates the plant over one period with the
 * duties held.
 */
class Simulation {
public:
    explicit Simulation(Scenario scenario);

    TelemetryRecord control_tick();
    /// `per_step`, when set, receives a record after every physics step.
    void advance(const std::function<void(const TelemetryRecord&)>& per_step = {});

    /// Queues a command for the next tick. Validates first.
    void submit(const Command& command);

    bool finished() const { return tick_ > scenario_.ticks(); }
    long tick() const { return tick_; }
    double time() const;

    const Scenario& scenario() const { return scenario_; }
    const VehicleState& vehicle() const { return vehicle_; }
    const GasInventory& inventory() const { return inventory_; }
    const ControllerState& controller() const { return controller_; }
    const GasFlows& gas_ledger() const { return ledger_; }
    const std::vector<SegmentMark>& segments() const { return segments_; }
    Mode mode() const { return mode_; }
    double setpoint() const { return setpoint_; }
    const ControlGains& gains() const { return gains_; }
    double cumulative_energy() const { return energy_; }

private:
    void reset();
    void apply(const Command& command);
    void set_target(double depth);
    TelemetryRecord make_record(double t) const;

    Scenario scenario_;
    NormalStream noise_;
    VehicleState vehicle_;
    GasInventory inventory_;
    ControllerState controller_;
    GasFlows ledger_;
    ControlGains gains_;
    Mode mode_ = Mode::Auto;
    double setpoint_ = 0.0;
    double measured_ = 0.0;
    double output_ = 0.0;
    ActuatorDuties duties_;
    ActuatorDuties manual_duties_;
    double energy_ = 0.0;
    long tick_ = 0;
    std::size_t next_setpoint_ = 0;
    std::size_t next_manual_ = 0;
    std::size_t next_disturbance_ = 0;
    std::uint32_t pending_events_ = kEventNone;
    std::vector<Command> queue_;
    std::vector<SegmentMark> segments_;
};

/// A command stamped with the simulated time it should be issued at.
struct TimedCommand {
    double time = 0.0;
    Command command;
};

struct RunResult {
    std::vector<TelemetryRecord> telemetry;
    std::vector<SegmentMark> segments;
    GasFlows gas_ledger;
    GasInventory initial_inventory;
    GasInventory final_inventory;
};

struct RunOptions {
    /// Emit a record after every physics step instead of once per tick.
    bool verbose = false;
    /// Issued at the first tick whose time is at or after the stamp.
    std::vector<TimedCommand> script;
};

RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

}  // namespace bubblebuoy
