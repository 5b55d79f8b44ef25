#include "bubblebuoy/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace bubblebuoy {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr std::pair<Event, const char*> kEventNames[] = {
    {kEventOverflow, "overflow"},
    {kEventBottomContact, "bottom_contact"},
    {kEventSurfaceContact, "surface_contact"},
    {kEventSetpointChange, "setpoint_change"},
    {kEventDisturbance, "disturbance"},
};

}  // namespace

double instantaneous_power(double elec_duty, double vib_duty) {
    if (!(elec_duty >= 0.0 && elec_duty <= 1.0 && vib_duty >= 0.0 && vib_duty <= 1.0)) {
        throw std::invalid_argument("duties must lie in [0, 1]");
    }
    return kIdlePower + kElectrolysisPower * elec_duty + kMotorPower * vib_duty;
}

std::string event_string(std::uint32_t events) {
    std::string out;
    for (const auto& [flag, name] : kEventNames) {
        if (events & flag) {
            if (!out.empty()) out += '|';
            out += name;
        }
    }
    return out.empty() ? "none" : out;
}

void validate_command(const Command& command, const Scenario& scenario) {
    std::visit(overloaded{
                   [&](const SetTargetDepthCmd& c) {
                       if (!(c.depth >= 0.0 && c.depth <= scenario.robot.tank_depth)) {
                           throw std::invalid_argument("target depth must lie in [0, tank_depth]");
                       }
                   },
                   [](const SetGainsCmd& c) { c.gains.validate(); },
                   [](const SetPotsCmd& c) { manual_command(c.pot_e, c.pot_m); },
                   [](const InjectDisturbanceCmd& c) {
                       if (!(std::isfinite(c.volume) && c.volume >= 0.0)) {
                           throw std::invalid_argument("disturbance volume must be non-negative");
                       }
                   },
                   [](const auto&) {},
               },
               command);
}

Simulation::Simulation(Scenario scenario) : scenario_(std::move(scenario)), noise_(scenario_.sensor.seed) {
    validate(scenario_);
    reset();
}

double Simulation::time() const { return static_cast<double>(tick_) * scenario_.control_period; }

void Simulation::reset() {
    const double tank = scenario_.robot.tank_depth;
    vehicle_ = VehicleState{scenario_.initial_depth, 0.0, scenario_.initial_depth >= tank,
                            scenario_.initial_depth <= 0.0};
    inventory_ = scenario_.initial_inventory;
    controller_ = {};
    ledger_ = {};
    gains_ = scenario_.gains;
    mode_ = scenario_.mode;
    setpoint_ = scenario_.initial_depth;
    measured_ = scenario_.initial_depth;
    output_ = 0.0;
    duties_ = {};
    manual_duties_ = {};
    energy_ = 0.0;
    tick_ = 0;
    next_setpoint_ = next_manual_ = next_disturbance_ = 0;
    pending_events_ = kEventNone;
    noise_ = NormalStream(scenario_.sensor.seed);
    segments_.clear();

    const auto& sched = scenario_.setpoint_schedule;
    const bool scheduled_at_start = !sched.empty() && sched.front().time <= 1e-9 * scenario_.control_period;
    if (mode_ == Mode::Auto && !scheduled_at_start) segments_.push_back({0.0, setpoint_});
}

void Simulation::submit(const Command& command) {
    validate_command(command, scenario_);
    queue_.push_back(command);
}

void Simulation::set_target(double depth) {
    setpoint_ = depth;
    pending_events_ |= kEventSetpointChange;
    if (mode_ == Mode::Auto) segments_.push_back({time(), depth});
}

void Simulation::apply(const Command& command) {
    std::visit(overloaded{
                   [&](const SetModeCmd& c) {
                       if (c.mode == mode_) return;
                       mode_ = c.mode;
                       if (mode_ == Mode::Auto) {
                           controller_ = {};
                           segments_.push_back({time(), setpoint_});
                       }
                   },
                   [&](const SetTargetDepthCmd& c) { set_target(c.depth); },
                   [&](const SetGainsCmd& c) { gains_ = c.gains; },
                   [&](const SetPotsCmd& c) { manual_duties_ = manual_command(c.pot_e, c.pot_m); },
                   [&](const InjectDisturbanceCmd& c) {
                       ledger_.disturbance += remove_canopy_gas(inventory_, c.volume);
                       pending_events_ |= kEventDisturbance;
                   },
                   [&](const ResetCmd&) { reset(); },
                   [](const PauseCmd&) {},
                   [](const ResumeCmd&) {},
               },
               command);
}

TelemetryRecord Simulation::control_tick() {
    // A reset restarts the run, so anything queued before the last reset is void.
    auto commands = std::exchange(queue_, {});
    auto last_reset = std::find_if(commands.rbegin(), commands.rend(),
                                   [](const Command& c) { return std::holds_alternative<ResetCmd>(c); });
    auto first_live = commands.begin();
    if (last_reset != commands.rend()) {
        reset();
        first_live = last_reset.base();
    }

    const double t = time();
    const double due = t + 1e-9 * scenario_.control_period;
    const auto& setpoints = scenario_.setpoint_schedule;
    while (next_setpoint_ < setpoints.size() && setpoints[next_setpoint_].time <= due) {
        set_target(setpoints[next_setpoint_++].target_depth);
    }
    const auto& manual = scenario_.manual_schedule;
    while (next_manual_ < manual.size() && manual[next_manual_].time <= due) {
        manual_duties_ = manual_command(manual[next_manual_].pot_e, manual[next_manual_].pot_m);
        ++next_manual_;
    }
    const auto& disturbances = scenario_.disturbances;
    while (next_disturbance_ < disturbances.size() && disturbances[next_disturbance_].time <= due) {
        apply(InjectDisturbanceCmd{disturbances[next_disturbance_++].volume});
    }

    for (auto it = first_live; it != commands.end(); ++it) apply(*it);

    measured_ = sense_depth(vehicle_.depth, scenario_.sensor, noise_.next());
    if (mode_ == Mode::Auto) {
        const PidResult r =
            pid_step(controller_, gains_, setpoint_, measured_, scenario_.control_period, scenario_.controller);
        controller_ = r.state;
        output_ = r.output;
        duties_ = map_actuation(output_, scenario_.controller.deadband);
    } else {
        duties_ = manual_duties_;
        output_ = kOutputLimit * (duties_.elec - duties_.vib);
    }

    TelemetryRecord rec = make_record(t);
    rec.events = std::exchange(pending_events_, kEventNone);
    return rec;
}

void Simulation::advance(const std::function<void(const TelemetryRecord&)>& per_step) {
    const long steps = scenario_.steps_per_period();
    const double dt = scenario_.physics_dt;
    const double t0 = time();
    const double power = instantaneous_power(duties_.elec, duties_.vib);

    for (long j = 0; j < steps; ++j) {
        std::uint32_t step_events = kEventNone;

        const InventoryStep gas = step_inventory(inventory_, duties_.elec, duties_.vib, dt, scenario_.inventory);
        inventory_ = gas.inventory;
        ledger_ += gas.flows;
        if (gas.overflowed) step_events |= kEventOverflow;

        const double force = net_vertical_force(vehicle_, total_buoyant_gas(inventory_), scenario_.env, scenario_.robot);
        const VehicleState next = step_dynamics(vehicle_, force, dt, scenario_.robot);
        if (next.on_bottom && !vehicle_.on_bottom) step_events |= kEventBottomContact;
        if (next.at_surface && !vehicle_.at_surface) step_events |= kEventSurfaceContact;
        vehicle_ = next;

        energy_ += power * dt;
        pending_events_ |= step_events;

        // The last step lands on the next tick, which emits its own record.
        if (per_step && j + 1 < steps) {
            TelemetryRecord rec = make_record(t0 + static_cast<double>(j + 1) * dt);
            rec.events = step_events;
            per_step(rec);
        }
    }
    ++tick_;
}

TelemetryRecord Simulation::make_record(double t) const {
    TelemetryRecord r;
    r.t = t;
    r.depth = vehicle_.depth;
    r.measured_depth = measured_;
    r.setpoint = setpoint_;
    r.output = output_;
    r.elec_duty = duties_.elec;
    r.vib_duty = duties_.vib;
    r.v_electrode = inventory_.v_electrode;
    r.v_releasable = inventory_.v_releasable;
    r.v_residual = inventory_.v_residual;
    r.net_force = net_vertical_force(vehicle_, total_buoyant_gas(inventory_), scenario_.env, scenario_.robot);
    r.power = instantaneous_power(duties_.elec, duties_.vib);
    r.cumulative_energy = energy_;
    return r;
}

RunResult run_scenario(const Scenario& scenario, const RunOptions& options) {
    Simulation sim(scenario);

    auto script = options.script;
    std::stable_sort(script.begin(), script.end(),
                     [](const TimedCommand& a, const TimedCommand& b) { return a.time < b.time; });
    for (const auto& tc : script) validate_command(tc.command, scenario);

    RunResult result;
    result.initial_inventory = scenario.initial_inventory;
    const long last_tick = scenario.ticks();
    result.telemetry.reserve(static_cast<std::size_t>(
        options.verbose ? (last_tick * scenario.steps_per_period() + 1) : (last_tick + 1)));

    auto sink = [&](const TelemetryRecord& r) { result.telemetry.push_back(r); };
    std::size_t next_cmd = 0;
    for (;;) {
        const double due = sim.time() + 1e-9 * scenario.control_period;
        while (next_cmd < script.size() && script[next_cmd].time <= due) sim.submit(script[next_cmd++].command);

        result.telemetry.push_back(sim.control_tick());
        if (sim.tick() >= last_tick) break;
        if (options.verbose) {
            sim.advance(sink);
        } else {
            sim.advance();
        }
    }

    result.segments = sim.segments();
    result.gas_ledger = sim.gas_ledger();
    result.final_inventory = sim.inventory();
    return result;
}

}  // namespace bubblebuoy
