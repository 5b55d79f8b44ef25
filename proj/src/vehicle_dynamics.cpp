#include "bubblebuoy/vehicle_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubblebuoy {

void RobotParams::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
    require(std::isfinite(hull_volume) && hull_volume > 0.0, "hull_volume must be positive");
    require(std::isfinite(drag_coeff) && drag_coeff >= 0.0, "drag_coeff must be non-negative");
    require(std::isfinite(added_mass_coeff) && added_mass_coeff >= 0.0, "added_mass_coeff must be non-negative");
    require(std::isfinite(tank_depth) && tank_depth > 0.0, "tank_depth must be positive");
}

double net_vertical_force(const VehicleState& state, double gas_volume, const FluidEnv& env,
                          const RobotParams& params) {
    const double rho_g = env.water_density * env.gravity;
    const double lift = rho_g * (params.hull_volume + gas_volume);
    const double weight = params.mass * env.gravity;
    const double upward_speed = -state.velocity;
    const double drag = params.drag_coeff * std::abs(upward_speed) * upward_speed;
    return lift - weight - drag;
}

double rest_trim_force(const FluidEnv& env, const RobotParams& params) {
    return env.water_density * env.gravity * params.hull_volume - params.mass * env.gravity;
}

double neutral_gas_volume(const FluidEnv& env, const RobotParams& params) {
    return std::max(0.0, -rest_trim_force(env, params)) / (env.water_density * env.gravity);
}

VehicleState step_dynamics(const VehicleState& state, double force, double dt, const RobotParams& params) {
    if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("dt must be positive");

    VehicleState next;
    next.velocity = state.velocity - dt * force / params.effective_mass();
    next.depth = state.depth + dt * next.velocity;

    if (next.depth >= params.tank_depth) {
        next.depth = params.tank_depth;
        if (next.velocity > 0.0) next.velocity = 0.0;
        next.on_bottom = true;
    } else if (next.depth <= 0.0) {
        next.depth = 0.0;
        if (next.velocity < 0.0) next.velocity = 0.0;
        next.at_surface = true;
    }
    return next;
}

double terminal_velocity(double net_force_magnitude, const RobotParams& params) {
    if (params.drag_coeff <= 0.0) throw std::domain_error("terminal velocity is undefined without drag");
    return std::sqrt(std::abs(net_force_magnitude) / params.drag_coeff);
}

}  // namespace bubblebuoy
