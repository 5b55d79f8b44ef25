#pragma once

#include "bubblebuoy/bubble_physics.hpp"

// Vertical motion of the hull in a tank of finite depth.
//
// Sign conventions: depth and velocity are positive downward, 0 at the free
// surface. Forces are positive upward.

namespace bubblebuoy {

struct RobotParams {
    double mass = 0.112;                    // kg
    double hull_volume = 0.112 / 1002.5;    // m^3, mass / rest density
    double drag_coeff = 7.832;              // N s^2 / m^2, F_drag = c |v| v
    double added_mass_coeff = 0.0;          // m_eff = mass * (1 + c)
    double tank_depth = 0.35;               // m

    void validate() const;
    double effective_mass() const { return mass * (1.0 + added_mass_coeff); }
};

struct VehicleState {
    double depth = 0.0;     // m
    double velocity = 0.0;  // m/s
    bool on_bottom = false;
    bool at_surface = false;

    bool operator==(const VehicleState&) const = default;
};

/// Buoyancy of hull plus gas, minus weight, minus quadratic drag.
double net_vertical_force(const VehicleState& state, double gas_volume, const FluidEnv& env,
                          const RobotParams& params);

/// Net force on the hull with no gas, at rest. Negative means it sinks.
double rest_trim_force(const FluidEnv& env, const RobotParams& params);

/// Gas volume that makes the resting hull neutrally buoyant.
double neutral_gas_volume(const FluidEnv& env, const RobotParams& params);

/**
 * Semi-implicit Euler step: velocity first, then depth with the new velocity.
 * The tank bottom and the free surface are inelastic stops; a velocity that
 * points into a stop is zeroed and the matching contact flag set.
 */
VehicleState step_dynamics(const VehicleState& state, double force, double dt, const RobotParams& params);

/// sqrt(|F| / drag_coeff). Throws std::domain_error when drag_coeff is zero.
double terminal_velocity(double net_force_magnitude, const RobotParams& params);

}  // namespace bubblebuoy
