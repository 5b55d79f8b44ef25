#include "bubblebuoy/bubble_physics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace bubblebuoy {

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

void FluidEnv::validate() const {
    require(water_density >= 950.0 && water_density <= 1100.0, "water_density must lie in [950, 1100] kg/m^3");
    require(surface_tension >= 0.02 && surface_tension <= 0.08, "surface_tension must lie in [0.02, 0.08] N/m");
    require(gravity > 0.0 && std::isfinite(gravity), "gravity must be positive");
}

void WettingPair::validate() const {
    require(theta_receding > 0.0, "theta_receding must be positive");
    require(theta_receding <= theta_advancing, "theta_receding must not exceed theta_advancing");
    require(theta_advancing < 180.0, "theta_advancing must be below 180 degrees");
}

void VibrationSpec::validate() const {
    require(frequency >= 0.0 && std::isfinite(frequency), "vibration frequency must be non-negative");
    require(span >= 0.0 && std::isfinite(span), "vibration span must be non-negative");
}

double capillary_length(const FluidEnv& env) {
    return std::sqrt(env.surface_tension / (env.water_density * env.gravity));
}

double bubble_volume(double diameter) {
    require(diameter >= 0.0, "diameter must be non-negative");
    return std::numbers::pi / 6.0 * diameter * diameter * diameter;
}

double buoyancy_force(const FluidEnv& env, double gas_volume) {
    require(gas_volume >= 0.0, "gas_volume must be non-negative");
    return env.water_density * env.gravity * gas_volume;
}

double lateral_adhesion_force(const FluidEnv& env, double contact_width, const WettingPair& wetting) {
    require(contact_width >= 0.0, "contact_width must be non-negative");
    wetting.validate();
    const double hysteresis =
        std::cos(deg_to_rad(wetting.theta_receding)) - std::cos(deg_to_rad(wetting.theta_advancing));
    return env.surface_tension * contact_width * hysteresis;
}

double vibration_peak_acceleration(const VibrationSpec& vib) {
    vib.validate();
    const double omega = 2.0 * std::numbers::pi * vib.frequency;
    return 0.5 * vib.span * omega * omega;
}

double vibration_inertial_force(const FluidEnv& env, double diameter, double acceleration) {
    require(acceleration >= 0.0, "acceleration must be non-negative");
    return kSphereAddedMass * env.water_density * bubble_volume(diameter) * acceleration;
}

double release_threshold_diameter(double vibration_duty) {
    if (!(vibration_duty >= 0.0 && vibration_duty <= 1.0)) {
        throw std::invalid_argument("vibration duty must lie in [0, 1], got " + std::to_string(vibration_duty));
    }
    // std::lerp is exact at both ends and monotone in between.
    return std::lerp(kSpontaneousReleaseDiameter, kVibrationReleaseDiameter, vibration_duty);
}

}  // namespace bubblebuoy
