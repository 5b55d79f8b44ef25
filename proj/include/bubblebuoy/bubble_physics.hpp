#pragma once

// Closed-form bubble mechanics: capillary scale, pinning and vibration forces,
// and the size above which trapped bubbles leave the canopy.
//
// All quantities are SI. Angles are accepted in degrees.

namespace bubblebuoy {

struct FluidEnv {
    double water_density = 1000.0;   // kg/m^3
    double surface_tension = 0.072;  // N/m
    double gravity = 9.81;           // m/s^2

    /// Throws std::invalid_argument when a field is out of its admissible range.
    void validate() const;
};

/// Receding/advancing contact angles of the canopy material, in degrees.
struct WettingPair {
    double theta_receding = 71.0;
    double theta_advancing = 113.0;

    void validate() const;
};

/// Sinusoidal canopy oscillation. `span` is the peak-to-peak travel.
struct VibrationSpec {
    double frequency = 10.0;  // Hz
    double span = 6e-3;       // m

    void validate() const;
};

/// sqrt(gamma / (rho g)).
double capillary_length(const FluidEnv& env);

double bubble_volume(double diameter);

/// Archimedes lift of a gas volume. Gas density is neglected.
double buoyancy_force(const FluidEnv& env, double gas_volume);

/**
 * Contact-angle hysteresis pinning force on a bubble:
 *
 *   F = gamma * L_s * (cos(theta_rec) - cos(theta_adv))
 *
 * `contact_width` is L_s. It is not tied to the diameter here; callers that
 * want the usual estimate pass the bubble diameter.
 */
double lateral_adhesion_force(const FluidEnv& env, double contact_width, const WettingPair& wetting);

/// Peak acceleration of the oscillating canopy, (span/2) * (2 pi f)^2.
double vibration_peak_acceleration(const VibrationSpec& vib);

/// Added-mass coefficient of a sphere accelerating in liquid.
inline constexpr double kSphereAddedMass = 0.5;

/// Inertial force on a trapped bubble: C_m * rho * V(d) * a.
double vibration_inertial_force(const FluidEnv& env, double diameter, double acceleration);

/// Bubbles detach on their own above this size.
inline constexpr double kSpontaneousReleaseDiameter = 2.7e-3;
/// Smallest bubbles shaken loose at full vibration.
inline constexpr double kVibrationReleaseDiameter = 1.0e-3;

/**
 * Smallest diameter that leaves the canopy at the given vibration duty.
 *
 * Linear between the spontaneous threshold (duty 0) and the full-vibration
 * threshold (duty 1). This is an empirical interpolation, not a force
 * balance: evaluating the pinning and inertial forces above at 10 Hz / 6 mm
 * puts the crossover near 4 mm, well above the observed ~1 mm.
 */
double release_threshold_diameter(double vibration_duty);

}  // namespace bubblebuoy
