#pragma once

#include <cstdint>

// Depth sensing, the discrete PID loop, and the mapping from controller counts
// to actuator duties.
//
// Unit contract: the controller works on depth error in millimetres and emits
// counts in [-255, 255]. Positive error means the robot is too deep, which
// calls for lift, which is a positive output (electrolysis). Negative output
// drives the vibration motor.

namespace bubblebuoy {

inline constexpr double kOutputLimit = 255.0;

struct SensorModel {
    double noise_sigma = 5e-4;   // m
    double quantization = 1e-3;  // m, 0 disables rounding
    std::uint64_t seed = 42;

    void validate() const;
};

struct ControlGains {
    double kp = 2.5;  // counts per mm
    double ki = 0.9;  // counts per mm s
    double kd = 0.1;  // counts per mm/s

    void validate() const;
    bool operator==(const ControlGains&) const = default;
};

enum class DerivativeSource { Measurement, Error };

struct ControllerOptions {
    bool anti_windup = true;
    DerivativeSource derivative_source = DerivativeSource::Measurement;
    double derivative_filter_tau = 0.0;  // s, first-order low-pass on the D term; 0 = off
    double integral_limit = 0.0;         // mm s, hard clamp on the accumulator; 0 = none
    double deadband = 10.0;              // counts

    void validate() const;
};

struct ControllerState {
    double integral_accum = 0.0;    // mm s
    double prev_measurement = 0.0;  // mm
    double prev_error = 0.0;        // mm
    double derivative = 0.0;        // mm/s, filtered when a filter is configured
    double last_output = 0.0;       // counts
    bool primed = false;            // false until the first sample has been seen

    bool operator==(const ControllerState&) const = default;
};

struct PidResult {
    ControllerState state;
    double output = 0.0;
};

struct ActuatorDuties {
    double elec = 0.0;
    double vib = 0.0;

    bool operator==(const ActuatorDuties&) const = default;
};

/// Rounds `true_depth + sigma * noise_draw` to the quantization grid and
/// clamps at the surface.
double sense_depth(double true_depth, const SensorModel& sensor, double noise_draw);

/**
 * One controller update.
 *
 *   e   = (measured - setpoint) in mm
 *   raw = kp e + ki I + kd D
 *
 * D is the rate of change of the measurement (default) or of the error, in
 * mm/s, optionally low-passed. The first sample has D = 0. With anti-windup
 * on, the accumulator is frozen while the output is saturated and the error
 * would push it further into saturation.
 */
PidResult pid_step(const ControllerState& state, const ControlGains& gains, double setpoint, double measured,
                   double dt, const ControllerOptions& options = {});

/// Positive counts beyond the deadband drive electrolysis, negative counts the
/// vibration motor. Duties are |output| / 255.
ActuatorDuties map_actuation(double output, double deadband = 10.0);

/// Manual potentiometer counts (0..255 each) to duties. Both may be active.
ActuatorDuties manual_command(int pot_e, int pot_m);

}  // namespace bubblebuoy
