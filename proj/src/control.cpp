#include "bubblebuoy/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bubblebuoy {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

constexpr double kMillimetresPerMetre = 1000.0;

}  // namespace

void SensorModel::validate() const {
    require(std::isfinite(noise_sigma) && noise_sigma >= 0.0, "noise_sigma must be non-negative");
    require(std::isfinite(quantization) && quantization >= 0.0, "quantization must be non-negative");
}

void ControlGains::validate() const {
    for (double g : {kp, ki, kd}) {
        require(std::isfinite(g) && g >= 0.0, "controller gains must be finite and non-negative");
    }
}

void ControllerOptions::validate() const {
    require(std::isfinite(derivative_filter_tau) && derivative_filter_tau >= 0.0,
            "derivative_filter_tau must be non-negative");
    require(std::isfinite(integral_limit) && integral_limit >= 0.0, "integral_limit must be non-negative");
    require(std::isfinite(deadband) && deadband >= 0.0 && deadband < kOutputLimit,
            "deadband must lie in [0, 255)");
}

double sense_depth(double true_depth, const SensorModel& sensor, double noise_draw) {
    double reading = true_depth + sensor.noise_sigma * noise_draw;
    if (sensor.quantization > 0.0) reading = std::round(reading / sensor.quantization) * sensor.quantization;
    return std::max(0.0, reading);
}

PidResult pid_step(const ControllerState& state, const ControlGains& gains, double setpoint, double measured,
                   double dt, const ControllerOptions& options) {
    require(std::isfinite(dt) && dt > 0.0, "controller dt must be positive");

    const double measured_mm = measured * kMillimetresPerMetre;
    const double error = (measured - setpoint) * kMillimetresPerMetre;

    double rate = 0.0;
    if (state.primed) {
        rate = options.derivative_source == DerivativeSource::Measurement
                   ? (measured_mm - state.prev_measurement) / dt
                   : (error - state.prev_error) / dt;
    }
    double derivative = rate;
    if (state.primed && options.derivative_filter_tau > 0.0) {
        const double alpha = dt / (options.derivative_filter_tau + dt);
        derivative = state.derivative + alpha * (rate - state.derivative);
    }

    auto clamp_integral = [&](double i) {
        return options.integral_limit > 0.0 ? std::clamp(i, -options.integral_limit, options.integral_limit) : i;
    };

    double integral = clamp_integral(state.integral_accum + error * dt);
    double raw = gains.kp * error + gains.ki * integral + gains.kd * derivative;
    if (options.anti_windup) {
        const bool pushing_high = raw > kOutputLimit && error > 0.0;
        const bool pushing_low = raw < -kOutputLimit && error < 0.0;
        if (pushing_high || pushing_low) {
            integral = state.integral_accum;
            raw = gains.kp * error + gains.ki * integral + gains.kd * derivative;
        }
    }
    const double output = std::clamp(raw, -kOutputLimit, kOutputLimit);

    PidResult result;
    result.state.integral_accum = integral;
    result.state.prev_measurement = measured_mm;
    result.state.prev_error = error;
    result.state.derivative = derivative;
    result.state.last_output = output;
    result.state.primed = true;
    result.output = output;
    return result;
}

ActuatorDuties map_actuation(double output, double deadband) {
    const double counts = std::clamp(output, -kOutputLimit, kOutputLimit);
    if (counts > deadband) return {counts / kOutputLimit, 0.0};
    if (counts < -deadband) return {0.0, -counts / kOutputLimit};
    return {};
}

ActuatorDuties manual_command(int pot_e, int pot_m) {
    require(pot_e >= 0 && pot_e <= 255, "pot_e must lie in 0..255, got " + std::to_string(pot_e));
    require(pot_m >= 0 && pot_m <= 255, "pot_m must lie in 0..255, got " + std::to_string(pot_m));
    return {pot_e / kOutputLimit, pot_m / kOutputLimit};
}

}  // namespace bubblebuoy
