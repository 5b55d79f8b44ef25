#pragma once

// Small helpers shared by the unit and acceptance tests: a seeded value
// generator for property tests, scenario builders and a log-linear fit.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "bubblebuoy/scenario.hpp"
#include "bubblebuoy/vehicle_dynamics.hpp"

namespace testsupport {

/// Deterministic source of random test inputs.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return uniform(0.0, 1.0) < p; }
    /// Log-uniform in [lo, hi], both positive.
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    /// A duty that is often exactly 0 or 1.
    double duty() {
        const int pick = integer(0, 3);
        if (pick == 0) return 0.0;
        if (pick == 1) return 1.0;
        return uniform(0.0, 1.0);
    }

private:
    std::mt19937_64 rng_;
};

inline constexpr int kPropertyCases = 300;

/// Least-squares fit of y = a + b x. Returns {a, b}.
inline std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {(sy - b * sx) / n, b};
}

/// Canopy gas that leaves the robot `deficit` newtons short of neutral when
/// the electrode store holds its full holdup; split like freshly trapped gas.
inline bubblebuoy::GasInventory trimmed_inventory(const bubblebuoy::Scenario& s, double deficit) {
    const double neutral = bubblebuoy::neutral_gas_volume(s.env, s.robot);
    const double canopy = neutral - s.inventory.electrode_holdup - deficit / (s.env.water_density * s.env.gravity);
    bubblebuoy::GasInventory g;
    g.v_electrode = s.inventory.electrode_holdup;
    g.v_releasable = s.inventory.releasable_split * canopy;
    g.v_residual = canopy - g.v_releasable;
    return g;
}

/// Auto-mode step from 0.30 m to 0.10 m with a neutrally trimmed, partly
/// filled canopy.
inline bubblebuoy::Scenario step_scenario(const bubblebuoy::ControlGains& gains, double duration = 120.0) {
    bubblebuoy::Scenario s;
    s.label = "step 300 to 100 mm";
    s.mode = bubblebuoy::Mode::Auto;
    s.gains = gains;
    s.initial_depth = 0.30;
    s.duration = duration;
    s.initial_inventory = trimmed_inventory(s, 0.0);
    s.setpoint_schedule = {{0.0, 0.10}};
    return s;
}

}  // namespace testsupport
