#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "bubblebuoy/vehicle_dynamics.hpp"
#include "support.hpp"

using namespace bubblebuoy;

namespace {

constexpr double kRhoG = 1000.0 * 9.81;

// Deep tank so that walls never interfere.
RobotParams open_water() {
    RobotParams p;
    p.tank_depth = 1000.0;
    return p;
}

// Integrates the hull under a constant gas volume; returns the final state.
VehicleState coast(VehicleState s, double gas, double seconds, double dt, const RobotParams& params) {
    const FluidEnv env;
    const long n = std::lround(seconds / dt);
    for (long k = 0; k < n; ++k) s = step_dynamics(s, net_vertical_force(s, gas, env, params), dt, params);
    return s;
}

double gas_for_net_lift(double force, const RobotParams& p) {
    return neutral_gas_volume(FluidEnv{}, p) + force / kRhoG;
}

}  // namespace

TEST(NetVerticalForce, BareHullSinksWithItsTrimWeight) {
    const RobotParams p;
    const double f = net_vertical_force(VehicleState{0.1, 0.0}, 0.0, FluidEnv{}, p);
    EXPECT_NEAR(f, -2.740e-3, 2.740e-3 * 1e-3);
    EXPECT_DOUBLE_EQ(f, rest_trim_force(FluidEnv{}, p));
}

TEST(NetVerticalForce, NeutralGasVolumeBalancesTheHull) {
    const RobotParams p;
    const double gas = neutral_gas_volume(FluidEnv{}, p);
    EXPECT_NEAR(gas, 2.793e-7, 2.793e-7 * 1e-3);
    EXPECT_NEAR(net_vertical_force(VehicleState{0.1, 0.0}, gas, FluidEnv{}, p), 0.0, 1e-15);
}

TEST(NetVerticalForce, DragCancelsLiftAtTerminalVelocity) {
    const RobotParams p;
    const double v = terminal_velocity(1e-3, p);
    const VehicleState rising{0.1, -v};
    EXPECT_NEAR(net_vertical_force(rising, gas_for_net_lift(1e-3, p), FluidEnv{}, p), 0.0, 1e-15);
}

TEST(NetVerticalForce, DragOpposesMotion) {
    const RobotParams p;
    const double gas = neutral_gas_volume(FluidEnv{}, p);
    EXPECT_GT(net_vertical_force(VehicleState{0.1, 0.01}, gas, FluidEnv{}, p), 0.0);   // sinking: drag points up
    EXPECT_LT(net_vertical_force(VehicleState{0.1, -0.01}, gas, FluidEnv{}, p), 0.0);  // rising: drag points down
}

TEST(StepDynamics, EquilibriumIsUnchanged) {
    const VehicleState s{0.2, 0.0};
    EXPECT_EQ(step_dynamics(s, 0.0, 1e-3, RobotParams{}), s);
}

TEST(StepDynamics, BottomIsAnInelasticStop) {
    const RobotParams p;
    VehicleState s{p.tank_depth, 0.0, true, false};
    for (int k = 0; k < 1000; ++k) s = step_dynamics(s, -2.74e-3, 1e-3, p);
    EXPECT_EQ(s.depth, p.tank_depth);
    EXPECT_EQ(s.velocity, 0.0);
    EXPECT_TRUE(s.on_bottom);
}

TEST(StepDynamics, SurfaceIsAnInelasticStop) {
    const RobotParams p;
    VehicleState s{0.001, -0.02};
    for (int k = 0; k < 1000; ++k) s = step_dynamics(s, 1e-3, 1e-3, p);
    EXPECT_EQ(s.depth, 0.0);
    EXPECT_EQ(s.velocity, 0.0);
    EXPECT_TRUE(s.at_surface);
}

TEST(StepDynamics, RejectsNonPositiveStep) {
    EXPECT_THROW(step_dynamics({}, 0.0, 0.0, RobotParams{}), std::invalid_argument);
    EXPECT_THROW(step_dynamics({}, 0.0, -1e-3, RobotParams{}), std::invalid_argument);
}

TEST(StepDynamics, OneMillinewtonOfLiftSettlesAtElevenPointThreeMillimetresPerSecond) {
    const RobotParams p;
    const VehicleState s = coast(VehicleState{0.34, 0.0}, gas_for_net_lift(1e-3, p), 10.0, 1e-3, p);
    EXPECT_NEAR(s.velocity, -11.3e-3, 11.3e-3 * 0.02);
    EXPECT_FALSE(s.at_surface);
}

TEST(TerminalVelocity, SquareRootOfForceOverDrag) {
    const RobotParams p;
    EXPECT_NEAR(terminal_velocity(1e-3, p), 11.30e-3, 11.30e-3 * 1e-3);
    EXPECT_EQ(terminal_velocity(0.0, p), 0.0);
    EXPECT_NEAR(terminal_velocity(4e-3, p), 2.0 * terminal_velocity(1e-3, p), 1e-15);
}

TEST(TerminalVelocity, UndefinedWithoutDrag) {
    RobotParams p;
    p.drag_coeff = 0.0;
    EXPECT_THROW(terminal_velocity(1e-3, p), std::domain_error);
}

TEST(TerminalVelocity, AgreesWithIntegratedSpeedAcrossTheWorkingRange) {
    const RobotParams p = open_water();
    testsupport::Gen gen(31);
    for (int i = 0; i < 25; ++i) {
        const double force = gen.log_uniform(0.1e-3, 10e-3);
        const bool up = gen.coin();
        const double gas = gas_for_net_lift(up ? force : -force, p);
        const VehicleState s = coast(VehicleState{500.0, 0.0}, gas, 30.0, 1e-3, p);
        const double expected = terminal_velocity(force, p);
        EXPECT_NEAR(std::abs(s.velocity), expected, 0.01 * expected) << "force " << force;
        EXPECT_EQ(s.velocity < 0.0, up);
    }
}

TEST(StepDynamics, DepthStaysInsideTheTankAndStopsHoldContact) {
    const RobotParams p;
    testsupport::Gen gen(32);
    for (int run = 0; run < 50; ++run) {
        VehicleState s{gen.uniform(0.0, p.tank_depth), gen.uniform(-0.05, 0.05)};
        for (int k = 0; k < 3000; ++k) {
            const double force = gen.uniform(-5e-3, 5e-3);
            s = step_dynamics(s, force, gen.log_uniform(1e-4, 1e-2), p);
            ASSERT_GE(s.depth, 0.0);
            ASSERT_LE(s.depth, p.tank_depth);
            if (s.on_bottom && force < 0.0) ASSERT_EQ(s.velocity, 0.0);
            if (s.at_surface && force > 0.0) ASSERT_EQ(s.velocity, 0.0);
        }
    }
}

TEST(StepDynamics, FrictionlessEnergyDriftIsBoundedAndShrinksWithStep) {
    RobotParams p = open_water();
    p.drag_coeff = 0.0;
    const double force = 1e-4;
    auto drift = [&](double dt) {
        VehicleState s{500.0, 0.0};
        const long n = std::lround(100.0 / dt);
        for (long k = 0; k < n; ++k) s = step_dynamics(s, force, dt, p);
        // Upward force: potential energy grows with depth.
        const double energy = 0.5 * p.mass * s.velocity * s.velocity + force * s.depth;
        return energy - force * 500.0;
    };
    const double coarse = drift(1e-3);
    const double fine = drift(5e-4);
    EXPECT_LT(std::abs(coarse), 1e-5 * force * 500.0);
    EXPECT_LT(std::abs(fine), std::abs(coarse));
    EXPECT_NEAR(coarse / fine, 2.0, 0.05);
}

TEST(StepDynamics, DepthConvergesAtFirstOrderInTheStep) {
    const RobotParams p = open_water();
    const double gas = gas_for_net_lift(1e-3, p);
    auto final_depth = [&](double dt) { return coast(VehicleState{500.0, 0.0}, gas, 60.0, dt, p).depth; };
    const double a = final_depth(4e-3), b = final_depth(2e-3), c = final_depth(1e-3);
    EXPECT_NEAR((a - b) / (b - c), 2.0, 0.2);
    EXPECT_LT(std::abs(b - c), 1e-4);
}

TEST(RobotParams, Validation) {
    RobotParams p;
    EXPECT_NO_THROW(p.validate());
    p.mass = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.drag_coeff = -1.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
    p = {};
    p.tank_depth = 0.0;
    EXPECT_THROW(p.validate(), std::invalid_argument);
}
