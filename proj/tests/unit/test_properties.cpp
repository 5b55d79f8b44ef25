#include <gtest/gtest.h>

#include <cmath>

#include "bubblebuoy/scenario_io.hpp"
#include "bubblebuoy/simulation.hpp"
#include "support.hpp"

using namespace bubblebuoy;

namespace {

// A short random scenario in either mode with scheduled events.
Scenario random_scenario(testsupport::Gen& gen) {
    Scenario s;
    s.label = "random";
    s.duration = gen.uniform(5.0, 40.0);
    s.mode = gen.coin(0.7) ? Mode::Auto : Mode::Manual;
    s.gains = {gen.uniform(0.0, 20.0), gen.uniform(0.0, 2.0), gen.uniform(0.0, 5.0)};
    s.controller.derivative_filter_tau = gen.coin() ? 0.0 : gen.uniform(0.05, 2.0);
    s.controller.integral_limit = gen.coin() ? 0.0 : gen.uniform(1.0, 500.0);
    s.initial_depth = gen.uniform(0.0, s.robot.tank_depth);
    s.initial_inventory = testsupport::trimmed_inventory(s, gen.uniform(-2e-3, 2e-3));
    s.inventory.capture_efficiency = gen.uniform(0.5, 1.0);
    s.sensor.seed = static_cast<std::uint64_t>(gen.integer(0, 1 << 30));
    double t = 0.0;
    for (int i = gen.integer(0, 3); i > 0; --i) {
        t += gen.uniform(0.0, s.duration / 2.0);
        s.setpoint_schedule.push_back({t, gen.uniform(0.0, s.robot.tank_depth)});
    }
    t = 0.0;
    for (int i = gen.integer(0, 3); i > 0; --i) {
        t += gen.uniform(0.0, s.duration / 2.0);
        s.manual_schedule.push_back({t, gen.integer(0, 255), gen.integer(0, 255)});
    }
    if (gen.coin()) s.disturbances.push_back({gen.uniform(0.0, s.duration), gen.uniform(0.0, 1e-7)});
    return s;
}

constexpr int kScenarioCases = 60;

}  // namespace

TEST(Properties, TelemetryStaysPhysical) {
    testsupport::Gen gen(51);
    for (int i = 0; i < kScenarioCases; ++i) {
        const Scenario s = random_scenario(gen);
        ASSERT_NO_THROW(validate(s));
        const RunResult r = run_scenario(s);
        ASSERT_EQ(static_cast<long>(r.telemetry.size()), s.ticks() + 1);
        for (const auto& rec : r.telemetry) {
            ASSERT_GE(rec.depth, 0.0);
            ASSERT_LE(rec.depth, s.robot.tank_depth);
            ASSERT_GE(rec.measured_depth, 0.0);
            ASSERT_LE(std::abs(rec.output), 255.0);
            ASSERT_GE(rec.elec_duty, 0.0);
            ASSERT_LE(rec.elec_duty, 1.0);
            ASSERT_GE(rec.vib_duty, 0.0);
            ASSERT_LE(rec.vib_duty, 1.0);
            ASSERT_GE(rec.v_electrode, 0.0);
            ASSERT_GE(rec.v_releasable, 0.0);
            ASSERT_GE(rec.v_residual, 0.0);
            ASSERT_LE(rec.v_releasable + rec.v_residual, s.inventory.canopy_capacity * (1.0 + 1e-12));
            ASSERT_GE(rec.power, kIdlePower);
        }
    }
}

TEST(Properties, LedgerClosesForEveryScenario) {
    testsupport::Gen gen(52);
    for (int i = 0; i < kScenarioCases; ++i) {
        const RunResult r = run_scenario(random_scenario(gen));
        const double in = total_buoyant_gas(r.initial_inventory) + r.gas_ledger.source;
        const double out = total_buoyant_gas(r.final_inventory) + r.gas_ledger.sinks();
        ASSERT_NEAR(in, out, 1e-9 * in);
    }
}

TEST(Properties, RunsAreReproducibleAndSurviveJsonRoundTrip) {
    testsupport::Gen gen(53);
    for (int i = 0; i < 20; ++i) {
        const Scenario s = random_scenario(gen);
        const Scenario back = scenario_from_json(scenario_to_json(s));
        const RunResult a = run_scenario(s);
        const RunResult b = run_scenario(back);
        ASSERT_EQ(a.telemetry, b.telemetry);
        ASSERT_EQ(a.final_inventory, b.final_inventory);
    }
}

TEST(Properties, VerboseRunsContainTheTickRecords) {
    testsupport::Gen gen(54);
    for (int i = 0; i < 10; ++i) {
        Scenario s = random_scenario(gen);
        s.duration = std::min(s.duration, 8.0);
        const RunResult coarse = run_scenario(s);
        const RunResult fine = run_scenario(s, RunOptions{true, {}});
        const long per = s.steps_per_period();
        ASSERT_EQ(static_cast<long>(fine.telemetry.size()), s.ticks() * per + 1);
        for (std::size_t k = 0; k < coarse.telemetry.size(); ++k) {
            ASSERT_EQ(fine.telemetry[k * static_cast<std::size_t>(per)], coarse.telemetry[k]);
        }
    }
}

TEST(Properties, EnergyNeverDecreasesAndMatchesPower) {
    testsupport::Gen gen(55);
    for (int i = 0; i < kScenarioCases; ++i) {
        const Scenario s = random_scenario(gen);
        const RunResult r = run_scenario(s);
        double integral = 0.0;
        for (std::size_t k = 1; k < r.telemetry.size(); ++k) {
            integral += r.telemetry[k - 1].power * s.control_period;
            ASSERT_GE(r.telemetry[k].cumulative_energy, r.telemetry[k - 1].cumulative_energy);
            ASSERT_NEAR(r.telemetry[k].cumulative_energy, integral, 1e-9 * std::max(1.0, integral));
        }
    }
}
