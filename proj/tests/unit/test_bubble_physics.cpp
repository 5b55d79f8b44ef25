#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bubblebuoy/bubble_physics.hpp"
#include "support.hpp"

using namespace bubblebuoy;

namespace {

FluidEnv water(double gamma = 0.072, double rho = 1000.0) { return {rho, gamma, 9.81}; }

void expect_rel(double actual, double expected, double rel) {
    EXPECT_NEAR(actual, expected, std::abs(expected) * rel) << "expected " << expected;
}

}  // namespace

TEST(CapillaryLength, DefaultWaterIsAboutTwoPointSevenMillimetres) {
    expect_rel(capillary_length(water()), 2.709e-3, 5e-4);
}

TEST(CapillaryLength, QuarterSurfaceTensionHalvesIt) {
    expect_rel(capillary_length(water(0.018)), 1.354e-3, 5e-4);
    EXPECT_NEAR(capillary_length(water(0.018)) * 2.0, capillary_length(water()), 1e-15);
}

TEST(CapillaryLength, SlightlyLighterWater) {
    // sqrt(0.072 / (998 * 9.81))
    expect_rel(capillary_length(water(0.072, 998.0)), std::sqrt(0.072 / (998.0 * 9.81)), 1e-12);
    expect_rel(capillary_length(water(0.072, 998.0)), 2.712e-3, 5e-4);
}

TEST(CapillaryLength, ScalesWithSquareRootOfSurfaceTension) {
    testsupport::Gen gen(11);
    for (int i = 0; i < testsupport::kPropertyCases; ++i) {
        const double gamma = gen.uniform(0.02, 0.04);
        const double rho = gen.uniform(950.0, 1100.0);
        const double ratio = capillary_length(water(2.0 * gamma, rho)) / capillary_length(water(gamma, rho));
        EXPECT_NEAR(ratio, std::numbers::sqrt2, 1e-12 * std::numbers::sqrt2);
    }
}

TEST(FluidEnv, RejectsOutOfRangeFields) {
    EXPECT_THROW(water(0.072, 900.0).validate(), std::invalid_argument);
    EXPECT_THROW(water(0.1).validate(), std::invalid_argument);
    EXPECT_THROW((FluidEnv{1000.0, 0.072, 0.0}).validate(), std::invalid_argument);
    EXPECT_NO_THROW(water().validate());
}

TEST(BubbleVolume, SphereFormula) {
    EXPECT_EQ(bubble_volume(0.0), 0.0);
    expect_rel(bubble_volume(1e-3), 5.236e-10, 1e-4);
    EXPECT_NEAR(bubble_volume(2e-3), 8.0 * bubble_volume(1e-3), 1e-22);
    expect_rel(bubble_volume(2e-3), 4.189e-9, 1e-4);
    EXPECT_THROW(bubble_volume(-1e-3), std::invalid_argument);
}

TEST(BuoyancyForce, Archimedes) {
    EXPECT_EQ(buoyancy_force(water(), 0.0), 0.0);
    expect_rel(buoyancy_force(water(), 5.236e-10), 5.137e-6, 1e-3);
    // The full canopy is worth about 10 mN.
    expect_rel(buoyancy_force(water(), 1.019e-6), 1.0e-2, 1e-3);
    EXPECT_THROW(buoyancy_force(water(), -1.0), std::invalid_argument);
}

TEST(LateralAdhesion, OneMillimetreContactIsAboutFiftyMicronewtons) {
    const double expected = 0.072 * 1e-3 * (std::cos(71.0 * std::numbers::pi / 180.0) - std::cos(113.0 * std::numbers::pi / 180.0));
    expect_rel(lateral_adhesion_force(water(), 1e-3, WettingPair{}), expected, 1e-12);
    expect_rel(lateral_adhesion_force(water(), 1e-3, WettingPair{}), 5.157e-5, 1e-3);
}

TEST(LateralAdhesion, NoHysteresisNoForce) {
    EXPECT_NEAR(lateral_adhesion_force(water(), 1e-3, WettingPair{90.0, 90.0}), 0.0, 1e-20);
}

TEST(LateralAdhesion, LinearInContactWidth) {
    expect_rel(lateral_adhesion_force(water(), 1e-4, WettingPair{}), 5.157e-6, 1e-3);
    EXPECT_THROW(lateral_adhesion_force(water(), -1e-4, WettingPair{}), std::invalid_argument);
}

TEST(LateralAdhesion, NonNegativeAndIncreasingInWidth) {
    testsupport::Gen gen(12);
    for (int i = 0; i < testsupport::kPropertyCases; ++i) {
        const double rec = gen.uniform(1.0, 170.0);
        const double adv = gen.uniform(rec, 179.0);
        const WettingPair w{rec, adv};
        ASSERT_NO_THROW(w.validate());
        const double a = gen.uniform(0.0, 5e-3);
        const double b = a + gen.uniform(1e-6, 5e-3);
        const double fa = lateral_adhesion_force(water(), a, w);
        const double fb = lateral_adhesion_force(water(), b, w);
        EXPECT_GE(fa, 0.0);
        if (adv > rec) EXPECT_GT(fb, fa);
    }
}

TEST(WettingPair, RejectsInvertedOrOutOfRangeAngles) {
    EXPECT_THROW((WettingPair{120.0, 100.0}).validate(), std::invalid_argument);
    EXPECT_THROW((WettingPair{0.0, 100.0}).validate(), std::invalid_argument);
    EXPECT_THROW((WettingPair{30.0, 180.0}).validate(), std::invalid_argument);
}

TEST(VibrationAcceleration, SinusoidalPeak) {
    expect_rel(vibration_peak_acceleration(VibrationSpec{10.0, 6e-3}), 11.84, 1e-3);
    EXPECT_EQ(vibration_peak_acceleration(VibrationSpec{0.0, 6e-3}), 0.0);
    expect_rel(vibration_peak_acceleration(VibrationSpec{20.0, 6e-3}), 47.37, 1e-3);
    EXPECT_THROW((VibrationSpec{-1.0, 6e-3}).validate(), std::invalid_argument);
}

TEST(VibrationInertialForce, MatchesQuotedForceScales) {
    const double a = vibration_peak_acceleration(VibrationSpec{});
    expect_rel(vibration_inertial_force(water(), 1e-4, a), 3.09e-9, 1e-2);
    expect_rel(vibration_inertial_force(water(), 1e-3, a), 3.09e-6, 1e-2);
    EXPECT_EQ(vibration_inertial_force(water(), 1e-3, 0.0), 0.0);
    EXPECT_THROW(vibration_inertial_force(water(), 1e-3, -1.0), std::invalid_argument);
}

TEST(VibrationInertialForce, OutgrowsAdhesionWithSize) {
    const double a = vibration_peak_acceleration(VibrationSpec{});
    auto ratio = [&](double d) {
        return vibration_inertial_force(water(), d, a) / lateral_adhesion_force(water(), d, WettingPair{});
    };
    testsupport::Gen gen(13);
    for (int i = 0; i < testsupport::kPropertyCases; ++i) {
        const double d = gen.log_uniform(1e-6, 1e-2);
        const double larger = d * gen.uniform(1.001, 3.0);
        EXPECT_GT(ratio(larger), ratio(d));
    }
}

TEST(ReleaseThreshold, PinnedEndpointsAndMidpoint) {
    EXPECT_EQ(release_threshold_diameter(0.0), 2.7e-3);
    EXPECT_EQ(release_threshold_diameter(1.0), 1.0e-3);
    EXPECT_NEAR(release_threshold_diameter(0.5), 1.85e-3, 1e-15);
}

TEST(ReleaseThreshold, RejectsDutyOutsideUnitInterval) {
    EXPECT_THROW(release_threshold_diameter(-0.01), std::invalid_argument);
    EXPECT_THROW(release_threshold_diameter(1.01), std::invalid_argument);
    EXPECT_THROW(release_threshold_diameter(std::nan("")), std::invalid_argument);
}

TEST(ReleaseThreshold, NonIncreasingInDuty) {
    testsupport::Gen gen(14);
    for (int i = 0; i < testsupport::kPropertyCases; ++i) {
        const double a = gen.uniform(0.0, 1.0);
        const double b = gen.uniform(a, 1.0);
        EXPECT_GE(release_threshold_diameter(a), release_threshold_diameter(b));
    }
}

TEST(BubblePhysics, PureFunctionsRepeatBitForBit) {
    testsupport::Gen gen(15);
    for (int i = 0; i < 50; ++i) {
        const FluidEnv env = water(gen.uniform(0.02, 0.08), gen.uniform(950.0, 1100.0));
        const double d = gen.uniform(0.0, 3e-3);
        const double acc = gen.uniform(0.0, 50.0);
        EXPECT_EQ(capillary_length(env), capillary_length(env));
        EXPECT_EQ(vibration_inertial_force(env, d, acc), vibration_inertial_force(env, d, acc));
        EXPECT_EQ(lateral_adhesion_force(env, d, WettingPair{}), lateral_adhesion_force(env, d, WettingPair{}));
    }
}
