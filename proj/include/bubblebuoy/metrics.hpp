#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bubblebuoy/simulation.hpp"

namespace bubblebuoy {

struct Segment {
    double t_start = 0.0;
    double t_end = 0.0;
    double target = 0.0;  // m
};

/**
 * Step-response figures for one setpoint hold.
 *
 * Times are relative to the segment start. The step is measured from the
 * depth at the segment start to the target. Rise and settling are
 * interpolated between samples; they are empty when never attained.
 */
struct ResponseMetrics {
    Segment segment;
    double step_mm = 0.0;  // signed, positive when the target is deeper
    double overshoot_mm = 0.0;
    std::optional<double> rise_time_10_90;
    std::optional<double> settling_time_5pct;
    std::optional<double> steady_state_error_mm;  // mean |e| after settling
    double itae = 0.0;                            // mm s^2
    double transition_energy = 0.0;               // J
};

ResponseMetrics compute_metrics(std::span<const TelemetryRecord> telemetry, const Segment& segment);

/// Closes each mark at the next mark's start, the last at `t_end`.
std::vector<Segment> close_segments(std::span<const SegmentMark> marks, double t_end);

std::vector<ResponseMetrics> segment_metrics(const RunResult& run);

}  // namespace bubblebuoy
