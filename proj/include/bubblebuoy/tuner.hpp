#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bubblebuoy/scenario.hpp"

namespace bubblebuoy {

struct GainRange {
    double min = 0.0;
    double max = 0.0;

    bool collapsed() const { return min == max; }
    bool contains(double x) const { return x >= min && x <= max; }
};

struct GainBounds {
    GainRange kp{0.5, 20.0};
    GainRange ki{0.0, 2.0};
    GainRange kd{0.0, 1.0};

    bool contains(const ControlGains& g) const { return kp.contains(g.kp) && ki.contains(g.ki) && kd.contains(g.kd); }
};

struct CostWeights {
    double overshoot = 1.0;  // per mm
    double settling = 5.0;   // per s
    double itae = 0.1;       // per (mm s^2 / mm step)
};

/// Settling time charged for a segment that never settles.
inline constexpr double kUnsettledPenalty = 1000.0;  // s
/// Cost of a gain set whose simulation failed.
inline constexpr double kFailurePenalty = 1e9;

struct TuneSpec {
    Scenario scenario;
    GainBounds bounds;
    CostWeights weights;
    int budget = 300;
    std::uint64_t seed = 42;  // replaces the scenario's sensor seed
    std::vector<int> grid = {5, 4, 4};  // points per gain: kp (log-spaced), ki, kd

    void validate() const;
};

/// Summed over every segment whose step is non-zero.
struct CostBreakdown {
    double overshoot_mm = 0.0;
    double settling_s = 0.0;  // unsettled segments count kUnsettledPenalty
    double itae_norm = 0.0;   // itae / |step_mm|
    int unsettled = 0;
    bool failed = false;
    double cost = 0.0;
};

double weighted_cost(const CostBreakdown& c, const CostWeights& w);

/// Runs the spec's scenario with `gains`. Throws std::invalid_argument when the
/// gains are outside the bounds.
CostBreakdown evaluate_gains(const ControlGains& gains, const TuneSpec& spec);

enum class TunePhase { Grid, Simplex };

struct TraceEntry {
    int index = 0;
    TunePhase phase = TunePhase::Grid;
    ControlGains gains;
    CostBreakdown breakdown;
    double best_cost = 0.0;  // best so far, including this entry
};

struct TuneResult {
    ControlGains best_gains;
    double best_cost = 0.0;
    bool truncated = false;
    std::vector<TraceEntry> trace;
};

using Objective = std::function<CostBreakdown(const ControlGains&)>;

/// Grid seed, then bounded Nelder-Mead. The objective must be safe to call
/// from several threads at once; `threads` = 0 picks the hardware count.
TuneResult tune(const TuneSpec& spec, const Objective& objective, unsigned threads = 0);
TuneResult tune(const TuneSpec& spec, unsigned threads = 0);

std::vector<ControlGains> grid_points(const TuneSpec& spec);

const char* phase_name(TunePhase p);

}  // namespace bubblebuoy
