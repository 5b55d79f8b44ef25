#include "bubblebuoy/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bubblebuoy {

namespace {

// Linear interpolation of the time at which `value` crosses `level` between
// samples a and b.
double crossing_time(double ta, double va, double tb, double vb, double level) {
    if (vb == va) return tb;
    return ta + (level - va) / (vb - va) * (tb - ta);
}

}  // namespace

ResponseMetrics compute_metrics(std::span<const TelemetryRecord> telemetry, const Segment& segment) {
    if (!(segment.t_end >= segment.t_start)) throw std::invalid_argument("segment ends before it starts");
    if (telemetry.empty()) throw std::invalid_argument("empty telemetry");
    const double slack = 1e-9 * std::max(1.0, std::abs(segment.t_end));
    if (segment.t_start < telemetry.front().t - slack || segment.t_end > telemetry.back().t + slack) {
        throw std::invalid_argument("segment lies outside the telemetry range");
    }

    auto first = std::lower_bound(telemetry.begin(), telemetry.end(), segment.t_start - slack,
                                  [](const TelemetryRecord& r, double t) { return r.t < t; });
    auto last = std::upper_bound(first, telemetry.end(), segment.t_end + slack,
                                 [](double t, const TelemetryRecord& r) { return t < r.t; });
    const std::span<const TelemetryRecord> seg(first, last);
    if (seg.empty()) throw std::invalid_argument("segment contains no samples");

    ResponseMetrics m;
    m.segment = segment;
    const double t0 = seg.front().t;
    const double depth0 = seg.front().depth;
    m.step_mm = (segment.target - depth0) * 1000.0;
    const double step_abs = std::abs(m.step_mm);

    std::vector<double> rel_t(seg.size());
    std::vector<double> err(seg.size());  // |depth - target| in mm
    for (std::size_t i = 0; i < seg.size(); ++i) {
        rel_t[i] = seg[i].t - t0;
        err[i] = std::abs(seg[i].depth - segment.target) * 1000.0;
    }

    if (step_abs > 0.0) {
        const double dir = m.step_mm > 0.0 ? 1.0 : -1.0;
        for (const auto& r : seg) {
            m.overshoot_mm = std::max(m.overshoot_mm, dir * (r.depth - segment.target) * 1000.0);
        }

        // Fraction of the initial error closed so far.
        auto closure = [&](std::size_t i) { return (seg[i].depth - depth0) * 1000.0 / m.step_mm; };
        std::optional<double> t10, t90;
        for (std::size_t i = 1; i < seg.size() && !t90; ++i) {
            const double prev = closure(i - 1), cur = closure(i);
            if (!t10 && cur >= 0.1) t10 = crossing_time(rel_t[i - 1], prev, rel_t[i], cur, 0.1);
            if (!t90 && cur >= 0.9) t90 = crossing_time(rel_t[i - 1], prev, rel_t[i], cur, 0.9);
        }
        if (t10 && t90) m.rise_time_10_90 = *t90 - *t10;
    } else {
        m.rise_time_10_90 = 0.0;
    }

    const double band = 0.05 * step_abs;
    std::optional<std::size_t> last_out;
    for (std::size_t i = 0; i < seg.size(); ++i) {
        if (err[i] > band) last_out = i;
    }
    if (!last_out) {
        m.settling_time_5pct = 0.0;
    } else if (*last_out + 1 < seg.size()) {
        const std::size_t j = *last_out;
        m.settling_time_5pct = crossing_time(rel_t[j], err[j], rel_t[j + 1], err[j + 1], band);
    }

    if (m.settling_time_5pct) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i = 0; i < seg.size(); ++i) {
            if (rel_t[i] >= *m.settling_time_5pct) {
                sum += err[i];
                ++n;
            }
        }
        m.steady_state_error_mm = n > 0 ? sum / static_cast<double>(n) : 0.0;
    }

    for (std::size_t i = 1; i < seg.size(); ++i) {
        m.itae += 0.5 * (rel_t[i - 1] * err[i - 1] + rel_t[i] * err[i]) * (rel_t[i] - rel_t[i - 1]);
    }
    m.transition_energy = seg.back().cumulative_energy - seg.front().cumulative_energy;
    return m;
}

std::vector<Segment> close_segments(std::span<const SegmentMark> marks, double t_end) {
    std::vector<Segment> out;
    out.reserve(marks.size());
    for (std::size_t i = 0; i < marks.size(); ++i) {
        const double end = i + 1 < marks.size() ? marks[i + 1].t_start : t_end;
        out.push_back({marks[i].t_start, end, marks[i].target});
    }
    return out;
}

std::vector<ResponseMetrics> segment_metrics(const RunResult& run) {
    std::vector<ResponseMetrics> out;
    if (run.telemetry.empty()) return out;
    for (const auto& seg : close_segments(run.segments, run.telemetry.back().t)) {
        out.push_back(compute_metrics(run.telemetry, seg));
    }
    return out;
}

}  // namespace bubblebuoy
