#include "bubblebuoy/tuner.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "bubblebuoy/metrics.hpp"
#include "bubblebuoy/simulation.hpp"

namespace bubblebuoy {

namespace {

constexpr double kAlpha = 1.0;  // reflection
constexpr double kGamma = 2.0;  // expansion
constexpr double kRho = 0.5;    // contraction
constexpr double kSigma = 0.5;  // shrink
constexpr double kInitialStep = 0.15;
constexpr double kSimplexTolerance = 1e-5;

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

auto key(const ControlGains& g) { return std::make_tuple(g.kp, g.ki, g.kd); }

bool better(double cost_a, const ControlGains& a, double cost_b, const ControlGains& b) {
    if (cost_a != cost_b) return cost_a < cost_b;
    return key(a) < key(b);
}

CostBreakdown safe_call(const Objective& objective, const ControlGains& g) {
    try {
        CostBreakdown c = objective(g);
        if (!std::isfinite(c.cost)) {
            c.failed = true;
            c.cost = kFailurePenalty;
        }
        return c;
    } catch (const std::exception&) {
        CostBreakdown c;
        c.failed = true;
        c.cost = kFailurePenalty;
        return c;
    }
}

// Maps each gain to [0, 1]. kp is handled on a log scale when its lower bound
// is positive, matching the grid.
class Normalizer {
public:
    explicit Normalizer(const GainBounds& b) : ranges_{b.kp, b.ki, b.kd} {
        log_[0] = b.kp.min > 0.0;
        for (int i = 0; i < 3; ++i) {
            if (!ranges_[i].collapsed()) free_.push_back(i);
        }
    }

    const std::vector<int>& free_dims() const { return free_; }

    double to_unit(int dim, double x) const {
        const GainRange& r = ranges_[dim];
        if (r.collapsed()) return 0.0;
        if (log_[dim]) return (std::log(x) - std::log(r.min)) / (std::log(r.max) - std::log(r.min));
        return (x - r.min) / (r.max - r.min);
    }

    double from_unit(int dim, double u) const {
        const GainRange& r = ranges_[dim];
        if (r.collapsed()) return r.min;
        u = std::clamp(u, 0.0, 1.0);
        const double x = log_[dim] ? std::exp(std::lerp(std::log(r.min), std::log(r.max), u)) : std::lerp(r.min, r.max, u);
        return std::clamp(x, r.min, r.max);
    }

    std::vector<double> encode(const ControlGains& g) const {
        const std::array<double, 3> x{g.kp, g.ki, g.kd};
        std::vector<double> u;
        for (int d : free_) u.push_back(to_unit(d, x[d]));
        return u;
    }

    ControlGains decode(const std::vector<double>& u) const {
        std::array<double, 3> x{};
        for (int d = 0; d < 3; ++d) x[d] = ranges_[d].min;
        for (std::size_t i = 0; i < free_.size(); ++i) x[free_[i]] = from_unit(free_[i], u[i]);
        return {x[0], x[1], x[2]};
    }

    std::vector<double> axis(int dim, int n) const {
        const GainRange& r = ranges_[dim];
        if (r.collapsed() || n == 1) return {r.collapsed() ? r.min : from_unit(dim, 0.5)};
        std::vector<double> v;
        for (int i = 0; i < n; ++i) v.push_back(from_unit(dim, static_cast<double>(i) / (n - 1)));
        return v;
    }

private:
    std::array<GainRange, 3> ranges_;
    std::array<bool, 3> log_{};
    std::vector<int> free_;
};

class Search {
public:
    Search(const TuneSpec& spec, const Objective& objective) : spec_(spec), objective_(objective), norm_(spec.bounds) {}

    TuneResult run(unsigned threads) {
        run_grid(threads);
        if (result_.truncated || norm_.free_dims().empty()) return finish();
        run_simplex();
        return finish();
    }

private:
    void record(const ControlGains& g, const CostBreakdown& c, TunePhase phase) {
        if (!have_best_ || better(c.cost, g, result_.best_cost, result_.best_gains)) {
            result_.best_cost = c.cost;
            result_.best_gains = g;
            have_best_ = true;
        }
        TraceEntry e;
        e.index = static_cast<int>(result_.trace.size());
        e.phase = phase;
        e.gains = g;
        e.breakdown = c;
        e.best_cost = result_.best_cost;
        result_.trace.push_back(e);
        seen_[key(g)] = c.cost;
    }

    void run_grid(unsigned threads) {
        std::vector<ControlGains> points = grid_points(spec_);
        if (static_cast<int>(points.size()) > spec_.budget) {
            points.resize(static_cast<std::size_t>(spec_.budget));
            result_.truncated = true;
        }

        std::vector<CostBreakdown> costs(points.size());
        if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
        threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (std::size_t i = next++; i < points.size(); i = next++) costs[i] = safe_call(objective_, points[i]);
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        }

        for (std::size_t i = 0; i < points.size(); ++i) record(points[i], costs[i], TunePhase::Grid);
    }

    // Evaluates a unit-cube point. Empty once the budget is spent.
    std::optional<double> eval(std::vector<double>& u) {
        for (double& x : u) x = std::clamp(x, 0.0, 1.0);
        const ControlGains g = norm_.decode(u);
        if (auto it = seen_.find(key(g)); it != seen_.end()) return it->second;
        if (static_cast<int>(result_.trace.size()) >= spec_.budget) {
            result_.truncated = true;
            return std::nullopt;
        }
        const CostBreakdown c = safe_call(objective_, g);
        record(g, c, TunePhase::Simplex);
        return c.cost;
    }

    void run_simplex() {
        const std::size_t n = norm_.free_dims().size();
        struct Vertex {
            std::vector<double> u;
            double f;
        };
        std::vector<Vertex> simplex;
        simplex.push_back({norm_.encode(result_.best_gains), result_.best_cost});
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> u = simplex.front().u;
            u[i] += u[i] + kInitialStep <= 1.0 ? kInitialStep : -kInitialStep;
            auto f = eval(u);
            if (!f) return;
            simplex.push_back({u, *f});
        }

        auto order = [&] {
            std::stable_sort(simplex.begin(), simplex.end(), [&](const Vertex& a, const Vertex& b) {
                return better(a.f, norm_.decode(a.u), b.f, norm_.decode(b.u));
            });
        };
        auto lerp_point = [&](const std::vector<double>& from, const std::vector<double>& to, double t) {
            std::vector<double> out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = from[i] + t * (to[i] - from[i]);
            return out;
        };

        const int max_iterations = 100 * std::max(1, spec_.budget);
        for (int iter = 0; iter < max_iterations; ++iter) {
            order();
            double size = 0.0;
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i].u[k] - simplex[0].u[k]));
            }
            if (size < kSimplexTolerance) return;

            std::vector<double> c(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t k = 0; k < n; ++k) c[k] += simplex[i].u[k] / static_cast<double>(n);
            }
            Vertex& worst = simplex[n];

            std::vector<double> xr = lerp_point(c, worst.u, -kAlpha);
            auto fr = eval(xr);
            if (!fr) return;

            if (*fr < simplex[0].f) {
                std::vector<double> xe = lerp_point(c, xr, kGamma);
                auto fe = eval(xe);
                if (!fe) return;
                worst = *fe < *fr ? Vertex{xe, *fe} : Vertex{xr, *fr};
                continue;
            }
            if (*fr < simplex[n - 1].f) {
                worst = {xr, *fr};
                continue;
            }

            const bool outside = *fr < worst.f;
            std::vector<double> xc = outside ? lerp_point(c, xr, kRho) : lerp_point(c, worst.u, kRho);
            auto fc = eval(xc);
            if (!fc) return;
            if (outside ? *fc <= *fr : *fc < worst.f) {
                worst = {xc, *fc};
                continue;
            }

            for (std::size_t i = 1; i <= n; ++i) {
                simplex[i].u = lerp_point(simplex[0].u, simplex[i].u, kSigma);
                auto f = eval(simplex[i].u);
                if (!f) return;
                simplex[i].f = *f;
            }
        }
    }

    TuneResult finish() { return std::move(result_); }

    const TuneSpec& spec_;
    const Objective& objective_;
    Normalizer norm_;
    TuneResult result_;
    bool have_best_ = false;
    std::map<std::tuple<double, double, double>, double> seen_;
};

}  // namespace

const char* phase_name(TunePhase p) { return p == TunePhase::Grid ? "grid" : "simplex"; }

void TuneSpec::validate() const {
    bubblebuoy::validate(scenario);
    for (const GainRange* r : {&bounds.kp, &bounds.ki, &bounds.kd}) {
        require(std::isfinite(r->min) && std::isfinite(r->max), "gain bounds must be finite");
        require(r->min >= 0.0, "gain bounds must be non-negative");
        require(r->min <= r->max, "gain bound min must not exceed max");
    }
    for (double w : {weights.overshoot, weights.settling, weights.itae}) {
        require(std::isfinite(w) && w >= 0.0, "weights must be non-negative");
    }
    require(weights.overshoot + weights.settling + weights.itae > 0.0, "weights must not all be zero");
    require(budget >= 1, "budget must be at least 1");
    require(grid.size() == 3, "grid needs one point count per gain");
    for (int n : grid) require(n >= 1, "grid point counts must be at least 1");
}

double weighted_cost(const CostBreakdown& c, const CostWeights& w) {
    if (c.failed) return kFailurePenalty;
    return w.overshoot * c.overshoot_mm + w.settling * c.settling_s + w.itae * c.itae_norm;
}

CostBreakdown evaluate_gains(const ControlGains& gains, const TuneSpec& spec) {
    gains.validate();
    require(spec.bounds.contains(gains), "gains lie outside the tuning bounds");

    Scenario s = spec.scenario;
    s.gains = gains;
    s.sensor.seed = spec.seed;

    CostBreakdown c;
    try {
        const RunResult run = run_scenario(s);
        for (const auto& r : run.telemetry) {
            if (!std::isfinite(r.depth)) throw std::runtime_error("non-finite depth");
        }
        for (const ResponseMetrics& m : segment_metrics(run)) {
            const double step = std::abs(m.step_mm);
            if (step == 0.0) continue;
            c.overshoot_mm += m.overshoot_mm;
            if (m.settling_time_5pct) {
                c.settling_s += *m.settling_time_5pct;
            } else {
                c.settling_s += kUnsettledPenalty;
                ++c.unsettled;
            }
            c.itae_norm += m.itae / step;
        }
    } catch (const std::exception&) {
        c = CostBreakdown{};
        c.failed = true;
    }
    c.cost = weighted_cost(c, spec.weights);
    return c;
}

std::vector<ControlGains> grid_points(const TuneSpec& spec) {
    const Normalizer norm(spec.bounds);
    const auto kp = norm.axis(0, spec.grid.at(0));
    const auto ki = norm.axis(1, spec.grid.at(1));
    const auto kd = norm.axis(2, spec.grid.at(2));
    std::vector<ControlGains> out;
    for (double p : kp) {
        for (double i : ki) {
            for (double d : kd) out.push_back({p, i, d});
        }
    }
    return out;
}

TuneResult tune(const TuneSpec& spec, const Objective& objective, unsigned threads) {
    spec.validate();
    return Search(spec, objective).run(threads);
}

TuneResult tune(const TuneSpec& spec, unsigned threads) {
    const Objective objective = [&spec](const ControlGains& g) { return evaluate_gains(g, spec); };
    return tune(spec, objective, threads);
}

}  // namespace bubblebuoy
