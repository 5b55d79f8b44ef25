#include "bubblebuoy/session.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "bubblebuoy/commands_io.hpp"
#include "bubblebuoy/scenario_io.hpp"

namespace bubblebuoy {

SessionCore::SessionCore(Scenario scenario, double pacing) : sim_(std::move(scenario)), pacing_(pacing) {
    if (!(std::isfinite(pacing) && pacing > 0.0)) throw std::invalid_argument("pacing must be positive");
}

SessionStep SessionCore::step(const std::vector<InboundCommand>& inbound) {
    SessionStep out;
    for (const InboundCommand& in : inbound) {
        CommandOutcome o{in.client, in.ref, command_name(in.command), true, {}, sim_.tick()};
        if (std::holds_alternative<PauseCmd>(in.command)) {
            paused_ = true;
            out.outcomes.push_back(o);
        } else if (std::holds_alternative<ResumeCmd>(in.command)) {
            paused_ = false;
            out.outcomes.push_back(o);
        } else {
            try {
                sim_.submit(in.command);
                deferred_.push_back(o);
            } catch (const std::exception& e) {
                o.ok = false;
                o.error = e.what();
                out.outcomes.push_back(o);
            }
        }
    }
    if (paused_) return out;

    out.tick = sim_.tick();
    out.telemetry = sim_.control_tick();
    last_ = out.telemetry;
    last_tick_ = out.tick;
    for (CommandOutcome& o : deferred_) {
        o.tick = out.tick;
        out.outcomes.push_back(std::move(o));
    }
    deferred_.clear();
    sim_.advance();
    return out;
}

nlohmann::json SessionCore::snapshot(int connected_clients) const {
    nlohmann::json s = {{"label", sim_.scenario().label},
                        {"mode", mode_name(sim_.mode())},
                        {"sim_time", sim_.time()},
                        {"tick", sim_.tick()},
                        {"control_period", sim_.scenario().control_period},
                        {"pacing", pacing_},
                        {"paused", paused_},
                        {"connected_clients", connected_clients},
                        {"setpoint", sim_.setpoint()},
                        {"gains", gains_to_json(sim_.gains())},
                        {"tank_depth", sim_.scenario().robot.tank_depth}};
    nlohmann::json last = nullptr;
    if (last_) {
        last = record_to_json(*last_);
        last["tick"] = last_tick_;
    }
    return {{"session", std::move(s)}, {"last_telemetry", std::move(last)}};
}

}  // namespace bubblebuoy
