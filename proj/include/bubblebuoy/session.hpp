#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bubblebuoy/simulation.hpp"

namespace bubblebuoy {

/// A command as received from a client. `ref` is the client's message seq.
struct InboundCommand {
    std::uint64_t client = 0;
    std::int64_t ref = 0;
    Command command;
};

/// Result of a command, reported back to the client that sent it.
struct CommandOutcome {
    std::uint64_t client = 0;
    std::int64_t ref = 0;
    std::string command;
    bool ok = true;
    std::string error;
    long tick = 0;  // tick at which the command took effect
};

struct SessionStep {
    std::optional<TelemetryRecord> telemetry;  // empty while paused
    long tick = 0;                             // tick of `telemetry`
    std::vector<CommandOutcome> outcomes;
};

/**
 * Single-owner session state, free of threads and sockets.
 *
 * Each step() is one control-period boundary: queued commands are handed to
 * the simulation, then, unless paused, one control tick runs and the plant is
 * advanced to the next boundary. Pause and resume act on the session itself
 * and never reach the simulation, so the tick sequence matches a headless
 * run of the same commands. A session keeps running past the scenario
 * duration.
 */
class SessionCore {
public:
    explicit SessionCore(Scenario scenario, double pacing = 1.0);

    SessionStep step(const std::vector<InboundCommand>& inbound);

    bool paused() const { return paused_; }
    double pacing() const { return pacing_; }
    double sim_time() const { return sim_.time(); }
    long tick() const { return sim_.tick(); }
    const Scenario& scenario() const { return sim_.scenario(); }
    const Simulation& simulation() const { return sim_; }
    const std::optional<TelemetryRecord>& last_telemetry() const { return last_; }

    /// Session description sent to clients on connect.
    nlohmann::json snapshot(int connected_clients) const;

private:
    Simulation sim_;
    double pacing_;
    bool paused_ = false;
    std::optional<TelemetryRecord> last_;
    long last_tick_ = -1;
    std::vector<CommandOutcome> deferred_;  // submitted, waiting for the next tick
};

}  // namespace bubblebuoy
