#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "bubblebuoy/session.hpp"

namespace bubblebuoy {

inline constexpr int kWireSchemaVersion = 1;

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 0;  // 0 picks a free port
    double pacing = 1.0;
    std::chrono::milliseconds heartbeat_interval{2000};
};

/**
 * Serves a live session as newline-delimited JSON over TCP.
 *
 * One owner thread advances the session at pacing x real time. Each client
 * has a reader thread that parses and validates commands and a writer thread
 * that drains the client's outbox. Server messages carry a gapless
 * per-connection `seq`; replies name the command they answer in `ref`.
 */
class GatewayServer {
public:
    GatewayServer(Scenario scenario, ServerOptions options);
    ~GatewayServer();

    GatewayServer(const GatewayServer&) = delete;
    GatewayServer& operator=(const GatewayServer&) = delete;

    /// Binds and starts serving. Throws std::runtime_error if the port is unavailable.
    void start();
    /// Idempotent; also run by the destructor.
    void stop();

    int port() const { return port_; }
    int connected_clients() const;

private:
    struct Client;

    void accept_loop();
    void owner_loop();
    void reader_loop(const std::shared_ptr<Client>& client);
    void handle_line(const std::shared_ptr<Client>& client, const std::string& line);
    void broadcast(const nlohmann::json& message);
    void prune_clients();

    ServerOptions options_;
    SessionCore core_;
    int listen_fd_ = -1;
    int port_ = 0;
    std::atomic<bool> running_{false};
    std::atomic<std::uint64_t> next_client_id_{1};

    // Guards core_ reads from other threads and the client list, so that a
    // new client's snapshot and its first telemetry message are consistent.
    mutable std::mutex state_mutex_;
    std::vector<std::shared_ptr<Client>> clients_;

    std::mutex inbox_mutex_;
    std::vector<InboundCommand> inbox_;

    std::mutex wake_mutex_;
    std::condition_variable wake_;

    std::thread accept_thread_;
    std::thread owner_thread_;
};

}  // namespace bubblebuoy
