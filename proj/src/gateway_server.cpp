#include "bubblebuoy/gateway_server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <deque>
#include <limits>
#include <stdexcept>

#include "bubblebuoy/commands_io.hpp"
#include "bubblebuoy/scenario_io.hpp"

namespace bubblebuoy {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxLineBytes = 64 * 1024;
constexpr int kPollMs = 100;

json error_message(const json& ref, const std::string& message) {
    return {{"kind", "error"}, {"ref", ref}, {"message", message}};
}

}  // namespace

struct GatewayServer::Client {
    std::uint64_t id = 0;
    int fd = -1;
    std::mutex mutex;
    std::condition_variable ready;
    std::deque<std::string> outbox;
    std::int64_t next_seq = 0;
    bool closed = false;
    std::int64_t last_ref = std::numeric_limits<std::int64_t>::min();  // reader thread only
    std::thread reader;
    std::thread writer;

    // Stamps the next seq and queues the message for the writer.
    void send(json message) {
        std::lock_guard lock(mutex);
        if (closed) return;
        message["seq"] = next_seq++;
        outbox.push_back(message.dump() + "\n");
        ready.notify_one();
    }

    void close() {
        std::lock_guard lock(mutex);
        if (closed) return;
        closed = true;
        ::shutdown(fd, SHUT_RDWR);
        ready.notify_all();
    }

    bool is_closed() {
        std::lock_guard lock(mutex);
        return closed;
    }

    void write_loop() {
        for (;;) {
            std::string line;
            {
                std::unique_lock lock(mutex);
                ready.wait(lock, [&] { return closed || !outbox.empty(); });
                if (closed) return;
                line = std::move(outbox.front());
                outbox.pop_front();
            }
            std::size_t sent = 0;
            while (sent < line.size()) {
                const ssize_t n = ::send(fd, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
                if (n < 0 && errno == EINTR) continue;
                if (n <= 0) {
                    close();
                    return;
                }
                sent += static_cast<std::size_t>(n);
            }
        }
    }
};

GatewayServer::GatewayServer(Scenario scenario, ServerOptions options)
    : options_(std::move(options)), core_(std::move(scenario), options_.pacing) {}

GatewayServer::~GatewayServer() { stop(); }

void GatewayServer::start() {
    if (running_) return;
    listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listen_fd_ < 0) throw std::runtime_error(std::string("socket: ") + std::strerror(errno));
    const int one = 1;
    ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(options_.port));
    if (::inet_pton(AF_INET, options_.host.c_str(), &addr.sin_addr) != 1) {
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("invalid IPv4 host " + options_.host);
    }
    if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 || ::listen(listen_fd_, 16) < 0) {
        const std::string reason = std::strerror(errno);
        ::close(listen_fd_);
        listen_fd_ = -1;
        throw std::runtime_error("cannot listen on " + options_.host + ":" + std::to_string(options_.port) + ": " +
                                 reason);
    }
    socklen_t len = sizeof addr;
    ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
    port_ = ntohs(addr.sin_port);

    running_ = true;
    owner_thread_ = std::thread([this] { owner_loop(); });
    accept_thread_ = std::thread([this] { accept_loop(); });
}

void GatewayServer::stop() {
    if (!running_.exchange(false)) return;
    wake_.notify_all();
    if (owner_thread_.joinable()) owner_thread_.join();
    if (accept_thread_.joinable()) accept_thread_.join();

    std::vector<std::shared_ptr<Client>> clients;
    {
        std::lock_guard lock(state_mutex_);
        clients.swap(clients_);
    }
    for (auto& c : clients) {
        c->close();
        if (c->reader.joinable()) c->reader.join();
        if (c->writer.joinable()) c->writer.join();
        ::close(c->fd);
    }
    ::close(listen_fd_);
    listen_fd_ = -1;
}

int GatewayServer::connected_clients() const {
    std::lock_guard lock(state_mutex_);
    int n = 0;
    for (const auto& c : clients_) n += c->is_closed() ? 0 : 1;
    return n;
}

void GatewayServer::accept_loop() {
    while (running_) {
        pollfd p{listen_fd_, POLLIN, 0};
        const int ready = ::poll(&p, 1, kPollMs);
        prune_clients();
        if (ready <= 0 || !(p.revents & POLLIN)) continue;

        const int fd = ::accept(listen_fd_, nullptr, nullptr);
        if (fd < 0) continue;
        const int one = 1;
        ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);

        auto client = std::make_shared<Client>();
        client->id = next_client_id_++;
        client->fd = fd;
        {
            std::lock_guard lock(state_mutex_);
            int live = 1;
            for (const auto& c : clients_) live += c->is_closed() ? 0 : 1;
            json snap = core_.snapshot(live);
            snap["kind"] = "snapshot";
            snap["schema_version"] = kWireSchemaVersion;
            client->send(std::move(snap));
            clients_.push_back(client);
        }
        client->writer = std::thread([client] { client->write_loop(); });
        client->reader = std::thread([this, client] { reader_loop(client); });
    }
}

void GatewayServer::prune_clients() {
    std::vector<std::shared_ptr<Client>> dead;
    {
        std::lock_guard lock(state_mutex_);
        std::erase_if(clients_, [&](const std::shared_ptr<Client>& c) {
            if (!c->is_closed()) return false;
            dead.push_back(c);
            return true;
        });
    }
    for (auto& c : dead) {
        if (c->reader.joinable()) c->reader.join();
        if (c->writer.joinable()) c->writer.join();
        ::close(c->fd);
    }
}

void GatewayServer::reader_loop(const std::shared_ptr<Client>& client) {
    std::string buffer;
    char chunk[4096];
    while (running_ && !client->is_closed()) {
        pollfd p{client->fd, POLLIN, 0};
        const int ready = ::poll(&p, 1, kPollMs);
        if (ready < 0 && errno != EINTR) break;
        if (ready <= 0) continue;
        const ssize_t n = ::recv(client->fd, chunk, sizeof chunk, 0);
        if (n < 0 && errno == EINTR) continue;
        if (n <= 0) break;
        buffer.append(chunk, static_cast<std::size_t>(n));

        std::size_t start = 0;
        for (std::size_t nl; (nl = buffer.find('\n', start)) != std::string::npos; start = nl + 1) {
            std::string line = buffer.substr(start, nl - start);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty()) handle_line(client, line);
        }
        buffer.erase(0, start);
        if (buffer.size() > kMaxLineBytes) {
            client->send(error_message(nullptr, "message exceeds " + std::to_string(kMaxLineBytes) + " bytes"));
            buffer.clear();
        }
    }
    client->close();
}

void GatewayServer::handle_line(const std::shared_ptr<Client>& client, const std::string& line) {
    json msg;
    try {
        msg = json::parse(line);
    } catch (const json::parse_error& e) {
        client->send(error_message(nullptr, std::string("malformed JSON: ") + e.what()));
        return;
    }
    if (!msg.is_object()) {
        client->send(error_message(nullptr, "expected a JSON object"));
        return;
    }
    const json ref = msg.contains("seq") ? msg["seq"] : json(nullptr);
    if (!ref.is_number_integer()) {
        client->send(error_message(nullptr, "seq: expected an integer"));
        return;
    }
    const auto seq = ref.get<std::int64_t>();
    if (seq <= client->last_ref) {
        client->send(error_message(ref, "seq must increase (last was " + std::to_string(client->last_ref) + ")"));
        return;
    }
    client->last_ref = seq;

    try {
        if (msg.value("kind", "") != "command") throw SchemaError("kind: expected \"command\"");
        const auto name = msg.find("command");
        if (name == msg.end() || !name->is_string()) throw SchemaError("command: expected a string");
        for (auto it = msg.begin(); it != msg.end(); ++it) {
            if (it.key() != "kind" && it.key() != "seq" && it.key() != "command" && it.key() != "args") {
                throw SchemaError(it.key() + ": unknown field");
            }
        }
        const Command command = command_from_json(name->get<std::string>(), msg.value("args", json()));
        validate_command(command, core_.scenario());
        std::lock_guard lock(inbox_mutex_);
        inbox_.push_back({client->id, seq, command});
    } catch (const std::exception& e) {
        client->send(error_message(ref, e.what()));
    }
}

void GatewayServer::broadcast(const json& message) {
    for (auto& c : clients_) c->send(message);
}

void GatewayServer::owner_loop() {
    using clock = std::chrono::steady_clock;
    const auto period = std::chrono::duration_cast<clock::duration>(
        std::chrono::duration<double>(core_.scenario().control_period / core_.pacing()));
    auto next_tick = clock::now();
    auto next_heartbeat = next_tick + options_.heartbeat_interval;

    while (running_) {
        std::vector<InboundCommand> inbound;
        {
            std::lock_guard lock(inbox_mutex_);
            inbound.swap(inbox_);
        }
        {
            std::lock_guard lock(state_mutex_);
            const SessionStep step = core_.step(inbound);
            for (const CommandOutcome& o : step.outcomes) {
                json reply = o.ok ? json{{"kind", "ack"}, {"ref", o.ref}, {"command", o.command}, {"tick", o.tick}}
                                  : error_message(o.ref, o.error);
                for (auto& c : clients_) {
                    if (c->id == o.client) c->send(reply);
                }
            }
            if (step.telemetry) {
                broadcast({{"kind", "telemetry"}, {"tick", step.tick}, {"record", record_to_json(*step.telemetry)}});
            }

            const auto now = clock::now();
            if (now >= next_heartbeat) {
                int live = 0;
                for (const auto& c : clients_) live += c->is_closed() ? 0 : 1;
                broadcast({{"kind", "heartbeat"},
                           {"sim_time", core_.sim_time()},
                           {"tick", core_.tick()},
                           {"paused", core_.paused()},
                           {"connected_clients", live}});
                next_heartbeat += options_.heartbeat_interval;
                if (next_heartbeat <= now) next_heartbeat = now + options_.heartbeat_interval;
            }
        }

        next_tick += period;
        const auto now = clock::now();
        if (now - next_tick > std::chrono::seconds(1)) next_tick = now;
        std::unique_lock lock(wake_mutex_);
        wake_.wait_until(lock, next_tick, [this] { return !running_; });
    }
}

}  // namespace bubblebuoy
