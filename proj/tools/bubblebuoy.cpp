// bubblebuoy: headless runs, gain tuning and the live session server.

#include <chrono>
#include <csignal>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "bubblebuoy/commands_io.hpp"
#include "bubblebuoy/gateway_server.hpp"
#include "bubblebuoy/metrics.hpp"
#include "bubblebuoy/scenario_io.hpp"
#include "bubblebuoy/simulation.hpp"
#include "bubblebuoy/telemetry_io.hpp"
#include "bubblebuoy/tuner.hpp"
#include "bubblebuoy/tuner_io.hpp"

namespace fs = std::filesystem;
using namespace bubblebuoy;

namespace {

enum Exit : int {
    kOk = 0,
    kUsage = 1,
    kFileMissing = 2,
    kInvalidInput = 3,
    kWriteFailed = 4,
    kServeFailed = 5,
};

struct WriteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

volatile std::sig_atomic_t g_stop = 0;

void on_signal(int) { g_stop = 1; }

template <typename Fn>
void write_file(const fs::path& path, Fn&& fill) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot open " + path.string() + " for writing");
    fill(out);
    out.flush();
    if (!out) throw WriteError("failed writing " + path.string());
}

fs::path sidecar_path(fs::path out) { return out.replace_extension(".metrics.json"); }

int cmd_run(const fs::path& scenario_path, const fs::path& out_path, std::optional<std::uint64_t> seed,
            const std::optional<fs::path>& script_path, bool verbose) {
    Scenario scenario = load_scenario(scenario_path);
    if (seed) scenario.sensor.seed = *seed;
    RunOptions options;
    options.verbose = verbose;
    if (script_path) options.script = load_script(*script_path);

    const RunResult run = run_scenario(scenario, options);
    const std::vector<ResponseMetrics> metrics = segment_metrics(run);

    write_file(out_path, [&](std::ostream& o) { write_telemetry_csv(o, run.telemetry); });
    write_file(sidecar_path(out_path), [&](std::ostream& o) { o << run_summary_json(scenario, run, metrics).dump(2) << '\n'; });
    std::cerr << "wrote " << run.telemetry.size() << " records to " << out_path.string() << '\n';
    return kOk;
}

int cmd_tune(const fs::path& spec_path, const fs::path& out_path, std::optional<std::uint64_t> seed,
             const std::optional<fs::path>& trace_path, unsigned threads) {
    TuneSpec spec = load_tunespec(spec_path);
    if (seed) spec.seed = *seed;
    const TuneResult result = tune(spec, threads);
    write_file(out_path, [&](std::ostream& o) { o << tune_result_to_json(result).dump(2) << '\n'; });
    if (trace_path) write_file(*trace_path, [&](std::ostream& o) { write_trace_csv(o, result); });
    std::cerr << "best gains kp=" << result.best_gains.kp << " ki=" << result.best_gains.ki
              << " kd=" << result.best_gains.kd << " cost=" << result.best_cost << " after " << result.trace.size()
              << " evaluations" << (result.truncated ? " (truncated)" : "") << '\n';
    return kOk;
}

int cmd_serve(const fs::path& scenario_path, const std::string& host, int port, double pacing,
              std::optional<std::uint64_t> seed) {
    Scenario scenario = load_scenario(scenario_path);
    if (seed) scenario.sensor.seed = *seed;
    if (!(pacing > 0.0)) throw ValidationError({"pacing: must be positive"});

    GatewayServer server(std::move(scenario), {host, port, pacing, std::chrono::milliseconds(2000)});
    try {
        server.start();
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kServeFailed;
    }
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on " << host << ':' << server.port() << std::endl;
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
    server.stop();
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Buoyancy-controlled underwater robot simulator"};
    app.require_subcommand(1);

    std::string scenario_path, out_path, spec_path, host = "127.0.0.1";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> script_path, trace_path;
    bool verbose = false;
    int port = 8765;
    double pacing = 1.0;
    unsigned threads = 0;

    auto* run = app.add_subcommand("run", "Run a scenario headless and write telemetry CSV plus a metrics sidecar");
    run->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    run->add_option("--out", out_path, "Telemetry CSV path; metrics go to <out>.metrics.json")->required();
    run->add_option("--seed", seed, "Override the sensor noise seed");
    run->add_option("--script", script_path, "Timed command script JSON");
    run->add_flag("--verbose-telemetry", verbose, "Emit a record every physics step");

    auto* tune_cmd = app.add_subcommand("tune", "Tune PID gains for a scenario");
    tune_cmd->add_option("--spec,--tunespec", spec_path, "TuneSpec JSON")->required();
    tune_cmd->add_option("--out", out_path, "Result JSON path")->required();
    tune_cmd->add_option("--seed", seed, "Override the TuneSpec seed");
    tune_cmd->add_option("--trace", trace_path, "Also write the evaluation trace as CSV");
    tune_cmd->add_option("--threads", threads, "Grid-phase worker threads (0 = hardware count)");

    auto* serve = app.add_subcommand("serve", "Serve a live session over newline-delimited JSON/TCP");
    serve->add_option("--scenario", scenario_path, "Scenario JSON")->required();
    serve->add_option("--port", port, "TCP port, 0 for any free port")->check(CLI::Range(0, 65535));
    serve->add_option("--host", host, "IPv4 address to bind");
    serve->add_option("--pacing", pacing, "Simulated seconds per wall-clock second");
    serve->add_option("--seed", seed, "Override the sensor noise seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*run) {
            return cmd_run(scenario_path, out_path, seed,
                           script_path ? std::optional<fs::path>(*script_path) : std::nullopt, verbose);
        }
        if (*tune_cmd) {
            return cmd_tune(spec_path, out_path, seed,
                            trace_path ? std::optional<fs::path>(*trace_path) : std::nullopt, threads);
        }
        return cmd_serve(scenario_path, host, port, pacing, seed);
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFileMissing;
    } catch (const ValidationError& e) {
        std::cerr << "error: invalid input\n";
        for (const auto& p : e.problems()) std::cerr << "  " << p << '\n';
        return kInvalidInput;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    } catch (const WriteError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kWriteFailed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInvalidInput;
    }
}
