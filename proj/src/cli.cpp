#include "livecheck/cli.hpp"

#include <fmt/chrono.h>
#include <fmt/format.h>

#include <condition_variable>
#include <ctime>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "livecheck/error.hpp"
#include "livecheck/pipeline.hpp"
#include "livecheck/render.hpp"
#include "livecheck/server.hpp"

namespace livecheck {

namespace {

std::optional<std::string> readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

using Snapshot = std::vector<std::optional<std::string>>;

Snapshot snapshot(const std::vector<std::string>& paths) {
    Snapshot snap;
    for (const auto& p : paths) snap.push_back(readFile(p));
    return snap;
}

CheckOptions checkOptionsFor(const CliConfig& cfg, std::stop_token stop = {}) {
    CheckOptions o;
    o.focus = cfg.focus;
    o.explore.bound = cfg.bound;
    o.explore.configCap = cfg.configCap;
    o.explore.stop = std::move(stop);
    o.timings = cfg.timings;
    return o;
}

struct RunOutput {
    std::string out;
    std::string err;
    int code = 0;
};

RunOutput checkSnapshot(const CliConfig& cfg, const Snapshot& snap, std::stop_token stop = {}) {
    RunOutput r;
    if (cfg.files.empty()) {
        r.err = "livecheck: no input files\n";
        r.code = 2;
        return r;
    }
    std::vector<SourceFile> files;
    for (std::size_t i = 0; i < cfg.files.size(); ++i) {
        if (!snap[i]) {
            r.err += fmt::format("livecheck: cannot read {}\n", cfg.files[i]);
            r.code = 2;
        } else {
            files.push_back(SourceFile{cfg.files[i], *snap[i]});
        }
    }
    if (r.code) return r;

    CheckOutcome outcome = runChecks(files, checkOptionsFor(cfg, std::move(stop)));
    if (!outcome.usageErrors.empty()) {
        for (const auto& e : outcome.usageErrors) r.err += fmt::format("livecheck: {}\n", e);
        r.code = 2;
        return r;
    }
    if (cfg.format == OutputFormat::Json) {
        r.out = renderJson(outcome.diagnostics, outcome.stats, 2) + "\n";
    } else {
        TextOptions text;
        text.color = cfg.color == ColorMode::Always;
        text.configurations = outcome.stats.configurations;
        r.out = renderText(outcome.diagnostics, files, text);
        if (!outcome.frontEndFailed && !outcome.diagnostics.empty())
            r.out += fmt::format("{} diagnostic{} ({} configurations explored)\n", outcome.diagnostics.size(),
                                 outcome.diagnostics.size() == 1 ? "" : "s", outcome.stats.configurations);
    }
    if (outcome.frontEndFailed)
        r.err += fmt::format("livecheck: {} static error{}\n", outcome.diagnostics.size(),
                             outcome.diagnostics.size() == 1 ? "" : "s");
    r.code = exitCodeFor(outcome);
    return r;
}

std::string timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm local{};
    localtime_r(&now, &local);
    return fmt::format("{:%Y-%m-%d %H:%M:%S}", local);
}

// A check running on its own thread; cancelled through its stop token.
class BackgroundRun {
public:
    BackgroundRun(const CliConfig& cfg, Snapshot snap)
        : thread_([this, &cfg, snap = std::move(snap)](std::stop_token stop) {
              RunOutput r;
              try {
                  r = checkSnapshot(cfg, snap, stop);
              } catch (const ExplorationCancelled&) {
                  return;
              }
              std::lock_guard lock(mutex_);
              result_ = std::move(r);
              cv_.notify_all();
          }) {}

    ~BackgroundRun() {
        thread_.request_stop();
        thread_.join();
    }

    /// Waits up to `timeout` for the result.
    std::optional<RunOutput> wait(std::stop_token outer, std::chrono::milliseconds timeout) {
        std::unique_lock lock(mutex_);
        cv_.wait_for(lock, outer, timeout, [&] { return result_.has_value(); });
        return result_;
    }

private:
    std::mutex mutex_;
    std::condition_variable_any cv_;
    std::optional<RunOutput> result_;
    std::jthread thread_;  // last: starts after the members it uses exist
};

}  // namespace

int runCheck(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
    RunOutput r = checkSnapshot(cfg, snapshot(cfg.files));
    out << r.out;
    err << r.err;
    out.flush();
    return r.code;
}

int runWatch(const CliConfig& cfg, const OutputSink& out, std::stop_token stop, std::chrono::milliseconds interval) {
    int lastCode = 0;
    int runs = 0;
    Snapshot current = snapshot(cfg.files);
    auto job = std::make_unique<BackgroundRun>(cfg, current);

    while (!stop.stop_requested()) {
        if (job) {
            if (auto r = job->wait(stop, interval)) {
                ++runs;
                out(fmt::format("=== run {} at {} ===\n{}{}", runs, timestamp(), r->out, r->err));
                lastCode = r->code;
                job.reset();
            }
        } else {
            std::mutex m;
            std::unique_lock lock(m);
            std::condition_variable_any idle;
            idle.wait_for(lock, stop, interval, [] { return false; });
        }
        if (stop.stop_requested()) break;
        Snapshot now = snapshot(cfg.files);
        if (now != current) {
            // latest edit wins: drop any run still working on the old content
            current = std::move(now);
            job.reset();
            job = std::make_unique<BackgroundRun>(cfg, current);
        }
    }
    return lastCode;
}

int runServe(const CliConfig& cfg, std::ostream& out, std::ostream& err, std::stop_token stop) {
    ServerOptions opts;
    opts.port = cfg.port;
    opts.bound = cfg.bound;
    opts.configCap = cfg.configCap;
    opts.assetsDir = cfg.assetsDir;
    LiveServer server(opts);
    if (!server.bind()) {
        err << fmt::format("livecheck: cannot listen on {}:{} (port in use?)\n", opts.host, opts.port);
        return 2;
    }
    out << fmt::format("serving on http://{}:{}/\n", opts.host, server.port());
    out.flush();
    std::stop_callback onStop(stop, [&server] { server.stop(); });
    if (!stop.stop_requested()) server.listen();
    return 0;
}

}  // namespace livecheck
