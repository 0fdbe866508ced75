#include "livecheck/server.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "livecheck/pipeline.hpp"
#include "livecheck/render.hpp"

namespace livecheck {

namespace {

constexpr std::string_view kVersion = "0.1.0";

// Fallback page used when no UI bundle directory is configured.
constexpr std::string_view kIndexHtml = R"html(<!doctype html>
<html>
<head>
<meta charset="utf-8">
<title>livecheck</title>
<style>
  body { font-family: sans-serif; margin: 1em; }
  textarea { width: 100%; height: 24em; font-family: monospace; }
  .red { color: #b00; } .blue { color: #00b; } .warning { color: #a60; }
</style>
</head>
<body>
<h1>livecheck</h1>
<p>Focus system: <input id="focus" placeholder="(all systems)"></p>
<textarea id="source" spellcheck="false">system pingpong
obj A B!ping B?pong .
obj B A?ping A!pong .
</textarea>
<p id="status"></p>
<ul id="diagnostics"></ul>
<script src="/app.js"></script>
</body>
</html>
)html";

constexpr std::string_view kAppJs = R"html(// Minimal client: debounce edits and post the buffer to /api/check.
(function () {
  const source = document.getElementById('source');
  const focus = document.getElementById('focus');
  const status = document.getElementById('status');
  const list = document.getElementById('diagnostics');
  let timer = null;
  let revision = 0;

  function render(report) {
    list.innerHTML = '';
    for (const d of report.diagnostics) {
      const li = document.createElement('li');
      li.className = d.polarity;
      li.textContent = d.file + ':' + d.span.startLine + ':' + d.span.startCol + ' [' + d.kind + '] ' + d.message;
      list.appendChild(li);
    }
    status.textContent = report.diagnostics.length + ' diagnostics, ' +
      report.stats.configurations + ' configurations explored';
  }

  function check() {
    const mine = ++revision;
    const body = { files: [{ name: 'main.sys', text: source.value }] };
    if (focus.value) body.focus = focus.value;
    fetch('/api/check', { method: 'POST', headers: { 'Content-Type': 'application/json' }, body: JSON.stringify(body) })
      .then(r => r.json())
      .then(report => { if (mine === revision) render(report); })
      .catch(e => { status.textContent = 'check failed: ' + e; });
  }

  function schedule() {
    clearTimeout(timer);
    timer = setTimeout(check, 250);
  }

  source.addEventListener('input', schedule);
  focus.addEventListener('input', schedule);
  check();
})();
)html";

HttpReply jsonError(int status, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = message;
    return HttpReply{status, "application/json", j.dump()};
}

std::string contentTypeFor(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    if (ext == ".html") return "text/html; charset=utf-8";
    if (ext == ".js") return "application/javascript";
    if (ext == ".css") return "text/css";
    if (ext == ".json") return "application/json";
    if (ext == ".svg") return "image/svg+xml";
    if (ext == ".map") return "application/json";
    return "application/octet-stream";
}

}  // namespace

HttpReply handleCheck(const std::string& body, const ServerOptions& options) {
    nlohmann::json req;
    try {
        req = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
        return jsonError(400, fmt::format("request body is not JSON: {}", e.what()));
    }
    if (!req.is_object()) return jsonError(400, "request body must be an object");
    if (!req.contains("files") || !req["files"].is_array() || req["files"].empty())
        return jsonError(400, "\"files\" must be a nonempty array");

    std::vector<SourceFile> files;
    std::set<std::string> names;
    for (const auto& f : req["files"]) {
        if (!f.is_object() || !f.contains("name") || !f["name"].is_string() || !f.contains("text") ||
            !f["text"].is_string())
            return jsonError(400, "each file needs string \"name\" and \"text\"");
        std::string name = f["name"].get<std::string>();
        if (!names.insert(name).second) return jsonError(400, fmt::format("duplicate file name '{}'", name));
        files.push_back(SourceFile{std::move(name), f["text"].get<std::string>()});
    }

    CheckOptions check;
    check.explore.bound = options.bound;
    check.explore.configCap = options.configCap;
    check.explore.deadline = std::chrono::steady_clock::now() + options.requestTimeLimit;
    if (req.contains("focus") && !req["focus"].is_null()) {
        if (!req["focus"].is_string()) return jsonError(400, "\"focus\" must be a string");
        check.focus = req["focus"].get<std::string>();
    }
    if (req.contains("bound") && !req["bound"].is_null()) {
        if (!req["bound"].is_number_integer() || req["bound"].get<long long>() < 1)
            return jsonError(400, "\"bound\" must be a positive integer");
        check.explore.bound = req["bound"].get<std::size_t>();
    }
    if (req.contains("timings") && req["timings"].is_boolean()) check.timings = req["timings"].get<bool>();

    CheckOutcome outcome = runChecks(files, check);
    if (!outcome.usageErrors.empty()) return jsonError(400, outcome.usageErrors.front());
    return HttpReply{200, "application/json", renderJson(outcome.diagnostics, outcome.stats)};
}

HttpReply versionReply() {
    nlohmann::ordered_json j;
    j["name"] = "livecheck";
    j["version"] = kVersion;
    return HttpReply{200, "application/json", j.dump()};
}

std::optional<HttpReply> serveAsset(const std::string& path, const ServerOptions& options) {
    std::string rel = path == "/" || path.empty() ? "index.html" : path.substr(path[0] == '/' ? 1 : 0);
    std::filesystem::path p(rel);
    for (const auto& part : p)
        if (part == "..") return std::nullopt;

    if (options.assetsDir) {
        std::filesystem::path full = std::filesystem::path(*options.assetsDir) / p;
        std::error_code ec;
        if (std::filesystem::is_regular_file(full, ec)) {
            std::ifstream in(full, std::ios::binary);
            std::ostringstream bytes;
            bytes << in.rdbuf();
            return HttpReply{200, contentTypeFor(full), bytes.str()};
        }
    }
    if (rel == "index.html") return HttpReply{200, "text/html; charset=utf-8", std::string(kIndexHtml)};
    if (rel == "app.js") return HttpReply{200, "application/javascript", std::string(kAppJs)};
    return std::nullopt;
}

struct LiveServer::Impl {
    httplib::Server server;
};

LiveServer::LiveServer(ServerOptions options) : impl_(std::make_unique<Impl>()), options_(std::move(options)) {
    auto& srv = impl_->server;
    const ServerOptions& opts = options_;
    // httplib's default also sets SO_REUSEPORT, which would let a second
    // instance share the port instead of failing.
    srv.set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
    });
    srv.Post("/api/check", [&opts](const httplib::Request& req, httplib::Response& res) {
        HttpReply r = handleCheck(req.body, opts);
        res.status = r.status;
        res.set_content(r.body, r.contentType);
    });
    srv.Get("/api/version", [](const httplib::Request&, httplib::Response& res) {
        HttpReply r = versionReply();
        res.set_content(r.body, r.contentType);
    });
    srv.Get(R"(/.*)", [&opts](const httplib::Request& req, httplib::Response& res) {
        if (auto r = serveAsset(req.path, opts)) {
            res.status = r->status;
            res.set_content(r->body, r->contentType);
        } else {
            res.status = 404;
            res.set_content("not found\n", "text/plain");
        }
    });
}

LiveServer::~LiveServer() { stop(); }

bool LiveServer::bind() {
    auto& srv = impl_->server;
    if (options_.port == 0) {
        port_ = srv.bind_to_any_port(options_.host);
        return port_ > 0;
    }
    if (!srv.bind_to_port(options_.host, options_.port)) return false;
    port_ = options_.port;
    return true;
}

void LiveServer::listen() { impl_->server.listen_after_bind(); }

void LiveServer::stop() {
    if (impl_) impl_->server.stop();
}

}  // namespace livecheck
