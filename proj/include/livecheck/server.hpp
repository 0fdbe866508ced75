#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>

namespace livecheck {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::optional<std::string> assetsDir;  // overrides the embedded fallback page
    std::size_t bound = 4;
    std::size_t configCap = 1'000'000;
    std::chrono::milliseconds requestTimeLimit{10'000};
};

struct HttpReply {
    int status = 200;
    std::string contentType;
    std::string body;
};

/// POST /api/check. Body: {"files":[{"name","text"}], "focus"?, "bound"?, "timings"?}.
/// Malformed requests get 400; language-level errors are 200 with StaticError diagnostics.
HttpReply handleCheck(const std::string& body, const ServerOptions& options);

/// GET /api/version.
HttpReply versionReply();

/// GET /<asset>. nullopt means 404.
std::optional<HttpReply> serveAsset(const std::string& path, const ServerOptions& options);

/// Loopback HTTP service around the handlers above.
class LiveServer {
public:
    explicit LiveServer(ServerOptions options);
    ~LiveServer();
    LiveServer(const LiveServer&) = delete;
    LiveServer& operator=(const LiveServer&) = delete;

    /// Binds the configured port (0 picks a free one). False if unavailable.
    bool bind();
    int port() const { return port_; }
    /// Serves until stop() is called. Requires a successful bind().
    void listen();
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
    ServerOptions options_;
    int port_ = 0;
};

}  // namespace livecheck
