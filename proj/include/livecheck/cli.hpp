#pragma once

#include <chrono>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

namespace livecheck {

enum class OutputFormat { Text, Json };
enum class ColorMode { Auto, Always, Never };

struct CliConfig {
    std::vector<std::string> files;
    std::optional<std::string> focus;
    std::size_t bound = 4;
    OutputFormat format = OutputFormat::Text;
    ColorMode color = ColorMode::Auto;  // Auto is resolved by the caller; treated as Never here
    int port = 8080;
    std::size_t configCap = 1'000'000;
    std::optional<std::string> assetsDir;
    bool timings = false;
};

/// One check run over the files on disk. 0 clean, 1 diagnostics, 2 errors.
int runCheck(const CliConfig& cfg, std::ostream& out, std::ostream& err);

using OutputSink = std::function<void(const std::string&)>;

/// Checks, then re-checks whenever a watched file's content changes, until
/// `stop` is requested. A change observed mid-run cancels that run.
/// Returns the exit code of the last completed run.
int runWatch(const CliConfig& cfg, const OutputSink& out, std::stop_token stop,
             std::chrono::milliseconds interval = std::chrono::milliseconds(200));

/// Starts the live server and blocks until `stop` is requested.
/// Returns 2 when the port cannot be bound.
int runServe(const CliConfig& cfg, std::ostream& out, std::ostream& err, std::stop_token stop);

}  // namespace livecheck
