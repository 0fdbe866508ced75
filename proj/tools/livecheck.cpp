#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <map>
#include <stop_token>

#include "CLI11.hpp"
#include "livecheck/cli.hpp"

namespace {

std::stop_source gStop;

extern "C" void onSignal(int) { gStop.request_stop(); }

}  // namespace

int main(int argc, char** argv) {
    using namespace livecheck;

    CLI::App app{"Static checker for communicating-object systems"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string focus;
    std::string assets;

    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::Text}, {"json", OutputFormat::Json}};
    const std::map<std::string, ColorMode> colors{
        {"auto", ColorMode::Auto}, {"always", ColorMode::Always}, {"never", ColorMode::Never}};

    auto addCommon = [&](CLI::App* cmd, bool needFiles) {
        auto* files = cmd->add_option("files", cfg.files, "Source files");
        if (needFiles) files->required();
        cmd->add_option("--focus", focus, "Check only this system");
        cmd->add_option("--bound", cfg.bound, "Queue bound per channel (default $LIVECHECK_BOUND or 4)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--config-cap", cfg.configCap, "Maximum configurations explored per system")
            ->check(CLI::PositiveNumber);
    };

    auto* check = app.add_subcommand("check", "Check files once");
    auto* watch = app.add_subcommand("watch", "Re-check whenever a file changes");
    auto* serve = app.add_subcommand("serve", "Run the live check server");
    for (auto* cmd : {check, watch}) {
        addCommon(cmd, true);
        cmd->add_option("--format", cfg.format, "Output format")->transform(CLI::CheckedTransformer(formats));
        cmd->add_option("--color", cfg.color, "Colored output")->transform(CLI::CheckedTransformer(colors));
        cmd->add_flag("--timings", cfg.timings, "Report measured elapsed time");
    }
    addCommon(serve, false);
    serve->add_option("--port", cfg.port, "TCP port on 127.0.0.1")->check(CLI::Range(0, 65535));
    serve->add_option("--assets", assets, "Directory holding the UI bundle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    // CLI11 skips malformed environment values silently; reject them instead.
    if (const char* env = std::getenv("LIVECHECK_BOUND"); env && app.get_subcommands().front()->count("--bound") == 0) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (*env == '\0' || *end != '\0' || v < 1) {
            std::cerr << "livecheck: LIVECHECK_BOUND must be a positive integer\n";
            return 2;
        }
        cfg.bound = static_cast<std::size_t>(v);
    }
    if (cfg.bound < 1 || cfg.configCap < 1) {
        std::cerr << "livecheck: --bound and --config-cap must be positive\n";
        return 2;
    }
    if (!focus.empty()) cfg.focus = focus;
    if (!assets.empty()) cfg.assetsDir = assets;
    if (cfg.color == ColorMode::Auto) cfg.color = isatty(fileno(stdout)) ? ColorMode::Always : ColorMode::Never;

    std::signal(SIGINT, onSignal);
    std::signal(SIGTERM, onSignal);

    if (check->parsed()) return runCheck(cfg, std::cout, std::cerr);
    if (watch->parsed())
        return runWatch(cfg, [](const std::string& text) { std::cout << text << std::flush; }, gStop.get_token());
    return runServe(cfg, std::cout, std::cerr, gStop.get_token());
}
