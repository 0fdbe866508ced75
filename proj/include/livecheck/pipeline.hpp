#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "livecheck/diagnostic.hpp"
#include "livecheck/explorer.hpp"
#include "livecheck/parser.hpp"

namespace livecheck {

struct CheckOptions {
    std::optional<std::string> focus;
    ExploreOptions explore;
    bool timings = false;  // report measured elapsedMs instead of 0
};

struct CheckOutcome {
    std::vector<Diagnostic> diagnostics;
    ReportStats stats;
    bool frontEndFailed = false;          // lex, parse or static errors
    std::vector<std::string> usageErrors;  // problems with the request itself, e.g. an unknown focus
};

/// Parses all files into one namespace and checks each system (or only the
/// focused one): compatibility always, compliance when it declares `: <abstract>`.
/// Exploration overflow becomes a BoundExceeded warning on the system name.
/// Propagates ExplorationCancelled.
CheckOutcome runChecks(std::span<const SourceFile> files, const CheckOptions& options);

/// Exit status for a finished check: 0 clean, 1 diagnostics, 2 front-end or usage failure.
int exitCodeFor(const CheckOutcome& outcome);

}  // namespace livecheck
