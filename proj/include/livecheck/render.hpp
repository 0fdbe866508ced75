#pragma once

#include <span>
#include <string>
#include <vector>

#include "livecheck/diagnostic.hpp"
#include "livecheck/parser.hpp"

namespace livecheck {

struct TextOptions {
    bool color = false;
    std::size_t configurations = 0;  // shown in the clean-report line
};

/// Human-readable report with source excerpts and caret underlines.
/// Throws MissingSource if a diagnostic names a file not in `sources`.
std::string renderText(const std::vector<Diagnostic>& diags, std::span<const SourceFile> sources,
                       const TextOptions& options = {});

/// `via: A!m → B?m → …`
std::string traceSummary(const std::vector<TraceEvent>& trace);

/// The report as JSON with a fixed key order; `indent` < 0 means compact.
std::string renderJson(const std::vector<Diagnostic>& diags, const ReportStats& stats, int indent = -1);

struct ParsedReport {
    std::vector<Diagnostic> diagnostics;
    ReportStats stats;
};

/// Reads a report produced by renderJson. Throws Error on schema violations.
ParsedReport parseJsonReport(const std::string& text);

}  // namespace livecheck
