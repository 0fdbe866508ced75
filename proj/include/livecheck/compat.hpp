#pragma once

#include <string>
#include <vector>

#include "livecheck/automata.hpp"
#include "livecheck/diagnostic.hpp"
#include "livecheck/explorer.hpp"

namespace livecheck {

struct CompatReport {
    std::string systemName;
    std::vector<Diagnostic> diagnostics;
    ReportStats stats;
};

/// Explores `sys` and turns every bad configuration into diagnostics,
/// each carrying the shortest trace to the first configuration that
/// exhibits it. Propagates StateSpaceOverflow.
CompatReport checkCompatibility(const SystemModel& sys, const ExploreOptions& options = {});

/// The diagnostics of an already explored graph, finalized.
std::vector<Diagnostic> diagnosticsFromGraph(const ReachGraph& graph, const std::string& systemName);

}  // namespace livecheck
