#include "livecheck/pipeline.hpp"

#include <fmt/format.h>

#include <chrono>

#include "livecheck/automata.hpp"
#include "livecheck/compat.hpp"
#include "livecheck/comply.hpp"
#include "livecheck/error.hpp"
#include "livecheck/static_check.hpp"

namespace livecheck {

namespace {

Diagnostic overflowDiagnostic(const SystemDecl& sys, const StateSpaceOverflow& e) {
    Diagnostic d;
    d.kind = DiagKind::BoundExceeded;
    d.polarity = Polarity::Warning;
    d.span = sys.name.span;
    d.system = sys.name.text;
    d.message = fmt::format("exploration of {} stopped after {} configurations: {}", sys.name.text, e.explored(), e.what());
    return d;
}

}  // namespace

CheckOutcome runChecks(std::span<const SourceFile> files, const CheckOptions& options) {
    auto start = std::chrono::steady_clock::now();
    CheckOutcome outcome;
    outcome.stats.bound = options.explore.bound;
    if (files.empty()) {
        outcome.usageErrors.push_back("no input files");
        return outcome;
    }

    ProgramAst program;
    try {
        program = parseFiles(files);
    } catch (const SourceError& e) {
        outcome.diagnostics.push_back(staticErrorFrom(e));
        outcome.frontEndFailed = true;
        return outcome;
    }
    outcome.diagnostics = checkStatic(program);
    if (!outcome.diagnostics.empty()) {
        outcome.frontEndFailed = true;
        return outcome;
    }
    if (options.focus && !program.findSystem(*options.focus)) {
        outcome.usageErrors.push_back(fmt::format("no system named '{}'", *options.focus));
        return outcome;
    }

    for (const auto& decl : program.systems) {
        if (options.focus && decl.name.text != *options.focus) continue;
        SystemModel model = buildSystem(decl, program);
        try {
            CompatReport compat = checkCompatibility(model, options.explore);
            outcome.stats.configurations += compat.stats.configurations;
            for (auto& d : compat.diagnostics) outcome.diagnostics.push_back(std::move(d));
        } catch (const StateSpaceOverflow& e) {
            outcome.stats.configurations += e.explored();
            outcome.diagnostics.push_back(overflowDiagnostic(decl, e));
        }
        if (model.refines) {
            SystemModel abstract = buildSystem(*program.findSystem(*model.refines), program);
            CompatReport comply = checkCompliance(model, abstract);
            for (auto& d : comply.diagnostics) outcome.diagnostics.push_back(std::move(d));
        }
    }
    finalize(outcome.diagnostics);
    if (options.timings)
        outcome.stats.elapsedMs =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return outcome;
}

int exitCodeFor(const CheckOutcome& outcome) {
    if (outcome.frontEndFailed || !outcome.usageErrors.empty()) return 2;
    return outcome.diagnostics.empty() ? 0 : 1;
}

}  // namespace livecheck
