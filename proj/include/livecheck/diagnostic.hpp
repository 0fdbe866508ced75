#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "livecheck/ast.hpp"
#include "livecheck/span.hpp"

namespace livecheck {

enum class DiagKind {
    StaticError,
    UnspecifiedReception,
    Deadlock,
    OrphanMessage,
    BoundExceeded,
    UnpermittedSend,
    MissingReceive,
    ExtraRequirement,
    DirectionMismatch,
    PeerMismatch,
};

/// Red marks an action the other party cannot accommodate; blue marks the
/// receive side lacking the label; warnings flag exploration limits.
enum class Polarity { Red, Blue, Warning };

std::string_view kindName(DiagKind kind);
std::optional<DiagKind> kindFromName(std::string_view name);
std::string_view polarityName(Polarity polarity);
std::optional<Polarity> polarityFromName(std::string_view name);

struct TraceEvent {
    std::string actor;
    Direction action;
    std::string peer;
    std::string label;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// A secondary location attached to a diagnostic, e.g. the impl-side
/// receive choice that lacks a label the refined system accepts.
struct Note {
    Span span;
    std::string message;

    friend bool operator==(const Note&, const Note&) = default;
};

struct Diagnostic {
    std::string id;
    DiagKind kind = DiagKind::StaticError;
    Polarity polarity = Polarity::Red;
    Span span;
    std::string message;
    std::string system;
    std::vector<TraceEvent> trace;
    std::vector<std::string> related;
    std::vector<Note> notes;
    // Primary spans of the complementary marks produced by the same runtime
    // error. Not serialized; feeds ids and complementary linking.
    std::vector<Span> complements;

    const std::string& file() const { return span.file; }
};

/// Equality over the serialized fields.
bool sameReported(const Diagnostic& a, const Diagnostic& b);

struct ReportStats {
    std::size_t configurations = 0;
    std::size_t bound = 0;
    std::int64_t elapsedMs = 0;
};

/// Stable identifier: FNV-1a over (system, kind, polarity, file, span, complements).
std::string stableId(const Diagnostic& d);

/// Links each diagnostic to the complementary marks of the same error site.
/// Requires ids to be assigned. Links are symmetric.
void pairComplementary(std::vector<Diagnostic>& diags);

/// Deterministic report order: span position, file, kind, polarity, message.
void sortDiagnostics(std::vector<Diagnostic>& diags);

/// Drops duplicates that blame identical span sets; the first occurrence wins.
void deduplicate(std::vector<Diagnostic>& diags);

/// deduplicate + stable ids + pairComplementary + sortDiagnostics.
void finalize(std::vector<Diagnostic>& diags);

}  // namespace livecheck
