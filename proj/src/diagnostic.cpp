#include "livecheck/diagnostic.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

namespace livecheck {

namespace {

constexpr std::array<std::pair<DiagKind, std::string_view>, 10> kKindNames{{
    {DiagKind::StaticError, "StaticError"},
    {DiagKind::UnspecifiedReception, "UnspecifiedReception"},
    {DiagKind::Deadlock, "Deadlock"},
    {DiagKind::OrphanMessage, "OrphanMessage"},
    {DiagKind::BoundExceeded, "BoundExceeded"},
    {DiagKind::UnpermittedSend, "UnpermittedSend"},
    {DiagKind::MissingReceive, "MissingReceive"},
    {DiagKind::ExtraRequirement, "ExtraRequirement"},
    {DiagKind::DirectionMismatch, "DirectionMismatch"},
    {DiagKind::PeerMismatch, "PeerMismatch"},
}};

class Fnv1a {
public:
    void add(std::string_view s) {
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
        // field separator so ("ab","c") and ("a","bc") differ
        hash_ ^= 0xFF;
        hash_ *= 0x100000001b3ULL;
    }
    void add(const Span& s) {
        add(s.file);
        add(fmt::format("{}:{}-{}:{}", s.startLine, s.startCol, s.endLine, s.endCol));
    }
    std::uint64_t value() const { return hash_; }

private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

std::vector<Span> sortedComplements(const Diagnostic& d) {
    auto c = d.complements;
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

}  // namespace

std::string_view kindName(DiagKind kind) {
    for (const auto& [k, name] : kKindNames)
        if (k == kind) return name;
    return "Unknown";
}

std::optional<DiagKind> kindFromName(std::string_view name) {
    for (const auto& [k, n] : kKindNames)
        if (n == name) return k;
    return std::nullopt;
}

std::string_view polarityName(Polarity polarity) {
    switch (polarity) {
        case Polarity::Red: return "red";
        case Polarity::Blue: return "blue";
        case Polarity::Warning: return "warning";
    }
    return "red";
}

std::optional<Polarity> polarityFromName(std::string_view name) {
    if (name == "red") return Polarity::Red;
    if (name == "blue") return Polarity::Blue;
    if (name == "warning") return Polarity::Warning;
    return std::nullopt;
}

bool sameReported(const Diagnostic& a, const Diagnostic& b) {
    return std::tie(a.id, a.kind, a.polarity, a.span, a.message, a.system, a.trace, a.related, a.notes) ==
           std::tie(b.id, b.kind, b.polarity, b.span, b.message, b.system, b.trace, b.related, b.notes);
}

std::string stableId(const Diagnostic& d) {
    Fnv1a h;
    h.add(d.system);
    h.add(kindName(d.kind));
    h.add(polarityName(d.polarity));
    h.add(d.span);
    for (const auto& c : sortedComplements(d)) h.add(c);
    return fmt::format("d{:016x}", h.value());
}

void pairComplementary(std::vector<Diagnostic>& diags) {
    for (auto& d : diags) d.related.clear();
    for (std::size_t i = 0; i < diags.size(); ++i) {
        for (std::size_t j = i + 1; j < diags.size(); ++j) {
            auto& a = diags[i];
            auto& b = diags[j];
            if (a.kind != b.kind || a.system != b.system || a.polarity == b.polarity) continue;
            auto has = [](const std::vector<Span>& v, const Span& s) { return std::find(v.begin(), v.end(), s) != v.end(); };
            if (has(a.complements, b.span) && has(b.complements, a.span)) {
                a.related.push_back(b.id);
                b.related.push_back(a.id);
            }
        }
    }
    for (auto& d : diags) std::sort(d.related.begin(), d.related.end());
}

void sortDiagnostics(std::vector<Diagnostic>& diags) {
    std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
        if (a.span != b.span) return positionLess(a.span, b.span);
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.polarity != b.polarity) return a.polarity < b.polarity;
        if (a.system != b.system) return a.system < b.system;
        if (a.message != b.message) return a.message < b.message;
        return a.id < b.id;
    });
}

void deduplicate(std::vector<Diagnostic>& diags) {
    using Key = std::tuple<std::string, DiagKind, Polarity, Span, std::vector<Span>>;
    std::set<Key> seen;
    std::vector<Diagnostic> kept;
    kept.reserve(diags.size());
    for (auto& d : diags) {
        Key key{d.system, d.kind, d.polarity, d.span, sortedComplements(d)};
        if (seen.insert(std::move(key)).second) kept.push_back(std::move(d));
    }
    diags = std::move(kept);
}

void finalize(std::vector<Diagnostic>& diags) {
    deduplicate(diags);
    for (auto& d : diags) d.id = stableId(d);
    pairComplementary(diags);
    sortDiagnostics(diags);
}

}  // namespace livecheck
