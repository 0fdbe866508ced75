#pragma once

#include <compare>
#include <string>

namespace livecheck {

/// A source range. Lines and columns are 1-based; the end column is exclusive.
struct Span {
    std::string file;
    int startLine = 1;
    int startCol = 1;
    int endLine = 1;
    int endCol = 1;

    friend auto operator<=>(const Span&, const Span&) = default;
    friend bool operator==(const Span&, const Span&) = default;

    /// Spans covering [first.start, last.end) of the same file.
    static Span cover(const Span& first, const Span& last) {
        return Span{first.file, first.startLine, first.startCol, last.endLine, last.endCol};
    }

    bool contains(const Span& inner) const {
        if (inner.file != file) return false;
        auto before = [](int l1, int c1, int l2, int c2) { return l1 < l2 || (l1 == l2 && c1 <= c2); };
        return before(startLine, startCol, inner.startLine, inner.startCol) &&
               before(inner.endLine, inner.endCol, endLine, endCol);
    }
};

/// Position-major ordering used for reports: line, column, then file.
inline bool positionLess(const Span& a, const Span& b) {
    if (a.startLine != b.startLine) return a.startLine < b.startLine;
    if (a.startCol != b.startCol) return a.startCol < b.startCol;
    if (a.file != b.file) return a.file < b.file;
    if (a.endLine != b.endLine) return a.endLine < b.endLine;
    return a.endCol < b.endCol;
}

std::string toString(const Span& span);

}  // namespace livecheck
