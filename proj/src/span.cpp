#include "livecheck/span.hpp"

#include <fmt/format.h>

namespace livecheck {

std::string toString(const Span& span) {
    return fmt::format("{}:{}:{}", span.file, span.startLine, span.startCol);
}

}  // namespace livecheck
