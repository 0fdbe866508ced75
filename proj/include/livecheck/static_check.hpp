#pragma once

#include <vector>

#include "livecheck/ast.hpp"
#include "livecheck/diagnostic.hpp"
#include "livecheck/error.hpp"

namespace livecheck {

/// Residual well-formedness checks the grammar cannot express. An empty
/// result means the program is safe to compile.
std::vector<Diagnostic> checkStatic(const ProgramAst& program);

/// Wraps a lexer or parser failure as a StaticError diagnostic.
Diagnostic staticErrorFrom(const SourceError& error);

}  // namespace livecheck
