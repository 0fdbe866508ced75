#pragma once

#include <span>
#include <string>
#include <string_view>

#include "livecheck/ast.hpp"

namespace livecheck {

struct SourceFile {
    std::string name;
    std::string text;
};

/// Parses one source text. Throws LexError or ParseError.
ProgramAst parse(std::string_view source, const std::string& fileName = "<input>");

/// Parses several files into one program namespace, in the order given.
ProgramAst parseFiles(std::span<const SourceFile> files);

}  // namespace livecheck
