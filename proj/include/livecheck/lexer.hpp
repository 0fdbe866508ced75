#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "livecheck/span.hpp"

namespace livecheck {

enum class TokenKind {
    KwSystem,
    KwObj,
    KwUsing,
    KwBehaviour,
    Ident,
    String,
    Colon,
    Question,
    Bang,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Dot,
    End,
};

std::string_view describe(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string text;  // identifier name or unescaped string contents
    Span span;

    friend bool operator==(const Token&, const Token&) = default;
};

/// Splits `source` into tokens. The result always ends with an End token.
/// Throws LexError on an illegal character or an unterminated string.
std::vector<Token> tokenize(std::string_view source, const std::string& fileName = "<input>");

}  // namespace livecheck
