#include "livecheck/lexer.hpp"

#include <fmt/format.h>

#include "livecheck/error.hpp"

namespace livecheck {

std::string_view describe(TokenKind kind) {
    switch (kind) {
        case TokenKind::KwSystem: return "'system'";
        case TokenKind::KwObj: return "'obj'";
        case TokenKind::KwUsing: return "'using'";
        case TokenKind::KwBehaviour: return "'behaviour'";
        case TokenKind::Ident: return "identifier";
        case TokenKind::String: return "string literal";
        case TokenKind::Colon: return "':'";
        case TokenKind::Question: return "'?'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::LBrace: return "'{'";
        case TokenKind::RBrace: return "'}'";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Dot: return "'.'";
        case TokenKind::End: return "end of input";
    }
    return "token";
}

namespace {

bool isIdentStart(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool isIdentPart(char c) { return isIdentStart(c) || (c >= '0' && c <= '9') || c == '_' || c == '\''; }

class Lexer {
public:
    Lexer(std::string_view src, const std::string& file) : src_(src), file_(file) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skipTrivia();
            if (pos_ >= src_.size()) {
                out.push_back(Token{TokenKind::End, "", Span{file_, line_, col_, line_, col_}});
                return out;
            }
            out.push_back(next());
        }
    }

private:
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }

    void advance() {
        char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            // continuation bytes of a UTF-8 sequence share the column of their lead byte
            ++col_;
        }
    }

    void skipTrivia() {
        while (pos_ < src_.size()) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && peek(1) == '/') {
                while (pos_ < src_.size() && peek() != '\n') advance();
            } else {
                return;
            }
        }
    }

    Token next() {
        int line = line_, col = col_;
        auto finish = [&](TokenKind kind, std::string text) {
            return Token{kind, std::move(text), Span{file_, line, col, line_, col_}};
        };
        char c = peek();
        if (isIdentStart(c)) {
            std::string text;
            while (pos_ < src_.size() && isIdentPart(peek())) {
                text += peek();
                advance();
            }
            TokenKind kind = TokenKind::Ident;
            if (text == "system") kind = TokenKind::KwSystem;
            else if (text == "obj") kind = TokenKind::KwObj;
            else if (text == "using") kind = TokenKind::KwUsing;
            else if (text == "behaviour") kind = TokenKind::KwBehaviour;
            return finish(kind, std::move(text));
        }
        if (c == '"') return string(line, col);

        TokenKind kind;
        switch (c) {
            case ':': kind = TokenKind::Colon; break;
            case '?': kind = TokenKind::Question; break;
            case '!': kind = TokenKind::Bang; break;
            case '{': kind = TokenKind::LBrace; break;
            case '}': kind = TokenKind::RBrace; break;
            case '(': kind = TokenKind::LParen; break;
            case ')': kind = TokenKind::RParen; break;
            case '.': kind = TokenKind::Dot; break;
            default: {
                std::string shown = (static_cast<unsigned char>(c) < 0x20 || static_cast<unsigned char>(c) >= 0x7F)
                                        ? fmt::format("\\x{:02X}", static_cast<unsigned char>(c))
                                        : std::string(1, c);
                advance();
                throw LexError(fmt::format("illegal character '{}'", shown), Span{file_, line, col, line_, col_});
            }
        }
        advance();
        return finish(kind, std::string(1, c));
    }

    Token string(int line, int col) {
        advance();  // opening quote
        std::string text;
        for (;;) {
            if (pos_ >= src_.size() || peek() == '\n')
                throw LexError("unterminated string literal", Span{file_, line, col, line_, col_});
            char c = peek();
            if (c == '"') {
                advance();
                break;
            }
            if (c == '\\' && (peek(1) == '"' || peek(1) == '\\')) {
                advance();
                c = peek();
            }
            text += c;
            advance();
        }
        return Token{TokenKind::String, std::move(text), Span{file_, line, col, line_, col_}};
    }

    std::string_view src_;
    const std::string& file_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view source, const std::string& fileName) {
    return Lexer(source, fileName).run();
}

}  // namespace livecheck
