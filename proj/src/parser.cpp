#include "livecheck/parser.hpp"

#include <fmt/format.h>

#include <initializer_list>

#include "livecheck/error.hpp"
#include "livecheck/lexer.hpp"

namespace livecheck {

namespace {

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    ProgramAst program() {
        ProgramAst prog;
        do {
            prog.systems.push_back(system());
        } while (!at(TokenKind::End));
        return prog;
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& lookahead(std::size_t n) const { return toks_[std::min(pos_ + n, toks_.size() - 1)]; }
    bool at(TokenKind k) const { return cur().kind == k; }
    const Token& previous() const { return toks_[pos_ - 1]; }

    const Token& bump() { return toks_[pos_++]; }

    [[noreturn]] void fail(std::initializer_list<TokenKind> expected) const {
        std::vector<std::string> names;
        std::string list;
        for (auto k : expected) {
            names.emplace_back(describe(k));
            if (!list.empty()) list += ", ";
            list += describe(k);
        }
        std::string found = at(TokenKind::End) ? "end of input" : fmt::format("'{}'", cur().text);
        std::string msg = expected.size() == 1 ? fmt::format("expected {}, found {}", list, found)
                                               : fmt::format("expected one of {}, found {}", list, found);
        throw ParseError(msg, cur().span, std::move(names));
    }

    const Token& expect(TokenKind k) {
        if (!at(k)) fail({k});
        return bump();
    }

    Ident ident() {
        const Token& t = expect(TokenKind::Ident);
        return Ident{t.text, t.span};
    }

    SystemDecl system() {
        const Token& kw = expect(TokenKind::KwSystem);
        SystemDecl decl;
        decl.name = ident();
        if (at(TokenKind::Colon)) {
            bump();
            decl.refines = ident();
        }
        while (at(TokenKind::KwUsing)) {
            bump();
            decl.uses.push_back(ident());
        }
        while (at(TokenKind::KwObj)) decl.objects.push_back(object());
        if (!at(TokenKind::KwSystem) && !at(TokenKind::End)) {
            if (decl.objects.empty() && decl.uses.empty() && !decl.refines)
                fail({TokenKind::Colon, TokenKind::KwUsing, TokenKind::KwObj, TokenKind::KwSystem, TokenKind::End});
            fail({TokenKind::KwObj, TokenKind::KwSystem, TokenKind::End});
        }
        decl.span = Span::cover(kw.span, previous().span);
        return decl;
    }

    ObjectDecl object() {
        expect(TokenKind::KwObj);
        ObjectDecl obj;
        obj.name = ident();
        obj.body = process();
        return obj;
    }

    ProcessPtr process() {
        const Token& first = cur();
        auto node = std::make_unique<Process>();
        if (at(TokenKind::Dot)) {
            bump();
            node->node = Terminal{};
        } else if (at(TokenKind::KwBehaviour)) {
            bump();
            BehaviourDef def;
            def.name = ident();
            def.body = process();
            def.cont = process();
            node->node = std::move(def);
        } else if (at(TokenKind::Ident)) {
            TokenKind after = lookahead(1).kind;
            if (after == TokenKind::Question || after == TokenKind::Bang) {
                Ident peer = ident();
                Direction dir = bump().kind == TokenKind::Bang ? Direction::Send : Direction::Receive;
                if (at(TokenKind::LBrace)) {
                    bump();
                    Choice choice{std::move(peer), dir, {}};
                    for (;;) {
                        Msg m = msg();
                        ProcessPtr cont = process();
                        choice.branches.push_back(Branch{std::move(m), std::move(cont)});
                        if (at(TokenKind::RBrace)) break;
                        if (!at(TokenKind::Ident)) fail({TokenKind::Ident, TokenKind::RBrace});
                    }
                    bump();
                    node->node = std::move(choice);
                } else if (at(TokenKind::Ident)) {
                    Msg m = msg();
                    ProcessPtr cont = process();
                    node->node = Prefix{std::move(peer), dir, std::move(m), std::move(cont)};
                } else {
                    fail({TokenKind::Ident, TokenKind::LBrace});
                }
            } else {
                node->node = BehaviourRef{ident()};
            }
        } else {
            fail({TokenKind::Ident, TokenKind::KwBehaviour, TokenKind::Dot});
        }
        node->span = Span::cover(first.span, previous().span);
        return node;
    }

    Msg msg() {
        Msg m;
        m.label = ident();
        if (at(TokenKind::LParen)) {
            bump();
            if (at(TokenKind::Ident)) {
                const Token& t = bump();
                m.payload = Payload{Payload::Kind::Prototype, t.text, t.span};
            } else if (at(TokenKind::String)) {
                const Token& t = bump();
                m.payload = Payload{Payload::Kind::StringLiteral, t.text, t.span};
            } else {
                fail({TokenKind::Ident, TokenKind::String});
            }
            expect(TokenKind::RParen);
        }
        m.span = Span::cover(m.label.span, previous().span);
        return m;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

ProgramAst parse(std::string_view source, const std::string& fileName) {
    return Parser(tokenize(source, fileName)).program();
}

ProgramAst parseFiles(std::span<const SourceFile> files) {
    ProgramAst all;
    for (const auto& f : files) {
        ProgramAst one = parse(f.text, f.name);
        for (auto& s : one.systems) all.systems.push_back(std::move(s));
    }
    return all;
}

}  // namespace livecheck
