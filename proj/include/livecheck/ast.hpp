#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "livecheck/span.hpp"

namespace livecheck {

enum class Direction { Send, Receive };

inline Direction flip(Direction d) { return d == Direction::Send ? Direction::Receive : Direction::Send; }
inline char symbol(Direction d) { return d == Direction::Send ? '!' : '?'; }

struct Ident {
    std::string text;
    Span span;
};

struct Payload {
    enum class Kind { Prototype, StringLiteral };
    Kind kind;
    std::string text;
    Span span;
};

/// A message pattern: `label` or `label(payload)`. On receives the payload
/// identifier is a binder; on sends it is a value.
struct Msg {
    Ident label;
    std::optional<Payload> payload;
    Span span;
};

struct Process;
using ProcessPtr = std::unique_ptr<Process>;

struct Prefix {
    Ident peer;
    Direction dir;
    Msg msg;
    ProcessPtr cont;
};

struct Branch {
    Msg msg;
    ProcessPtr cont;
};

struct Choice {
    Ident peer;
    Direction dir;
    std::vector<Branch> branches;
};

/// `behaviour name body cont`: names the state `body`, then behaves as `cont`.
struct BehaviourDef {
    Ident name;
    ProcessPtr body;
    ProcessPtr cont;
};

struct BehaviourRef {
    Ident name;
};

struct Terminal {};

struct Process {
    std::variant<Prefix, Choice, BehaviourDef, BehaviourRef, Terminal> node;
    Span span;
};

struct ObjectDecl {
    Ident name;
    ProcessPtr body;
};

struct SystemDecl {
    Ident name;
    std::optional<Ident> refines;
    std::vector<Ident> uses;
    std::vector<ObjectDecl> objects;
    Span span;
};

struct ProgramAst {
    std::vector<SystemDecl> systems;

    const SystemDecl* findSystem(const std::string& name) const {
        for (const auto& s : systems)
            if (s.name.text == name) return &s;
        return nullptr;
    }
};

}  // namespace livecheck
