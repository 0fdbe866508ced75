#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "livecheck/ast.hpp"
#include "livecheck/span.hpp"

namespace livecheck {

using StateId = std::uint32_t;

struct CfsmBranch {
    std::string label;
    int arity = 0;
    std::optional<std::string> payload;  // value text on sends, binder name on receives
    Span span;                           // the label token
    StateId target = 0;

    friend bool operator==(const CfsmBranch&, const CfsmBranch&) = default;
};

/// The single (peer, direction) choice offered by a non-terminal state.
struct CfsmAction {
    std::string peer;
    Direction dir = Direction::Send;
    std::vector<CfsmBranch> branches;

    const CfsmBranch* find(const std::string& label, int arity) const {
        for (const auto& b : branches)
            if (b.label == label && b.arity == arity) return &b;
        return nullptr;
    }

    friend bool operator==(const CfsmAction&, const CfsmAction&) = default;
};

/// One object as a communicating finite-state machine. States are dense
/// ids 0..n-1 numbered breadth-first from the initial state.
struct Cfsm {
    std::string name;
    Span nameSpan;
    StateId initial = 0;
    std::vector<std::optional<CfsmAction>> actions;  // nullopt marks a terminal state
    std::vector<Span> stateSpan;                     // peer name, or the `.` of a terminal

    std::size_t stateCount() const { return actions.size(); }
    bool isTerminal(StateId s) const { return !actions.at(s).has_value(); }
    const CfsmAction& action(StateId s) const { return *actions.at(s); }
    std::set<std::string> peers() const;

    friend bool operator==(const Cfsm&, const Cfsm&) = default;
};

/// Compiles an object body. `behaviour` definitions alias the state of
/// their body rather than introducing a state of their own. Throws
/// PreconditionViolation if the object would not pass checkStatic.
Cfsm compileObject(const ObjectDecl& obj);

/// Swaps sends and receives; everything else is unchanged.
Cfsm dualize(const Cfsm& m);

/// Renames the machine and rewrites peer references through `peerRenames`.
Cfsm retarget(const Cfsm& m, std::string newName, const std::map<std::string, std::string>& peerRenames);

/// Invariant violations of `m`; empty when well-formed.
std::vector<std::string> validate(const Cfsm& m);

/// Deterministic listing: a header, then `state peer dir label/arity -> target`
/// per transition and `state .` per terminal state.
std::string exportText(const Cfsm& m);

/// A named composition of objects plus the peers it leaves undefined.
struct SystemModel {
    std::string name;
    Span nameSpan;
    std::map<std::string, Cfsm> cfsms;
    std::set<std::string> environmentPeers;  // undefined, maximally permissive
    std::set<std::string> absentPeers;       // undefined, never interact
    std::optional<std::string> refines;
};

/// Compiles `decl` plus the local objects of each system it uses.
/// Throws NameClash when an import collides with another object.
SystemModel buildSystem(const SystemDecl& decl, const ProgramAst& program);

/// Composes already-compiled machines. Peers neither defined nor listed in
/// `absent` become environment peers.
SystemModel composeSystem(std::string name, std::vector<Cfsm> machines, std::set<std::string> absent = {});

std::vector<std::string> validate(const SystemModel& sys);

}  // namespace livecheck
