#include "livecheck/automata.hpp"

#include <fmt/format.h>

#include <deque>

#include "livecheck/error.hpp"

namespace livecheck {

std::set<std::string> Cfsm::peers() const {
    std::set<std::string> out;
    for (const auto& a : actions)
        if (a) out.insert(a->peer);
    return out;
}

namespace {

// Compilation goes through raw nodes: real states plus aliases standing for
// `behaviour` names. Aliases are resolved and states renumbered afterwards.
class ObjectCompiler {
public:
    explicit ObjectCompiler(const ObjectDecl& obj) : obj_(obj) {}

    Cfsm run() {
        std::uint32_t entry = compile(*obj_.body, {});
        return finish(resolve(entry));
    }

private:
    struct RawNode {
        bool alias = false;
        std::uint32_t aliasOf = kUnset;
        std::optional<CfsmAction> action;  // targets hold raw node ids
        Span span;
    };
    static constexpr std::uint32_t kUnset = 0xFFFFFFFFu;

    using Scope = std::map<std::string, std::uint32_t>;

    std::uint32_t fresh(RawNode node) {
        nodes_.push_back(std::move(node));
        return static_cast<std::uint32_t>(nodes_.size() - 1);
    }

    static CfsmBranch branchOf(const Msg& m) {
        CfsmBranch b;
        b.label = m.label.text;
        b.arity = m.payload ? 1 : 0;
        if (m.payload) b.payload = m.payload->text;
        b.span = m.label.span;
        return b;
    }

    std::uint32_t compile(const Process& p, const Scope& scope) {
        if (const auto* pre = std::get_if<Prefix>(&p.node)) {
            std::uint32_t id = fresh(RawNode{false, kUnset, CfsmAction{pre->peer.text, pre->dir, {}}, pre->peer.span});
            CfsmBranch b = branchOf(pre->msg);
            b.target = compile(*pre->cont, scope);
            nodes_[id].action->branches.push_back(std::move(b));
            return id;
        }
        if (const auto* ch = std::get_if<Choice>(&p.node)) {
            std::uint32_t id = fresh(RawNode{false, kUnset, CfsmAction{ch->peer.text, ch->dir, {}}, ch->peer.span});
            for (const auto& br : ch->branches) {
                CfsmBranch b = branchOf(br.msg);
                b.target = compile(*br.cont, scope);
                nodes_[id].action->branches.push_back(std::move(b));
            }
            return id;
        }
        if (const auto* def = std::get_if<BehaviourDef>(&p.node)) {
            std::uint32_t alias = fresh(RawNode{true, kUnset, std::nullopt, def->name.span});
            Scope inner = scope;
            inner[def->name.text] = alias;
            nodes_[alias].aliasOf = compile(*def->body, inner);
            return compile(*def->cont, inner);
        }
        if (const auto* ref = std::get_if<BehaviourRef>(&p.node)) {
            auto it = scope.find(ref->name.text);
            if (it == scope.end())
                throw PreconditionViolation(fmt::format("unresolved behaviour {} in object {}", ref->name.text, obj_.name.text));
            return it->second;
        }
        return fresh(RawNode{false, kUnset, std::nullopt, p.span});  // Terminal
    }

    std::uint32_t resolve(std::uint32_t id) const {
        std::size_t hops = 0;
        while (nodes_[id].alias) {
            id = nodes_[id].aliasOf;
            if (id == kUnset || ++hops > nodes_.size())
                throw PreconditionViolation(fmt::format("unguarded behaviour in object {}", obj_.name.text));
        }
        return id;
    }

    Cfsm finish(std::uint32_t entry) {
        Cfsm m;
        m.name = obj_.name.text;
        m.nameSpan = obj_.name.span;
        m.initial = 0;

        std::map<std::uint32_t, StateId> number;
        std::deque<std::uint32_t> work{entry};
        number[entry] = 0;
        std::vector<std::uint32_t> order{entry};
        while (!work.empty()) {
            std::uint32_t raw = work.front();
            work.pop_front();
            if (!nodes_[raw].action) continue;
            for (const auto& b : nodes_[raw].action->branches) {
                std::uint32_t t = resolve(b.target);
                if (number.emplace(t, static_cast<StateId>(order.size())).second) {
                    order.push_back(t);
                    work.push_back(t);
                }
            }
        }
        for (std::uint32_t raw : order) {
            const RawNode& n = nodes_[raw];
            std::optional<CfsmAction> action = n.action;
            if (action)
                for (auto& b : action->branches) b.target = number.at(resolve(b.target));
            m.actions.push_back(std::move(action));
            m.stateSpan.push_back(n.span);
        }
        return m;
    }

    const ObjectDecl& obj_;
    std::vector<RawNode> nodes_;
};

}  // namespace

Cfsm compileObject(const ObjectDecl& obj) { return ObjectCompiler(obj).run(); }

Cfsm dualize(const Cfsm& m) {
    Cfsm d = m;
    for (auto& a : d.actions)
        if (a) a->dir = flip(a->dir);
    return d;
}

Cfsm retarget(const Cfsm& m, std::string newName, const std::map<std::string, std::string>& peerRenames) {
    Cfsm r = m;
    r.name = std::move(newName);
    for (auto& a : r.actions) {
        if (!a) continue;
        if (auto it = peerRenames.find(a->peer); it != peerRenames.end()) a->peer = it->second;
    }
    return r;
}

std::vector<std::string> validate(const Cfsm& m) {
    std::vector<std::string> problems;
    const std::size_t n = m.stateCount();
    if (n == 0) {
        problems.push_back("no states");
        return problems;
    }
    if (m.initial >= n) problems.push_back("initial state out of range");
    if (m.stateSpan.size() != n) problems.push_back("state span table size mismatch");
    for (StateId s = 0; s < n; ++s) {
        if (!m.actions[s]) continue;
        const auto& a = *m.actions[s];
        if (a.branches.empty()) problems.push_back(fmt::format("state {} has no branches", s));
        if (a.peer == m.name) problems.push_back(fmt::format("state {} communicates with itself", s));
        std::set<std::string> labels;
        for (const auto& b : a.branches) {
            if (!labels.insert(b.label).second) problems.push_back(fmt::format("state {} repeats label {}", s, b.label));
            if (b.target >= n) problems.push_back(fmt::format("state {} branch {} targets missing state", s, b.label));
        }
    }
    std::vector<bool> seen(n, false);
    std::deque<StateId> work;
    if (m.initial < n) {
        seen[m.initial] = true;
        work.push_back(m.initial);
    }
    while (!work.empty()) {
        StateId s = work.front();
        work.pop_front();
        if (!m.actions[s]) continue;
        for (const auto& b : m.actions[s]->branches) {
            if (b.target < n && !seen[b.target]) {
                seen[b.target] = true;
                work.push_back(b.target);
            }
        }
    }
    for (StateId s = 0; s < n; ++s)
        if (!seen[s]) problems.push_back(fmt::format("state {} unreachable", s));
    return problems;
}

std::string exportText(const Cfsm& m) {
    std::string out = fmt::format("cfsm {} states={} initial={}\n", m.name, m.stateCount(), m.initial);
    for (StateId s = 0; s < m.stateCount(); ++s) {
        if (!m.actions[s]) {
            out += fmt::format("{} .\n", s);
            continue;
        }
        const auto& a = *m.actions[s];
        for (const auto& b : a.branches)
            out += fmt::format("{} {} {} {}/{} -> {}\n", s, a.peer, symbol(a.dir), b.label, b.arity, b.target);
    }
    return out;
}

SystemModel composeSystem(std::string name, std::vector<Cfsm> machines, std::set<std::string> absent) {
    SystemModel sys;
    sys.name = std::move(name);
    for (auto& m : machines) {
        std::string key = m.name;
        if (!sys.cfsms.emplace(key, std::move(m)).second)
            throw NameClash(fmt::format("object '{}' defined twice in system '{}'", key, sys.name));
    }
    for (const auto& [_, m] : sys.cfsms)
        for (const auto& p : m.peers())
            if (!sys.cfsms.count(p) && !absent.count(p)) sys.environmentPeers.insert(p);
    for (const auto& p : absent)
        if (!sys.cfsms.count(p)) sys.absentPeers.insert(p);
    return sys;
}

SystemModel buildSystem(const SystemDecl& decl, const ProgramAst& program) {
    std::vector<Cfsm> machines;
    std::map<std::string, std::string> from;
    auto add = [&](const ObjectDecl& obj, const std::string& sysName) {
        auto [it, fresh] = from.emplace(obj.name.text, sysName);
        if (!fresh)
            throw NameClash(fmt::format("object '{}' from system '{}' clashes with one from system '{}'", obj.name.text,
                                        sysName, it->second));
        machines.push_back(compileObject(obj));
    };
    for (const auto& obj : decl.objects) add(obj, decl.name.text);
    for (const auto& use : decl.uses) {
        const SystemDecl* imported = program.findSystem(use.text);
        if (!imported) throw PreconditionViolation(fmt::format("unknown system '{}'", use.text));
        for (const auto& obj : imported->objects) add(obj, imported->name.text);
    }
    SystemModel sys = composeSystem(decl.name.text, std::move(machines));
    sys.nameSpan = decl.name.span;
    if (decl.refines) sys.refines = decl.refines->text;
    return sys;
}

std::vector<std::string> validate(const SystemModel& sys) {
    std::vector<std::string> problems;
    for (const auto& [name, m] : sys.cfsms) {
        if (name != m.name) problems.push_back(fmt::format("cfsm key {} names machine {}", name, m.name));
        if (sys.environmentPeers.count(name) || sys.absentPeers.count(name))
            problems.push_back(fmt::format("{} is both defined and undefined", name));
        for (const auto& p : validate(m)) problems.push_back(fmt::format("{}: {}", name, p));
        for (const auto& peer : m.peers())
            if (!sys.cfsms.count(peer) && !sys.environmentPeers.count(peer) && !sys.absentPeers.count(peer))
                problems.push_back(fmt::format("{} talks to unknown peer {}", name, peer));
    }
    return problems;
}

}  // namespace livecheck
