#include "support.hpp"

#include <algorithm>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "livecheck/explorer.hpp"
#include "livecheck/static_check.hpp"

namespace lct {

std::string corpusPath(const std::string& name) { return std::string(LIVECHECK_CORPUS_DIR) + "/" + name; }

SourceFile corpusFile(const std::string& name) {
    std::ifstream in(corpusPath(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing corpus file " + name);
    std::ostringstream s;
    s << in.rdbuf();
    return SourceFile{name, s.str()};
}

std::vector<SourceFile> corpusFiles(const std::vector<std::string>& names) {
    std::vector<SourceFile> out;
    for (const auto& n : names) out.push_back(corpusFile(n));
    return out;
}

std::vector<std::string> corpusNames() {
    std::vector<std::string> out;
    for (const auto& e : std::filesystem::directory_iterator(LIVECHECK_CORPUS_DIR))
        if (e.path().extension() == ".sys") out.push_back(e.path().filename().string());
    std::sort(out.begin(), out.end());
    return out;
}

SystemModel loadSystem(const std::vector<SourceFile>& files, const std::string& system) {
    ProgramAst program = parseFiles(files);
    if (!checkStatic(program).empty()) throw std::runtime_error("static errors in test input");
    const SystemDecl* decl = program.findSystem(system);
    if (!decl) throw std::runtime_error("no system " + system);
    return buildSystem(*decl, program);
}

std::vector<SystemModel> corpusSystems() {
    std::vector<SourceFile> files = corpusFiles(corpusNames());
    ProgramAst program = parseFiles(files);
    std::vector<SystemModel> out;
    for (const auto& s : program.systems) out.push_back(buildSystem(s, program));
    return out;
}

Cfsm compileText(const std::string& objectSource) {
    ProgramAst program = parse("system t\nobj " + objectSource + "\n", "t.sys");
    return compileObject(program.systems.at(0).objects.at(0));
}

namespace {

struct PositionWalker {
    std::set<const Process*> seen;
    std::vector<std::pair<std::string, const Process*>> scope;

    void visit(const Process* p) {
        // follow definitions and references to the position they stand for
        for (std::size_t guard = 0;; ++guard) {
            if (guard > 10'000) throw std::runtime_error("unguarded behaviour");
            if (auto* def = std::get_if<BehaviourDef>(&p->node)) {
                scope.emplace_back(def->name.text, def->body.get());
                p = def->cont.get();
                continue;
            }
            if (auto* ref = std::get_if<BehaviourRef>(&p->node)) {
                auto it = std::find_if(scope.rbegin(), scope.rend(),
                                       [&](const auto& b) { return b.first == ref->name.text; });
                if (it == scope.rend()) throw std::runtime_error("unbound behaviour " + ref->name.text);
                p = it->second;
                continue;
            }
            break;
        }
        if (!seen.insert(p).second) return;
        std::size_t depth = scope.size();
        if (auto* pre = std::get_if<Prefix>(&p->node)) {
            visit(pre->cont.get());
        } else if (auto* ch = std::get_if<Choice>(&p->node)) {
            for (const auto& b : ch->branches) visit(b.cont.get());
        }
        scope.resize(depth);
    }
};

}  // namespace

std::size_t countProcessPositions(const ObjectDecl& obj) {
    PositionWalker w;
    w.visit(obj.body.get());
    return w.seen.size();
}

std::string spanKey(const Span& s) { return toString(s) + "-" + std::to_string(s.endLine) + ":" + std::to_string(s.endCol); }

OracleResult oracleExplore(const SystemModel& sys, std::size_t bound) {
    std::vector<std::string> names;
    for (const auto& [n, _] : sys.cfsms) names.push_back(n);
    const std::size_t n = names.size();
    auto idx = [&](const std::string& name) -> int {
        auto it = std::find(names.begin(), names.end(), name);
        return it == names.end() ? -1 : static_cast<int>(it - names.begin());
    };

    struct Msg {
        std::string label;
        int arity;
        std::string origin;
        bool operator==(const Msg&) const = default;
    };
    struct State {
        std::vector<StateId> at;
        std::map<std::pair<int, int>, std::deque<Msg>> q;
    };
    auto key = [&](const State& s) {
        std::string k;
        for (auto a : s.at) k += std::to_string(a) + ",";
        for (const auto& [ch, msgs] : s.q) {
            if (msgs.empty()) continue;
            k += "|" + std::to_string(ch.first) + ">" + std::to_string(ch.second) + ":";
            for (const auto& m : msgs) k += m.label + "/" + std::to_string(m.arity) + "@" + m.origin + ";";
        }
        return k;
    };
    auto machine = [&](int i) -> const Cfsm& { return sys.cfsms.at(names[i]); };

    OracleResult r;
    State init;
    for (int i = 0; i < static_cast<int>(n); ++i) init.at.push_back(machine(i).initial);
    std::unordered_map<std::string, std::size_t> depth;
    std::deque<State> work;
    depth[key(init)] = 0;
    work.push_back(init);

    while (!work.empty()) {
        State s = std::move(work.front());
        work.pop_front();
        std::size_t d = depth.at(key(s));
        std::vector<State> next;
        bool allTerminal = true;
        for (int i = 0; i < static_cast<int>(n); ++i) {
            const Cfsm& m = machine(i);
            if (m.isTerminal(s.at[i])) continue;
            allTerminal = false;
            const CfsmAction& a = m.action(s.at[i]);
            int p = idx(a.peer);
            bool absent = sys.absentPeers.count(a.peer) > 0;
            if (absent) continue;
            if (a.dir == Direction::Send) {
                for (const auto& b : a.branches) {
                    State t = s;
                    t.at[i] = b.target;
                    if (p >= 0) {
                        auto& q = t.q[{i, p}];
                        if (q.size() >= bound) continue;
                        q.push_back(Msg{b.label, b.arity, spanKey(b.span)});
                    }
                    next.push_back(std::move(t));
                }
            } else if (p < 0) {
                for (const auto& b : a.branches) {
                    State t = s;
                    t.at[i] = b.target;
                    next.push_back(std::move(t));
                }
            } else {
                auto it = s.q.find({p, i});
                if (it == s.q.end() || it->second.empty()) continue;
                const Msg& head = it->second.front();
                bool matched = false;
                for (const auto& b : a.branches) {
                    if (b.label != head.label || b.arity != head.arity) continue;
                    matched = true;
                    State t = s;
                    t.q[{p, i}].pop_front();
                    t.at[i] = b.target;
                    next.push_back(std::move(t));
                }
                if (!matched) r.unspecifiedDepth.emplace(head.origin, d);
            }
        }
        bool queuesEmpty = std::all_of(s.q.begin(), s.q.end(), [](const auto& e) { return e.second.empty(); });
        if (next.empty()) {
            ++r.stuck;
            if (allTerminal && queuesEmpty) ++r.terminalSuccess;
            if (allTerminal && !queuesEmpty)
                for (const auto& [ch, msgs] : s.q)
                    for (const auto& m : msgs) r.orphanDepth.emplace(m.origin, d);
        }
        for (auto& t : next) {
            if (depth.emplace(key(t), d + 1).second) work.push_back(std::move(t));
        }
    }
    r.configurations = depth.size();
    return r;
}

namespace {

Cfsm randomMachine(std::mt19937& rng, const std::string& name, const std::vector<std::string>& peers,
                   std::size_t maxStates, const std::string& file, const std::vector<std::string>& alphabet) {
    auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
    std::size_t n = pick(1, maxStates);
    std::vector<bool> terminal(n, false);
    for (std::size_t i = 1; i < n; ++i) terminal[i] = pick(0, 9) < 3;
    if (n == 1) terminal[0] = pick(0, 3) == 0;

    Cfsm m;
    m.name = name;
    m.nameSpan = Span{file, 1, 1, 1, 1 + static_cast<int>(name.size())};
    m.actions.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        int line = static_cast<int>(i) + 2;
        m.stateSpan.push_back(Span{file, line, 1, line, 3});
        if (terminal[i]) continue;
        CfsmAction a;
        a.peer = peers[pick(0, peers.size() - 1)];
        a.dir = pick(0, 1) ? Direction::Send : Direction::Receive;
        m.actions[i] = std::move(a);
    }
    auto addBranch = [&](std::size_t from, StateId to) -> bool {
        CfsmAction& a = *m.actions[from];
        if (a.branches.size() >= alphabet.size()) return false;
        std::vector<std::string> free;
        for (const auto& l : alphabet)
            if (!std::any_of(a.branches.begin(), a.branches.end(), [&](const auto& b) { return b.label == l; }))
                free.push_back(l);
        CfsmBranch b;
        b.label = free[pick(0, free.size() - 1)];
        int line = static_cast<int>(from) + 2;
        int col = 10 + 4 * static_cast<int>(a.branches.size());
        b.span = Span{file, line, col, line, col + static_cast<int>(b.label.size())};
        b.target = to;
        a.branches.push_back(std::move(b));
        return true;
    };
    // spanning tree from state 0 through non-terminal parents
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<std::size_t> parents;
        for (std::size_t j = 0; j < i; ++j)
            if (!terminal[j] && m.actions[j]->branches.size() < alphabet.size()) parents.push_back(j);
        if (parents.empty()) continue;  // left unreachable and pruned below
        addBranch(parents[pick(0, parents.size() - 1)], static_cast<StateId>(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!m.actions[i]) continue;
        std::size_t extra = m.actions[i]->branches.empty() ? 1 : pick(0, 2);
        for (std::size_t k = 0; k < extra; ++k)
            if (!addBranch(i, static_cast<StateId>(pick(0, n - 1)))) break;
    }
    return deleteBranch(m, 0, static_cast<std::size_t>(-1));
}

}  // namespace

Cfsm deleteBranch(const Cfsm& m, StateId state, std::size_t branch) {
    Cfsm copy = m;
    if (copy.actions[state] && branch < copy.actions[state]->branches.size())
        copy.actions[state]->branches.erase(copy.actions[state]->branches.begin() + static_cast<long>(branch));
    std::map<StateId, StateId> number{{copy.initial, 0}};
    std::vector<StateId> order{copy.initial};
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& a = copy.actions[order[i]];
        if (!a) continue;
        for (const auto& b : a->branches)
            if (number.emplace(b.target, static_cast<StateId>(order.size())).second) order.push_back(b.target);
    }
    Cfsm out;
    out.name = copy.name;
    out.nameSpan = copy.nameSpan;
    out.initial = 0;
    for (StateId old : order) {
        auto a = copy.actions[old];
        if (a)
            for (auto& b : a->branches) b.target = number.at(b.target);
        out.actions.push_back(std::move(a));
        out.stateSpan.push_back(copy.stateSpan[old]);
    }
    return out;
}

Cfsm randomSinglePeer(std::mt19937& rng, const std::string& name, const std::string& peer, std::size_t maxStates) {
    return randomMachine(rng, name, {peer}, maxStates, "gen_" + name + ".sys", {"a", "b", "c", "d"});
}

SystemModel randomSystem(std::mt19937& rng, std::size_t objects, std::size_t maxStates) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < objects; ++i) names.push_back("o" + std::to_string(i));
    std::vector<Cfsm> machines;
    for (const auto& n : names) {
        std::vector<std::string> peers;
        for (const auto& p : names)
            if (p != n) peers.push_back(p);
        machines.push_back(randomMachine(rng, n, peers, maxStates, n + ".sys", {"a", "b", "c"}));
    }
    return composeSystem("random", std::move(machines));
}

std::string siteKey(const Diagnostic& d) {
    return std::string(kindName(d.kind)) + " " + std::string(polarityName(d.polarity)) + " " + spanKey(d.span);
}

bool traceWitnesses(const SystemModel& sys, const Diagnostic& d, std::size_t bound, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    SystemIndex index(sys);
    std::optional<Configuration> cfg = replay(index, d.trace, bound);
    if (!cfg) return fail("trace does not replay");
    Classification c = index.classify(*cfg, bound);
    auto stateSpan = [&](ObjectIndex i) { return index.machine(i).stateSpan[cfg->control[i]]; };
    switch (d.kind) {
        case DiagKind::UnspecifiedReception:
            if (c.kind != ConfigKind::UnspecifiedReception) break;
            for (const auto& u : c.unspecified) {
                if (d.polarity == Polarity::Red && index.message(u.head).originSpan == d.span) return true;
                if (d.polarity == Polarity::Blue)
                    for (const auto& b : index.machine(u.receiver).action(cfg->control[u.receiver]).branches)
                        if (b.span == d.span) return true;
            }
            return fail("no matching unspecified reception");
        case DiagKind::Deadlock:
            if (c.kind != ConfigKind::Deadlock) break;
            for (ObjectIndex i : c.blocked)
                if (stateSpan(i) == d.span) return true;
            return fail("no blocked object at the span");
        case DiagKind::OrphanMessage:
            if (c.kind != ConfigKind::Orphan) break;
            for (const auto& s : c.stranded)
                if (index.message(s.message).originSpan == d.span) return true;
            return fail("no stranded message from the span");
        case DiagKind::BoundExceeded:
            if (c.kind != ConfigKind::BoundExceeded) break;
            for (const auto& s : c.suppressed)
                if (index.machine(s.actor).action(cfg->control[s.actor]).branches[s.branch].span == d.span) return true;
            return fail("no suppressed send at the span");
        default:
            return fail("kind carries no trace");
    }
    return fail("configuration classified " + std::string(configKindName(c.kind)));
}

}  // namespace lct
