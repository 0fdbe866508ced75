#include "livecheck/comply.hpp"

#include <fmt/format.h>

#include <chrono>
#include <set>
#include <utility>

#include "livecheck/error.hpp"

namespace livecheck {

namespace {

std::string_view verb(Direction d) { return d == Direction::Send ? "sends to" : "receives from"; }

std::string labelList(const CfsmAction& a) {
    std::string out;
    for (const auto& b : a.branches) out += (out.empty() ? "" : ", ") + b.label;
    return out;
}

Diagnostic make(DiagKind kind, Polarity pol, Span span, std::string message, const std::string& system) {
    Diagnostic d;
    d.kind = kind;
    d.polarity = pol;
    d.span = std::move(span);
    d.message = std::move(message);
    d.system = system;
    return d;
}

}  // namespace

std::vector<Diagnostic> checkObjectCompliance(const Cfsm& impl, const Cfsm& abstract, const std::string& implSystem,
                                              const std::string& abstractSystem, std::size_t* pairsVisited) {
    std::vector<Diagnostic> out;
    std::set<std::pair<StateId, StateId>> visited;
    std::vector<std::pair<StateId, StateId>> work{{impl.initial, abstract.initial}};
    const std::string& obj = impl.name;

    // Pairs already on the visited set are assumed to comply, which closes cycles.
    while (!work.empty()) {
        auto [i, s] = work.back();
        work.pop_back();
        if (!visited.emplace(i, s).second) continue;

        if (abstract.isTerminal(s)) {
            if (!impl.isTerminal(i)) {
                const CfsmAction& ia = impl.action(i);
                out.push_back(make(DiagKind::ExtraRequirement, Polarity::Red, impl.stateSpan[i],
                                   fmt::format("{} {} {} here, but the corresponding state of {} in {} is terminal",
                                               obj, verb(ia.dir), ia.peer, obj, abstractSystem),
                                   implSystem));
            }
            continue;
        }
        const CfsmAction& sa = abstract.action(s);
        if (impl.isTerminal(i)) {
            out.push_back(make(DiagKind::DirectionMismatch, Polarity::Red, impl.stateSpan[i],
                               fmt::format("{} terminates here, but in {} it {} {}", obj, abstractSystem, verb(sa.dir), sa.peer),
                               implSystem));
            continue;
        }
        const CfsmAction& ia = impl.action(i);
        if (ia.peer != sa.peer) {
            out.push_back(make(DiagKind::PeerMismatch, Polarity::Red, impl.stateSpan[i],
                               fmt::format("{} {} {} here, but in {} it {} {}", obj, verb(ia.dir), ia.peer, abstractSystem,
                                           verb(sa.dir), sa.peer),
                               implSystem));
            continue;
        }
        if (ia.dir != sa.dir) {
            out.push_back(make(DiagKind::DirectionMismatch, Polarity::Red, impl.stateSpan[i],
                               fmt::format("{} {} {} here, but in {} it {} {}", obj, verb(ia.dir), ia.peer, abstractSystem,
                                           verb(sa.dir), sa.peer),
                               implSystem));
            continue;
        }

        std::vector<std::pair<StateId, StateId>> next;
        if (ia.dir == Direction::Send) {
            // Outputs: every impl label must be permitted by the refined object.
            for (const auto& b : ia.branches) {
                if (const CfsmBranch* sb = sa.find(b.label, b.arity)) {
                    next.emplace_back(b.target, sb->target);
                } else {
                    out.push_back(make(DiagKind::UnpermittedSend, Polarity::Red, b.span,
                                       fmt::format("{} sends {} to {}, which {} does not permit here (it allows {})", obj,
                                                   b.label, ia.peer, abstractSystem, labelList(sa)),
                                       implSystem));
                }
            }
        } else {
            // Inputs: every abstract label must still be accepted; extra impl labels are fine.
            for (const auto& sb : sa.branches) {
                if (const CfsmBranch* ib = ia.find(sb.label, sb.arity)) {
                    next.emplace_back(ib->target, sb.target);
                } else {
                    Diagnostic d = make(DiagKind::MissingReceive, Polarity::Blue, sb.span,
                                        fmt::format("{} in {} accepts {} from {} here, but {} in {} does not", obj,
                                                    abstractSystem, sb.label, sa.peer, obj, implSystem),
                                        implSystem);
                    d.notes.push_back(Note{impl.stateSpan[i], fmt::format("this choice in {} has no {} branch",
                                                                          implSystem, sb.label)});
                    out.push_back(std::move(d));
                }
            }
        }
        for (auto it = next.rbegin(); it != next.rend(); ++it) work.push_back(*it);
    }
    if (pairsVisited) *pairsVisited = visited.size();
    return out;
}

CompatReport checkCompliance(const SystemModel& impl, const SystemModel& abstract) {
    auto start = std::chrono::steady_clock::now();
    CompatReport report;
    report.systemName = impl.name;
    std::size_t pairs = 0;
    for (const auto& [name, abstractObj] : abstract.cfsms) {
        auto it = impl.cfsms.find(name);
        if (it == impl.cfsms.end()) {
            report.diagnostics.push_back(make(DiagKind::StaticError, Polarity::Red, impl.nameSpan,
                                              fmt::format("system {} does not define object {} required by {}",
                                                          impl.name, name, abstract.name),
                                              impl.name));
            continue;
        }
        std::size_t visited = 0;
        auto diags = checkObjectCompliance(it->second, abstractObj, impl.name, abstract.name, &visited);
        pairs += visited;
        for (auto& d : diags) report.diagnostics.push_back(std::move(d));
    }
    finalize(report.diagnostics);
    report.stats.configurations = pairs;
    report.stats.elapsedMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CompatReport dualCrossCheck(const Cfsm& impl, const Cfsm& abstract, const std::string& implSystem, std::size_t bound) {
    auto start = std::chrono::steady_clock::now();
    std::set<std::string> abstractPeers = abstract.peers();
    if (abstractPeers.size() > 1)
        throw PreconditionViolation(fmt::format("{} talks to {} peers; the dual check needs exactly one", abstract.name,
                                                abstractPeers.size()));

    std::vector<Cfsm> machines{impl};
    std::optional<std::string> partner;
    if (!abstractPeers.empty()) {
        partner = *abstractPeers.begin();
        if (*partner == impl.name)
            throw PreconditionViolation(fmt::format("{} names its own peer {}", impl.name, *partner));
        machines.push_back(retarget(dualize(abstract), *partner, {{*partner, impl.name}}));
    }
    // Peers the refined object never mentions are present but never interact.
    std::set<std::string> absent;
    for (const auto& p : impl.peers())
        if (!partner || p != *partner) absent.insert(p);

    SystemModel sys = composeSystem(implSystem, std::move(machines), absent);
    ExploreOptions options;
    options.bound = bound;
    ReachGraph g = explore(sys, options);
    const SystemIndex& idx = *g.index;
    const ObjectIndex in = *idx.indexOf(impl.name);
    const std::optional<ObjectIndex> en = partner ? idx.indexOf(*partner) : std::nullopt;

    CompatReport report;
    report.systemName = implSystem;
    auto add = [&](DiagKind kind, Polarity pol, const Span& span, std::string msg) {
        report.diagnostics.push_back(make(kind, pol, span, std::move(msg), implSystem));
    };

    for (ConfigId id = 0; id < g.configs.size(); ++id) {
        const Configuration& cfg = g.configs[id];
        const Classification& c = g.classes[id];
        if (c.kind == ConfigKind::UnspecifiedReception) {
            for (const auto& u : c.unspecified) {
                MessageInst m = idx.message(u.head);
                if (u.sender == in) {
                    add(DiagKind::UnpermittedSend, Polarity::Red, m.originSpan,
                        fmt::format("the dual of {} cannot receive {} here", abstract.name, m.label));
                } else {
                    add(DiagKind::MissingReceive, Polarity::Blue, m.originSpan,
                        fmt::format("{} cannot receive {} from the dual of {}", impl.name, m.label, abstract.name));
                    report.diagnostics.back().notes.push_back(
                        Note{impl.stateSpan[cfg.control[in]], fmt::format("this choice has no {} branch", m.label)});
                }
            }
            continue;
        }
        if (c.kind == ConfigKind::Ok || !idx.enabled(cfg, bound).empty()) continue;

        // Stuck without an unspecified reception: read the mismatch off the configuration.
        const StateId is = cfg.control[in];
        const bool implDone = impl.isTerminal(is);
        const bool dualDone = !en || idx.machine(*en).isTerminal(cfg.control[*en]);
        static const std::vector<MessageId> none;
        const auto& toDual = en ? cfg.queues[idx.channel(in, *en)] : none;
        const auto& fromDual = en ? cfg.queues[idx.channel(*en, in)] : none;
        const bool implOnAbsent = !implDone && idx.peerKind(impl.action(is).peer) == PeerKind::Absent;

        if (!toDual.empty()) {
            const Span& at = impl.stateSpan[idx.message(toDual.front()).originState];
            if (dualDone && fromDual.empty())
                add(DiagKind::ExtraRequirement, Polarity::Red, at, "message left over after the dual terminated");
            else
                add(DiagKind::DirectionMismatch, Polarity::Red, at, "messages cross with the dual");
        } else if (!fromDual.empty()) {
            add(implOnAbsent ? DiagKind::PeerMismatch : DiagKind::DirectionMismatch, Polarity::Red, impl.stateSpan[is],
                "the dual's message is never received");
        } else if (implDone && dualDone) {
            // successful termination
        } else if (dualDone) {
            add(DiagKind::ExtraRequirement, Polarity::Red, impl.stateSpan[is], "blocked after the dual terminated");
        } else if (implDone) {
            add(DiagKind::DirectionMismatch, Polarity::Red, impl.stateSpan[is], "terminated while the dual waits");
        } else {
            add(implOnAbsent ? DiagKind::PeerMismatch : DiagKind::DirectionMismatch, Polarity::Red, impl.stateSpan[is],
                "blocked together with the dual");
        }
    }
    finalize(report.diagnostics);
    report.stats.configurations = g.configs.size();
    report.stats.bound = bound;
    report.stats.elapsedMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace livecheck
