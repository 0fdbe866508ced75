#include "livecheck/explorer.hpp"

#include <fmt/format.h>

#include <unordered_map>

#include "livecheck/error.hpp"

namespace livecheck {

std::string_view configKindName(ConfigKind kind) {
    switch (kind) {
        case ConfigKind::Ok: return "Ok";
        case ConfigKind::SuccessTerminal: return "SuccessTerminal";
        case ConfigKind::UnspecifiedReception: return "UnspecifiedReception";
        case ConfigKind::Deadlock: return "Deadlock";
        case ConfigKind::Orphan: return "Orphan";
        case ConfigKind::BoundExceeded: return "BoundExceeded";
    }
    return "Ok";
}

std::vector<std::uint32_t> Configuration::encode() const {
    std::vector<std::uint32_t> out(control.begin(), control.end());
    for (const auto& q : queues) {
        out.push_back(static_cast<std::uint32_t>(q.size()));
        out.insert(out.end(), q.begin(), q.end());
    }
    return out;
}

SystemIndex::SystemIndex(SystemModel model) : model_(std::move(model)) {
    for (const auto& [_, m] : model_.cfsms) machines_.push_back(&m);
    messageBase_.resize(machines_.size());
    for (ObjectIndex i = 0; i < machines_.size(); ++i) {
        const Cfsm& m = *machines_[i];
        messageBase_[i].resize(m.stateCount());
        for (StateId s = 0; s < m.stateCount(); ++s) {
            messageBase_[i][s] = static_cast<MessageId>(origins_.size());
            if (m.isTerminal(s) || m.action(s).dir != Direction::Send) continue;
            for (std::uint32_t b = 0; b < m.action(s).branches.size(); ++b) origins_.push_back({i, s, b});
        }
    }
}

std::optional<ObjectIndex> SystemIndex::indexOf(const std::string& name) const {
    for (ObjectIndex i = 0; i < machines_.size(); ++i)
        if (machines_[i]->name == name) return i;
    return std::nullopt;
}

PeerKind SystemIndex::peerKind(const std::string& peer) const {
    if (model_.cfsms.count(peer)) return PeerKind::Defined;
    if (model_.absentPeers.count(peer)) return PeerKind::Absent;
    return PeerKind::Environment;
}

MessageId SystemIndex::messageId(ObjectIndex actor, StateId state, std::uint32_t branch) const {
    return messageBase_.at(actor).at(state) + branch;
}

MessageInst SystemIndex::message(MessageId id) const {
    const MessageOrigin& o = origins_.at(id);
    const Cfsm& m = *machines_[o.actor];
    const CfsmBranch& b = m.action(o.state).branches[o.branch];
    return MessageInst{b.label, b.arity, b.payload, b.span, m.name, o.state};
}

Configuration SystemIndex::initial() const {
    Configuration cfg;
    for (const Cfsm* m : machines_) cfg.control.push_back(m->initial);
    cfg.queues.resize(machines_.size() * machines_.size());
    return cfg;
}

std::vector<Step> SystemIndex::enabled(const Configuration& cfg, std::size_t bound) const {
    std::vector<Step> steps;
    for (ObjectIndex i = 0; i < machines_.size(); ++i) {
        const Cfsm& m = *machines_[i];
        StateId s = cfg.control[i];
        if (m.isTerminal(s)) continue;
        const CfsmAction& a = m.action(s);
        auto branches = static_cast<std::uint32_t>(a.branches.size());
        PeerKind kind = peerKind(a.peer);
        if (kind == PeerKind::Absent) continue;
        if (kind == PeerKind::Environment) {
            StepKind sk = a.dir == Direction::Send ? StepKind::Send : StepKind::EnvReceive;
            for (std::uint32_t b = 0; b < branches; ++b) steps.push_back({sk, i, b});
            continue;
        }
        ObjectIndex j = *indexOf(a.peer);
        if (a.dir == Direction::Send) {
            if (cfg.queues[channel(i, j)].size() >= bound) continue;
            for (std::uint32_t b = 0; b < branches; ++b) steps.push_back({StepKind::Send, i, b});
        } else {
            const auto& q = cfg.queues[channel(j, i)];
            if (q.empty()) continue;
            MessageInst head = message(q.front());
            for (std::uint32_t b = 0; b < branches; ++b) {
                if (a.branches[b].label == head.label && a.branches[b].arity == head.arity) {
                    steps.push_back({StepKind::Receive, i, b});
                    break;
                }
            }
        }
    }
    return steps;
}

Configuration SystemIndex::apply(const Configuration& cfg, const Step& step) const {
    Configuration next = cfg;
    const Cfsm& m = *machines_[step.actor];
    StateId s = cfg.control[step.actor];
    const CfsmAction& a = m.action(s);
    const CfsmBranch& b = a.branches.at(step.branch);
    switch (step.kind) {
        case StepKind::Send:
            if (peerKind(a.peer) == PeerKind::Defined)
                next.queues[channel(step.actor, *indexOf(a.peer))].push_back(messageId(step.actor, s, step.branch));
            break;
        case StepKind::Receive: {
            auto& q = next.queues[channel(*indexOf(a.peer), step.actor)];
            q.erase(q.begin());
            break;
        }
        case StepKind::EnvReceive:
            break;
    }
    next.control[step.actor] = b.target;
    return next;
}

namespace {

Classification classifyWith(const SystemIndex& idx, const Configuration& cfg, std::size_t bound, bool stuck) {
    Classification c;
    bool anyNonTerminal = false;
    for (ObjectIndex i = 0; i < idx.objectCount(); ++i) {
        const Cfsm& m = idx.machine(i);
        StateId s = cfg.control[i];
        if (m.isTerminal(s)) continue;
        anyNonTerminal = true;
        const CfsmAction& a = m.action(s);
        if (idx.peerKind(a.peer) != PeerKind::Defined) continue;
        ObjectIndex j = *idx.indexOf(a.peer);
        if (a.dir == Direction::Receive) {
            const auto& q = cfg.queues[idx.channel(j, i)];
            if (!q.empty()) {
                MessageInst head = idx.message(q.front());
                if (!a.find(head.label, head.arity)) c.unspecified.push_back({i, j, q.front()});
            }
        } else if (cfg.queues[idx.channel(i, j)].size() >= bound) {
            for (std::uint32_t b = 0; b < a.branches.size(); ++b) c.suppressed.push_back({i, b});
        }
    }

    if (!c.unspecified.empty()) {
        c.kind = ConfigKind::UnspecifiedReception;
    } else if (stuck) {
        if (!c.suppressed.empty()) {
            c.kind = ConfigKind::BoundExceeded;
        } else if (anyNonTerminal) {
            c.kind = ConfigKind::Deadlock;
            for (ObjectIndex i = 0; i < idx.objectCount(); ++i)
                if (!idx.machine(i).isTerminal(cfg.control[i])) c.blocked.push_back(i);
        } else {
            const std::size_t n = idx.objectCount();
            for (ObjectIndex s = 0; s < n; ++s)
                for (ObjectIndex r = 0; r < n; ++r) {
                    const auto& q = cfg.queues[idx.channel(s, r)];
                    for (std::size_t p = 0; p < q.size(); ++p) c.stranded.push_back({s, r, q[p], p});
                }
            c.kind = c.stranded.empty() ? ConfigKind::SuccessTerminal : ConfigKind::Orphan;
        }
    } else if (!c.suppressed.empty()) {
        c.kind = ConfigKind::BoundExceeded;
    }
    return c;
}

struct EncodingHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace

Classification SystemIndex::classify(const Configuration& cfg, std::size_t bound) const {
    return classifyWith(*this, cfg, bound, enabled(cfg, bound).empty());
}

TraceEvent SystemIndex::describe(const Configuration& before, const Step& step) const {
    const Cfsm& m = *machines_[step.actor];
    const CfsmAction& a = m.action(before.control[step.actor]);
    return TraceEvent{m.name, step.kind == StepKind::Send ? Direction::Send : Direction::Receive, a.peer,
                      a.branches.at(step.branch).label};
}

std::optional<Step> SystemIndex::stepFor(const Configuration& cfg, const TraceEvent& event, std::size_t bound) const {
    for (const Step& s : enabled(cfg, bound))
        if (describe(cfg, s) == event) return s;
    return std::nullopt;
}

std::string SystemIndex::render(const Configuration& cfg) const {
    std::string out;
    for (ObjectIndex i = 0; i < machines_.size(); ++i)
        out += fmt::format("{}{}:{}", i ? " " : "", machines_[i]->name, cfg.control[i]);
    for (ObjectIndex s = 0; s < machines_.size(); ++s)
        for (ObjectIndex r = 0; r < machines_.size(); ++r) {
            const auto& q = cfg.queues[channel(s, r)];
            if (q.empty()) continue;
            std::string items;
            for (MessageId id : q) items += (items.empty() ? "" : ",") + message(id).label;
            out += fmt::format(" {}->{}=[{}]", machines_[s]->name, machines_[r]->name, items);
        }
    return out;
}

Configuration initialConfiguration(const SystemModel& sys) { return SystemIndex(sys).initial(); }

std::vector<Step> enabledSteps(const SystemModel& sys, const Configuration& cfg, std::size_t bound) {
    return SystemIndex(sys).enabled(cfg, bound);
}

Configuration applyStep(const SystemModel& sys, const Configuration& cfg, const Step& step) {
    return SystemIndex(sys).apply(cfg, step);
}

ReachGraph explore(const SystemModel& sys, const ExploreOptions& options) {
    if (options.bound < 1) throw PreconditionViolation("queue bound must be at least 1");
    ReachGraph g;
    auto index = std::make_shared<const SystemIndex>(sys);
    g.index = index;
    g.bound = options.bound;

    std::unordered_map<std::vector<std::uint32_t>, ConfigId, EncodingHash> seen;
    auto start = index->initial();
    seen.emplace(start.encode(), 0);
    g.configs.push_back(std::move(start));
    g.parentEdge.push_back(std::nullopt);
    g.depth.push_back(0);

    for (std::size_t head = 0; head < g.configs.size(); ++head) {
        if ((head & 0xFF) == 0) {
            if (options.stop.stop_requested()) throw ExplorationCancelled();
            if (options.deadline && std::chrono::steady_clock::now() > *options.deadline)
                throw StateSpaceOverflow("exploration exceeded its time limit", StateSpaceOverflow::Reason::TimeLimit,
                                         g.configs.size());
        }
        const Configuration cfg = g.configs[head];
        std::vector<Step> steps = index->enabled(cfg, options.bound);
        g.classes.push_back(classifyWith(*index, cfg, options.bound, steps.empty()));
        for (const Step& step : steps) {
            Configuration next = index->apply(cfg, step);
            auto [it, fresh] = seen.try_emplace(next.encode(), static_cast<ConfigId>(g.configs.size()));
            if (fresh) {
                if (g.configs.size() >= options.configCap)
                    throw StateSpaceOverflow(
                        fmt::format("state space exceeds {} configurations", options.configCap),
                        StateSpaceOverflow::Reason::ConfigurationCap, g.configs.size());
                g.configs.push_back(std::move(next));
                g.parentEdge.push_back(g.edges.size());
                g.depth.push_back(g.depth[head] + 1);
            }
            g.edges.push_back(ReachEdge{static_cast<ConfigId>(head), step, it->second});
        }
    }
    return g;
}

std::vector<TraceStep> traceTo(const ReachGraph& graph, ConfigId target) {
    std::vector<std::size_t> path;
    for (ConfigId at = target; graph.parentEdge.at(at);) {
        std::size_t e = *graph.parentEdge[at];
        path.push_back(e);
        at = graph.edges[e].from;
    }
    std::vector<TraceStep> out;
    out.reserve(path.size());
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const ReachEdge& e = graph.edges[*it];
        out.push_back(TraceStep{e.step, graph.index->describe(graph.configs[e.from], e.step)});
    }
    return out;
}

std::optional<Configuration> replay(const SystemIndex& index, const std::vector<TraceEvent>& events, std::size_t bound) {
    Configuration cfg = index.initial();
    for (const auto& ev : events) {
        auto step = index.stepFor(cfg, ev, bound);
        if (!step) return std::nullopt;
        cfg = index.apply(cfg, *step);
    }
    return cfg;
}

std::string dumpGraph(const ReachGraph& graph) {
    std::string out;
    for (ConfigId id = 0; id < graph.configs.size(); ++id) {
        std::string enc;
        for (std::uint32_t x : graph.configs[id].encode()) enc += fmt::format("{}{}", enc.empty() ? "" : ".", x);
        out += fmt::format("{} d={} [{}] {} {}\n", id, graph.depth[id], enc, configKindName(graph.classes[id].kind),
                           graph.index->render(graph.configs[id]));
    }
    return out;
}

}  // namespace livecheck
