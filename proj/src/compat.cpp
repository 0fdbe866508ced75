#include "livecheck/compat.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <chrono>
#include <set>
#include <tuple>

namespace livecheck {

namespace {

std::string labelList(const CfsmAction& a) {
    std::string out;
    for (const auto& b : a.branches) out += (out.empty() ? "" : ", ") + b.label;
    return out;
}

class GraphReporter {
public:
    GraphReporter(const ReachGraph& graph, const std::string& system) : g_(graph), idx_(*graph.index), system_(system) {}

    std::vector<Diagnostic> run() {
        for (ConfigId id = 0; id < g_.configs.size(); ++id) {
            const Classification& c = g_.classes[id];
            const Configuration& cfg = g_.configs[id];
            switch (c.kind) {
                case ConfigKind::UnspecifiedReception:
                    for (const auto& u : c.unspecified) unspecified(id, cfg, u);
                    break;
                case ConfigKind::Deadlock:
                    for (ObjectIndex i : c.blocked) deadlock(id, cfg, i);
                    break;
                case ConfigKind::Orphan:
                    for (const auto& s : c.stranded) orphan(id, s);
                    break;
                case ConfigKind::BoundExceeded:
                    for (const auto& s : c.suppressed) suppressed(id, cfg, s);
                    break;
                case ConfigKind::Ok:
                case ConfigKind::SuccessTerminal:
                    break;
            }
        }
        finalize(out_);
        return std::move(out_);
    }

private:
    void emit(ConfigId at, DiagKind kind, Polarity pol, Span span, std::string message, std::vector<Span> complements = {}) {
        Diagnostic d;
        d.kind = kind;
        d.polarity = pol;
        d.span = std::move(span);
        d.message = std::move(message);
        d.system = system_;
        d.complements = std::move(complements);
        auto sorted = d.complements;
        std::sort(sorted.begin(), sorted.end());
        // BFS order means the first configuration seen for a site has the shortest trace.
        if (!seen_.emplace(kind, pol, d.span, std::move(sorted)).second) return;
        for (auto& step : traceTo(g_, at)) d.trace.push_back(std::move(step.event));
        out_.push_back(std::move(d));
    }

    void unspecified(ConfigId at, const Configuration& cfg, const UnspecifiedReceptionInfo& u) {
        MessageInst msg = idx_.message(u.head);
        const Cfsm& receiver = idx_.machine(u.receiver);
        const CfsmAction& offered = receiver.action(cfg.control[u.receiver]);
        std::vector<Span> blues;
        for (const auto& b : offered.branches) blues.push_back(b.span);
        emit(at, DiagKind::UnspecifiedReception, Polarity::Red, msg.originSpan,
             fmt::format("{} sends {} to {}, which can only receive {} here", msg.sender, msg.label, receiver.name,
                         labelList(offered)),
             blues);
        for (const auto& b : offered.branches)
            emit(at, DiagKind::UnspecifiedReception, Polarity::Blue, b.span,
                 fmt::format("{} offers {} but {} sends {}", receiver.name, labelList(offered), msg.sender, msg.label),
                 {msg.originSpan});
    }

    void deadlock(ConfigId at, const Configuration& cfg, ObjectIndex i) {
        const Cfsm& m = idx_.machine(i);
        StateId s = cfg.control[i];
        const CfsmAction& a = m.action(s);
        std::string what = a.dir == Direction::Send ? fmt::format("send to {}", a.peer)
                                                    : fmt::format("receive from {}", a.peer);
        std::string why = idx_.peerKind(a.peer) == PeerKind::Absent ? std::string(", which takes no part in this system")
                                                                    : std::string{};
        emit(at, DiagKind::Deadlock, Polarity::Red, m.stateSpan[s],
             fmt::format("{} is blocked waiting to {}{}", m.name, what, why));
    }

    void orphan(ConfigId at, const StrandedMessage& s) {
        MessageInst msg = idx_.message(s.message);
        emit(at, DiagKind::OrphanMessage, Polarity::Red, msg.originSpan,
             fmt::format("{} sent by {} is never received by {}", msg.label, msg.sender, idx_.objectName(s.receiver)));
    }

    void suppressed(ConfigId at, const Configuration& cfg, const SuppressedSend& s) {
        const Cfsm& m = idx_.machine(s.actor);
        const CfsmAction& a = m.action(cfg.control[s.actor]);
        emit(at, DiagKind::BoundExceeded, Polarity::Warning, a.branches[s.branch].span,
             fmt::format("{} cannot send {} to {}: the queue bound of {} is reached", m.name, a.branches[s.branch].label,
                         a.peer, g_.bound));
    }

    const ReachGraph& g_;
    const SystemIndex& idx_;
    const std::string& system_;
    std::set<std::tuple<DiagKind, Polarity, Span, std::vector<Span>>> seen_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> diagnosticsFromGraph(const ReachGraph& graph, const std::string& systemName) {
    return GraphReporter(graph, systemName).run();
}

CompatReport checkCompatibility(const SystemModel& sys, const ExploreOptions& options) {
    auto start = std::chrono::steady_clock::now();
    ReachGraph graph = explore(sys, options);
    CompatReport report;
    report.systemName = sys.name;
    report.diagnostics = diagnosticsFromGraph(graph, sys.name);
    report.stats.configurations = graph.configs.size();
    report.stats.bound = options.bound;
    report.stats.elapsedMs =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace livecheck
