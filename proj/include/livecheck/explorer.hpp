#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <stop_token>
#include <string>
#include <vector>

#include "livecheck/automata.hpp"
#include "livecheck/diagnostic.hpp"

namespace livecheck {

struct ExploreOptions {
    std::size_t bound = 4;
    std::size_t configCap = 1'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
    std::stop_token stop;
};

using ObjectIndex = std::uint32_t;
using ConfigId = std::uint32_t;
/// Identifies the send branch that produced a queued message.
using MessageId = std::uint32_t;

struct MessageInst {
    std::string label;
    int arity = 0;
    std::optional<std::string> payloadText;
    Span originSpan;
    std::string sender;
    StateId originState = 0;
};

/// Global state. Objects are indexed in name order; queues[s * n + r] holds
/// the FIFO contents of the channel from object s to object r.
struct Configuration {
    std::vector<StateId> control;
    std::vector<std::vector<MessageId>> queues;

    std::vector<std::uint32_t> encode() const;
    friend bool operator==(const Configuration&, const Configuration&) = default;
};

enum class StepKind { Send, Receive, EnvReceive };

struct Step {
    StepKind kind;
    ObjectIndex actor;
    std::uint32_t branch;

    friend bool operator==(const Step&, const Step&) = default;
};

enum class ConfigKind { Ok, SuccessTerminal, UnspecifiedReception, Deadlock, Orphan, BoundExceeded };

std::string_view configKindName(ConfigKind kind);

struct UnspecifiedReceptionInfo {
    ObjectIndex receiver;
    ObjectIndex sender;
    MessageId head;
};

struct StrandedMessage {
    ObjectIndex sender;
    ObjectIndex receiver;
    MessageId message;
    std::size_t position;  // 0 = queue head
};

struct SuppressedSend {
    ObjectIndex actor;
    std::uint32_t branch;
};

struct Classification {
    ConfigKind kind = ConfigKind::Ok;
    std::vector<UnspecifiedReceptionInfo> unspecified;
    std::vector<ObjectIndex> blocked;  // Deadlock: every non-terminal object
    std::vector<StrandedMessage> stranded;
    std::vector<SuppressedSend> suppressed;
};

enum class PeerKind { Defined, Environment, Absent };

/// A SystemModel prepared for exploration: dense object and message indices.
class SystemIndex {
public:
    explicit SystemIndex(SystemModel model);
    SystemIndex(const SystemIndex&) = delete;
    SystemIndex& operator=(const SystemIndex&) = delete;

    const SystemModel& model() const { return model_; }
    std::size_t objectCount() const { return machines_.size(); }
    const std::string& objectName(ObjectIndex i) const { return machines_[i]->name; }
    const Cfsm& machine(ObjectIndex i) const { return *machines_[i]; }
    std::optional<ObjectIndex> indexOf(const std::string& name) const;

    PeerKind peerKind(const std::string& peer) const;

    std::size_t channel(ObjectIndex sender, ObjectIndex receiver) const {
        return sender * machines_.size() + receiver;
    }
    MessageId messageId(ObjectIndex actor, StateId state, std::uint32_t branch) const;
    MessageInst message(MessageId id) const;

    Configuration initial() const;
    std::vector<Step> enabled(const Configuration& cfg, std::size_t bound) const;
    Configuration apply(const Configuration& cfg, const Step& step) const;
    Classification classify(const Configuration& cfg, std::size_t bound) const;
    TraceEvent describe(const Configuration& before, const Step& step) const;

    /// Finds the enabled step matching `event`, if any.
    std::optional<Step> stepFor(const Configuration& cfg, const TraceEvent& event, std::size_t bound) const;

    std::string render(const Configuration& cfg) const;

private:
    struct MessageOrigin {
        ObjectIndex actor;
        StateId state;
        std::uint32_t branch;
    };

    SystemModel model_;
    std::vector<const Cfsm*> machines_;
    std::vector<std::vector<MessageId>> messageBase_;  // [object][state] -> first id
    std::vector<MessageOrigin> origins_;
};

struct ReachEdge {
    ConfigId from;
    Step step;
    ConfigId to;
};

struct ReachGraph {
    std::shared_ptr<const SystemIndex> index;
    std::size_t bound = 0;
    std::vector<Configuration> configs;  // BFS discovery order; 0 is initial
    std::vector<ReachEdge> edges;
    std::vector<std::optional<std::size_t>> parentEdge;
    std::vector<std::uint32_t> depth;
    std::vector<Classification> classes;
};

struct TraceStep {
    Step step;
    TraceEvent event;
};

Configuration initialConfiguration(const SystemModel& sys);
std::vector<Step> enabledSteps(const SystemModel& sys, const Configuration& cfg, std::size_t bound);
Configuration applyStep(const SystemModel& sys, const Configuration& cfg, const Step& step);

/// Breadth-first exploration of every configuration reachable under `bound`.
/// Throws StateSpaceOverflow past the configuration cap or the deadline, and
/// ExplorationCancelled when the stop token fires.
ReachGraph explore(const SystemModel& sys, const ExploreOptions& options = {});

/// Shortest event sequence from the initial configuration to `target`.
std::vector<TraceStep> traceTo(const ReachGraph& graph, ConfigId target);

/// Re-executes `events` from the initial configuration; nullopt if some
/// event does not correspond to an enabled step.
std::optional<Configuration> replay(const SystemIndex& index, const std::vector<TraceEvent>& events, std::size_t bound);

/// One line per configuration: id, canonical encoding, classification.
std::string dumpGraph(const ReachGraph& graph);

}  // namespace livecheck
