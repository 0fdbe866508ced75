#pragma once

#include <string>

#include "livecheck/automata.hpp"
#include "livecheck/compat.hpp"

namespace livecheck {

struct PairState {
    StateId implState;
    StateId specState;
    std::string objectName;
};

/// Simulation of each abstract object by the same-named impl object.
/// Outputs may shrink to a nonempty subset, inputs may grow, and a
/// terminal abstract state admits only a terminal impl state.
CompatReport checkCompliance(const SystemModel& impl, const SystemModel& abstract);

/// The simulation for one object pair. `pairsVisited`, when given, receives
/// the number of distinct pair states examined.
std::vector<Diagnostic> checkObjectCompliance(const Cfsm& impl, const Cfsm& abstract, const std::string& implSystem,
                                              const std::string& abstractSystem, std::size_t* pairsVisited = nullptr);

/// Independent route: explores `impl` composed with the dual of `abstract`
/// (renamed to abstract's single peer) and maps the resulting runtime errors
/// to compliance kinds. Throws PreconditionViolation if `abstract` talks to
/// more than one peer.
CompatReport dualCrossCheck(const Cfsm& impl, const Cfsm& abstract, const std::string& implSystem,
                            std::size_t bound = 4);

}  // namespace livecheck
