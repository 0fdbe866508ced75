#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "livecheck/automata.hpp"
#include "livecheck/compat.hpp"
#include "livecheck/parser.hpp"

namespace lct {

using namespace livecheck;

std::string corpusPath(const std::string& name);
SourceFile corpusFile(const std::string& name);
std::vector<SourceFile> corpusFiles(const std::vector<std::string>& names);
/// Every *.sys file of the corpus, sorted by name.
std::vector<std::string> corpusNames();

/// Parses the files and builds the named system.
SystemModel loadSystem(const std::vector<SourceFile>& files, const std::string& system);
/// Every system of every corpus file, in file then declaration order.
std::vector<SystemModel> corpusSystems();
/// Parses a single-object program `system t obj <name> <body>`.
Cfsm compileText(const std::string& objectSource);

/// Distinct state positions of an object body, counted on the syntax tree:
/// prefixes, choices and terminals each make one; behaviour definitions and
/// references only name another position.
std::size_t countProcessPositions(const ObjectDecl& obj);

/// Brute-force reference semantics of bounded asynchronous composition.
/// Keeps messages as (label, arity, origin) strings and configurations as
/// strings; shares nothing with the production explorer.
struct OracleResult {
    std::size_t configurations = 0;
    std::size_t terminalSuccess = 0;
    std::size_t stuck = 0;
    // shortest depth at which a send at origin `span` is an unspecified reception
    std::map<std::string, std::size_t> unspecifiedDepth;
    // shortest depth at which a message from origin `span` is stranded at global termination
    std::map<std::string, std::size_t> orphanDepth;
};
OracleResult oracleExplore(const SystemModel& sys, std::size_t bound);

std::string spanKey(const Span& s);

/// Random well-formed single-peer automaton with at most `maxStates` states,
/// all talking to `peer`. Labels come from a small alphabet so choices overlap.
Cfsm randomSinglePeer(std::mt19937& rng, const std::string& name, const std::string& peer, std::size_t maxStates);

/// Random closed system of `objects` machines that talk to each other.
SystemModel randomSystem(std::mt19937& rng, std::size_t objects, std::size_t maxStates);

/// Copy of `m` with branch `branch` of `state` removed, unreachable states
/// dropped and states renumbered breadth-first.
Cfsm deleteBranch(const Cfsm& m, StateId state, std::size_t branch);

/// Key used to compare the two compliance routes: kind, polarity and span.
std::string siteKey(const Diagnostic& d);

/// True when replaying `d.trace` reaches a configuration that exhibits `d`.
/// `why` receives a description on failure.
bool traceWitnesses(const SystemModel& sys, const Diagnostic& d, std::size_t bound, std::string* why = nullptr);

}  // namespace lct
