#include "livecheck/static_check.hpp"

#include <fmt/format.h>

#include <map>
#include <set>

#include "livecheck/error.hpp"

namespace livecheck {

namespace {

class Checker {
public:
    explicit Checker(const ProgramAst& program) : program_(program) {}

    std::vector<Diagnostic> run() {
        std::set<std::string> systemNames;
        for (const auto& sys : program_.systems) {
            if (!systemNames.insert(sys.name.text).second)
                report(sys.name.span, sys.name.text, fmt::format("duplicate system '{}'", sys.name.text));
        }
        for (const auto& sys : program_.systems) checkSystem(sys);
        return std::move(out_);
    }

private:
    void report(const Span& span, const std::string& system, std::string message) {
        Diagnostic d;
        d.kind = DiagKind::StaticError;
        d.polarity = Polarity::Red;
        d.span = span;
        d.system = system;
        d.message = std::move(message);
        out_.push_back(std::move(d));
    }

    void checkSystem(const SystemDecl& sys) {
        const std::string& name = sys.name.text;
        if (sys.refines) {
            if (sys.refines->text == name)
                report(sys.refines->span, name, fmt::format("system '{}' cannot refine itself", name));
            else if (!program_.findSystem(sys.refines->text))
                report(sys.refines->span, name, fmt::format("unknown system '{}'", sys.refines->text));
        }

        // Object names visible in this system, with where they came from.
        std::map<std::string, std::string> origin;
        for (const auto& obj : sys.objects) {
            if (!origin.emplace(obj.name.text, name).second)
                report(obj.name.span, name, fmt::format("duplicate object '{}' in system '{}'", obj.name.text, name));
        }

        std::set<std::string> used;
        for (const auto& use : sys.uses) {
            if (use.text == name) {
                report(use.span, name, fmt::format("system '{}' cannot use itself", name));
                continue;
            }
            const SystemDecl* imported = program_.findSystem(use.text);
            if (!imported) {
                report(use.span, name, fmt::format("unknown system '{}'", use.text));
                continue;
            }
            if (!used.insert(use.text).second) {
                report(use.span, name, fmt::format("system '{}' is already used", use.text));
                continue;
            }
            // `using` is not transitive: only the imported system's own objects come in.
            for (const auto& obj : imported->objects) {
                auto [it, fresh] = origin.emplace(obj.name.text, use.text);
                if (!fresh) {
                    report(it->second == name ? localNameSpan(sys, obj.name.text) : use.span, name,
                           fmt::format("object '{}' from system '{}' clashes with object '{}' from system '{}'",
                                       obj.name.text, use.text, obj.name.text, it->second));
                }
            }
        }

        for (const auto& obj : sys.objects) checkObject(sys, obj);
    }

    static Span localNameSpan(const SystemDecl& sys, const std::string& objName) {
        for (const auto& obj : sys.objects)
            if (obj.name.text == objName) return obj.name.span;
        return sys.name.span;
    }

    struct Scope {
        std::map<std::string, const BehaviourDef*> defs;
    };

    void checkObject(const SystemDecl& sys, const ObjectDecl& obj) {
        system_ = &sys;
        object_ = &obj;
        entries_.clear();
        walk(*obj.body, Scope{});
        checkGuardedness();
    }

    void checkPeer(const Ident& peer) {
        if (peer.text == object_->name.text) report(peer.span, system_->name.text, "object communicates with itself");
    }

    void walk(const Process& p, const Scope& scope) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Prefix>) {
                    checkPeer(n.peer);
                    walk(*n.cont, scope);
                } else if constexpr (std::is_same_v<T, Choice>) {
                    checkPeer(n.peer);
                    std::set<std::string> labels;
                    for (const auto& b : n.branches) {
                        if (!labels.insert(b.msg.label.text).second)
                            report(b.msg.label.span, system_->name.text,
                                   fmt::format("duplicate label '{}' in choice", b.msg.label.text));
                        walk(*b.cont, scope);
                    }
                } else if constexpr (std::is_same_v<T, BehaviourDef>) {
                    Scope inner = scope;
                    inner.defs[n.name.text] = &n;
                    entries_[&n] = entryOf(*n.body, inner);
                    walk(*n.body, inner);
                    walk(*n.cont, inner);
                } else if constexpr (std::is_same_v<T, BehaviourRef>) {
                    if (!scope.defs.count(n.name.text))
                        report(n.name.span, system_->name.text, fmt::format("unresolved behaviour {}", n.name.text));
                }
            },
            p.node);
    }

    /// The definition a process starts by aliasing, or nullptr if it starts
    /// at a state of its own (or at an unresolved reference).
    static const BehaviourDef* entryOf(const Process& p, const Scope& scope) {
        if (const auto* def = std::get_if<BehaviourDef>(&p.node)) {
            Scope inner = scope;
            inner.defs[def->name.text] = def;
            return entryOf(*def->cont, inner);
        }
        if (const auto* ref = std::get_if<BehaviourRef>(&p.node)) {
            auto it = scope.defs.find(ref->name.text);
            return it == scope.defs.end() ? nullptr : it->second;
        }
        return nullptr;
    }

    void checkGuardedness() {
        for (const auto& [def, first] : entries_) {
            const BehaviourDef* at = first;
            std::set<const BehaviourDef*> seen;
            while (at && seen.insert(at).second) {
                if (at == def) {
                    report(def->name.span, system_->name.text,
                           fmt::format("behaviour {} names no state: it only refers to itself", def->name.text));
                    break;
                }
                auto it = entries_.find(at);
                at = it == entries_.end() ? nullptr : it->second;
            }
        }
    }

    const ProgramAst& program_;
    const SystemDecl* system_ = nullptr;
    const ObjectDecl* object_ = nullptr;
    std::map<const BehaviourDef*, const BehaviourDef*> entries_;
    std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> checkStatic(const ProgramAst& program) {
    auto diags = Checker(program).run();
    finalize(diags);
    return diags;
}

Diagnostic staticErrorFrom(const SourceError& error) {
    Diagnostic d;
    d.kind = DiagKind::StaticError;
    d.polarity = Polarity::Red;
    d.span = error.span();
    d.message = error.what();
    d.id = stableId(d);
    return d;
}

}  // namespace livecheck
