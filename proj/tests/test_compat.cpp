#include <algorithm>
#include <map>

#include "doctest.h"
#include "livecheck/compat.hpp"
#include "livecheck/render.hpp"
#include "support.hpp"

using namespace livecheck;

namespace {

CompatReport authorReport(std::size_t bound = 4) {
    ExploreOptions opts;
    opts.bound = bound;
    return checkCompatibility(lct::loadSystem(lct::corpusFiles({"conf.sys", "author.sys"}), "author"), opts);
}

const Diagnostic* at(const std::vector<Diagnostic>& diags, const Span& span) {
    for (const auto& d : diags)
        if (d.span == span) return &d;
    return nullptr;
}

}  // namespace

TEST_SUITE("compat") {
    TEST_CASE("author system: five sites with complementary links") {
        CompatReport r = authorReport();
        REQUIRE(r.diagnostics.size() == 5);
        const Span reject{"conf.sys", 11, 13, 11, 19};
        const Span revise{"author.sys", 14, 19, 14, 25};
        const Span accept{"author.sys", 16, 19, 16, 25};
        const Span withdraw{"author.sys", 26, 16, 26, 24};
        const Span submit{"conf.sys", 9, 17, 9, 23};
        const Diagnostic* dReject = at(r.diagnostics, reject);
        const Diagnostic* dRevise = at(r.diagnostics, revise);
        const Diagnostic* dAccept = at(r.diagnostics, accept);
        const Diagnostic* dWithdraw = at(r.diagnostics, withdraw);
        const Diagnostic* dSubmit = at(r.diagnostics, submit);
        REQUIRE(dReject);
        REQUIRE(dRevise);
        REQUIRE(dAccept);
        REQUIRE(dWithdraw);
        REQUIRE(dSubmit);
        for (const auto& d : r.diagnostics) {
            CHECK(d.kind == DiagKind::UnspecifiedReception);
            CHECK(d.system == "author");
        }
        CHECK(dReject->polarity == Polarity::Red);
        CHECK(dWithdraw->polarity == Polarity::Red);
        CHECK(dRevise->polarity == Polarity::Blue);
        CHECK(dAccept->polarity == Polarity::Blue);
        CHECK(dSubmit->polarity == Polarity::Blue);

        auto sorted = [](std::vector<std::string> v) {
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(dReject->related) == sorted({dRevise->id, dAccept->id}));
        CHECK(dRevise->related == std::vector{dReject->id});
        CHECK(dAccept->related == std::vector{dReject->id});
        CHECK(dWithdraw->related == std::vector{dSubmit->id});
        CHECK(dSubmit->related == std::vector{dWithdraw->id});
    }

    TEST_CASE("author traces are shortest according to the oracle") {
        SystemModel sys = lct::loadSystem(lct::corpusFiles({"conf.sys", "author.sys"}), "author");
        CompatReport r = checkCompatibility(sys);
        lct::OracleResult oracle = lct::oracleExplore(sys, 4);
        for (const auto& d : r.diagnostics) {
            if (d.polarity != Polarity::Red) continue;
            auto it = oracle.unspecifiedDepth.find(lct::spanKey(d.span));
            REQUIRE(it != oracle.unspecifiedDepth.end());
            CHECK(d.trace.size() == it->second);
        }
        const Diagnostic* reject = at(r.diagnostics, Span{"conf.sys", 11, 13, 11, 19});
        REQUIRE(reject);
        CHECK(reject->trace.size() == 9);
        CHECK(reject->trace.back() == TraceEvent{"PC", Direction::Send, "author", "reject"});
    }

    TEST_CASE("clean systems") {
        ExploreOptions one;
        one.bound = 1;
        CHECK(checkCompatibility(lct::loadSystem(lct::corpusFiles({"pingpong.sys"}), "pingpong"), one)
                  .diagnostics.empty());
        CompatReport conf = checkCompatibility(lct::loadSystem(lct::corpusFiles({"conf.sys"}), "conf"));
        CHECK(conf.diagnostics.empty());
        CHECK(conf.stats.configurations > 0);
        CHECK(conf.stats.bound == 4);
    }

    TEST_CASE("orphan, deadlock and bound reports") {
        CompatReport orphan = checkCompatibility(lct::loadSystem(lct::corpusFiles({"double_send.sys"}), "doublesend"));
        REQUIRE(orphan.diagnostics.size() == 1);
        CHECK(orphan.diagnostics[0].kind == DiagKind::OrphanMessage);
        CHECK(orphan.diagnostics[0].span == Span{"double_send.sys", 6, 3, 6, 4});

        CompatReport standoff = checkCompatibility(lct::loadSystem(lct::corpusFiles({"standoff.sys"}), "standoff"));
        REQUIRE(standoff.diagnostics.size() == 2);
        for (const auto& d : standoff.diagnostics) {
            CHECK(d.kind == DiagKind::Deadlock);
            CHECK(d.polarity == Polarity::Red);
            CHECK(d.trace.empty());
        }

        CompatReport stream = checkCompatibility(lct::loadSystem(lct::corpusFiles({"producer.sys"}), "stream"));
        REQUIRE(stream.diagnostics.size() == 1);
        CHECK(stream.diagnostics[0].kind == DiagKind::BoundExceeded);
        CHECK(stream.diagnostics[0].polarity == Polarity::Warning);
        CHECK(stream.diagnostics[0].trace.size() == 4);
    }

    TEST_CASE("red and blue unspecified receptions always have a partner") {
        for (const auto& sys : lct::corpusSystems()) {
            CompatReport r = checkCompatibility(sys);
            std::map<std::string, const Diagnostic*> byId;
            for (const auto& d : r.diagnostics) byId[d.id] = &d;
            for (const auto& d : r.diagnostics) {
                if (d.kind != DiagKind::UnspecifiedReception) continue;
                CHECK_FALSE(d.related.empty());
                for (const auto& id : d.related) {
                    REQUIRE(byId.count(id));
                    CHECK(byId[id]->polarity != d.polarity);
                    const auto& back = byId[id]->related;
                    CHECK(std::find(back.begin(), back.end(), d.id) != back.end());
                }
            }
        }
    }

    TEST_CASE("every trace replays to a witnessing configuration") {
        for (const auto& sys : lct::corpusSystems())
            for (std::size_t bound = 1; bound <= 4; ++bound) {
                ExploreOptions opts;
                opts.bound = bound;
                for (const auto& d : checkCompatibility(sys, opts).diagnostics) {
                    std::string why;
                    std::string where = toString(d.span);
                    CAPTURE(where);
                    CHECK_MESSAGE(lct::traceWitnesses(sys, d, bound, &why), why);
                }
            }
    }

    TEST_CASE("reports are deterministic") {
        CHECK(renderJson(authorReport().diagnostics, {}) == renderJson(authorReport().diagnostics, {}));
    }

    TEST_CASE("an undefined peer that never reads is absent, not permissive") {
        SystemModel sys = composeSystem("lone", {lct::compileText("o p!a .")}, {"p"});
        CompatReport r = checkCompatibility(sys);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagKind::Deadlock);
    }
}
