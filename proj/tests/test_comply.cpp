#include <set>

#include "doctest.h"
#include "livecheck/comply.hpp"
#include "livecheck/error.hpp"
#include "support.hpp"

using namespace livecheck;

namespace {

std::set<std::string> sites(const std::vector<Diagnostic>& diags) {
    std::set<std::string> out;
    for (const auto& d : diags)
        if (d.polarity != Polarity::Warning) out.insert(lct::siteKey(d));
    return out;
}

std::vector<SourceFile> refinementFiles() { return lct::corpusFiles({"conf.sys", "conf_prime.sys"}); }

}  // namespace

TEST_SUITE("comply") {
    TEST_CASE("conf' against conf: three errors at exact spans") {
        auto files = refinementFiles();
        SystemModel conf = lct::loadSystem(files, "conf");
        SystemModel prime = lct::loadSystem(files, "conf'");
        CompatReport r = checkCompliance(prime, conf);
        REQUIRE(r.diagnostics.size() == 3);

        const Diagnostic& accept = r.diagnostics[0];
        CHECK(accept.kind == DiagKind::UnpermittedSend);
        CHECK(accept.polarity == Polarity::Red);
        CHECK(accept.span == Span{"conf_prime.sys", 6, 4, 6, 10});

        const Diagnostic& decline = r.diagnostics[1];
        CHECK(decline.kind == DiagKind::MissingReceive);
        CHECK(decline.polarity == Polarity::Blue);
        CHECK(decline.span == Span{"conf.sys", 17, 19, 17, 26});
        REQUIRE(decline.notes.size() == 1);
        CHECK(decline.notes[0].span == Span{"conf_prime.sys", 18, 22, 18, 28});

        const Diagnostic& artifact = r.diagnostics[2];
        CHECK(artifact.kind == DiagKind::ExtraRequirement);
        CHECK(artifact.polarity == Polarity::Red);
        CHECK(artifact.span == Span{"conf_prime.sys", 20, 28, 20, 36});

        for (const auto& d : r.diagnostics) CHECK(d.system == "conf'");
    }

    TEST_CASE("conf' against conf through the dual route") {
        auto files = refinementFiles();
        Cfsm abstract = lct::loadSystem(files, "conf").cfsms.at("PC");
        Cfsm impl = lct::loadSystem(files, "conf'").cfsms.at("PC");
        CompatReport dual = dualCrossCheck(impl, abstract, "conf'");
        CHECK(sites(dual.diagnostics) == sites(checkObjectCompliance(impl, abstract, "conf'", "conf")));
        CHECK(sites(dual.diagnostics).size() == 3);
    }

    TEST_CASE("self compliance") {
        SystemModel conf = lct::loadSystem(refinementFiles(), "conf");
        CHECK(checkCompliance(conf, conf).diagnostics.empty());
        const Cfsm& pc = conf.cfsms.at("PC");
        CHECK(dualCrossCheck(pc, pc, "conf").diagnostics.empty());
    }

    TEST_CASE("a smaller internal choice refines a larger one") {
        Cfsm abstract = lct::compileText("o p!{a. b.}");
        Cfsm impl = lct::compileText("o p!a.");
        CHECK(checkObjectCompliance(impl, abstract, "i", "s").empty());
        CHECK(dualCrossCheck(impl, abstract, "i").diagnostics.empty());
        auto back = checkObjectCompliance(abstract, impl, "s", "i");
        REQUIRE(back.size() == 1);
        CHECK(back[0].kind == DiagKind::UnpermittedSend);
    }

    TEST_CASE("a larger external choice refines a smaller one") {
        Cfsm abstract = lct::compileText("o p?a.");
        Cfsm impl = lct::compileText("o p?{a. b.}");
        CHECK(checkObjectCompliance(impl, abstract, "i", "s").empty());
        auto back = checkObjectCompliance(abstract, impl, "s", "i");
        REQUIRE(back.size() == 1);
        CHECK(back[0].kind == DiagKind::MissingReceive);
        CHECK(back[0].polarity == Polarity::Blue);
    }

    TEST_CASE("vending refinements") {
        auto files = lct::corpusFiles({"vending.sys"});
        SystemModel vending = lct::loadSystem(files, "vending");
        CHECK(checkCompliance(lct::loadSystem(files, "teaOnly"), vending).diagnostics.empty());
        CompatReport stingy = checkCompliance(lct::loadSystem(files, "stingy"), vending);
        REQUIRE(stingy.diagnostics.size() == 2);
        CHECK(stingy.diagnostics[0].kind == DiagKind::MissingReceive);
        CHECK(stingy.diagnostics[0].span == Span{"vending.sys", 9, 10, 9, 15});
        CHECK(stingy.diagnostics[1].kind == DiagKind::ExtraRequirement);
        CHECK(stingy.diagnostics[1].span == Span{"vending.sys", 36, 7, 36, 14});
    }

    TEST_CASE("mismatches") {
        auto one = [](const std::string& impl, const std::string& abstract) {
            auto d = checkObjectCompliance(lct::compileText(impl), lct::compileText(abstract), "i", "s");
            REQUIRE(d.size() == 1);
            CHECK(d[0].polarity == Polarity::Red);
            return d[0].kind;
        };
        CHECK(one("o q!a.", "o p!a.") == DiagKind::PeerMismatch);
        CHECK(one("o p?a.", "o p!a.") == DiagKind::DirectionMismatch);
        CHECK(one("o .", "o p!a.") == DiagKind::DirectionMismatch);
        CHECK(one("o p!a.", "o .") == DiagKind::ExtraRequirement);
    }

    TEST_CASE("cycles terminate and stay within the pair bound") {
        Cfsm abstract = lct::compileText("o behaviour L p?{a L b p!c L} L");
        Cfsm impl = lct::compileText("o behaviour L p?{a L b p!c L d .} L");
        std::size_t pairs = 0;
        CHECK(checkObjectCompliance(impl, abstract, "i", "s", &pairs).empty());
        CHECK(pairs <= impl.stateCount() * abstract.stateCount());
        CHECK(pairs == 2);
    }

    TEST_CASE("a abstract object missing from the impl") {
        ProgramAst prog = parse("system s obj a p!m. obj b p?m. system t: s obj a p!m.", "m.sys");
        SystemModel abstract = buildSystem(prog.systems[0], prog);
        SystemModel impl = buildSystem(prog.systems[1], prog);
        CompatReport r = checkCompliance(impl, abstract);
        REQUIRE(r.diagnostics.size() == 1);
        CHECK(r.diagnostics[0].kind == DiagKind::StaticError);
        CHECK(r.diagnostics[0].span == impl.nameSpan);
    }

    TEST_CASE("the dual route needs a single-peer abstract") {
        Cfsm abstract = lct::compileText("o p!a q!b.");
        CHECK_THROWS_AS(dualCrossCheck(abstract, abstract, "s"), PreconditionViolation);
    }
}
