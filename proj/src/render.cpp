#include "livecheck/render.hpp"

#include <fmt/format.h>

#include <map>
#include "json.hpp"
#include <sstream>

#include "livecheck/error.hpp"

namespace livecheck {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::string_view kReset = "\x1b[0m";

std::string_view colorOf(Polarity p) {
    switch (p) {
        case Polarity::Red: return "\x1b[31m";
        case Polarity::Blue: return "\x1b[34m";
        case Polarity::Warning: return "\x1b[33m";
    }
    return "";
}

std::vector<std::string> splitLines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    lines.push_back(std::move(cur));
    return lines;
}

// Number of code points in `line`.
std::size_t width(const std::string& line) {
    std::size_t n = 0;
    for (unsigned char c : line)
        if ((c & 0xC0) != 0x80) ++n;
    return n;
}

// Whitespace that lines up with the first `cols` code points of `line`.
std::string padFor(const std::string& line, std::size_t cols) {
    std::string pad;
    std::size_t seen = 0;
    for (unsigned char c : line) {
        if ((c & 0xC0) == 0x80) continue;
        if (seen++ == cols) break;
        pad += c == '\t' ? '\t' : ' ';
    }
    while (seen < cols) {
        pad += ' ';
        ++seen;
    }
    return pad;
}

ordered_json spanJson(const Span& s) {
    ordered_json j;
    j["startLine"] = s.startLine;
    j["startCol"] = s.startCol;
    j["endLine"] = s.endLine;
    j["endCol"] = s.endCol;
    return j;
}

Span spanFrom(const nlohmann::json& j, std::string file) {
    return Span{std::move(file), j.at("startLine").get<int>(), j.at("startCol").get<int>(), j.at("endLine").get<int>(),
                j.at("endCol").get<int>()};
}

}  // namespace

std::string traceSummary(const std::vector<TraceEvent>& trace) {
    std::string out = "via:";
    for (std::size_t i = 0; i < trace.size(); ++i)
        out += fmt::format("{}{}{}{}", i ? " → " : " ", trace[i].actor, symbol(trace[i].action), trace[i].label);
    return out;
}

std::string renderText(const std::vector<Diagnostic>& diags, std::span<const SourceFile> sources,
                       const TextOptions& options) {
    if (diags.empty()) return fmt::format("no errors found ({} configurations explored)\n", options.configurations);

    std::map<std::string, std::vector<std::string>> lines;
    for (const auto& f : sources) lines.emplace(f.name, splitLines(f.text));
    auto lineOf = [&](const Span& s) -> const std::string& {
        auto it = lines.find(s.file);
        if (it == lines.end()) throw MissingSource(fmt::format("no source text for {}", s.file));
        if (s.startLine < 1 || static_cast<std::size_t>(s.startLine) > it->second.size())
            throw MissingSource(fmt::format("{} has no line {}", s.file, s.startLine));
        return it->second[s.startLine - 1];
    };
    std::map<std::string, const Diagnostic*> byId;
    for (const auto& d : diags) byId[d.id] = &d;

    std::ostringstream out;
    for (const auto& d : diags) {
        const std::string& text = lineOf(d.span);
        std::string_view on = options.color ? colorOf(d.polarity) : "";
        std::string_view off = options.color ? kReset : "";
        out << fmt::format("{}:{}:{}: {}[{}]{} {}\n", d.span.file, d.span.startLine, d.span.startCol, on,
                           kindName(d.kind), off, d.message);

        std::string gutter = std::to_string(d.span.startLine);
        std::size_t start = static_cast<std::size_t>(d.span.startCol - 1);
        std::size_t end = d.span.endLine == d.span.startLine ? static_cast<std::size_t>(d.span.endCol - 1) : width(text);
        std::size_t len = end > start ? end - start : 1;
        out << fmt::format(" {} | {}\n", gutter, text);
        out << fmt::format(" {} | {}{}^{}{}\n", std::string(gutter.size(), ' '), padFor(text, start), on,
                           std::string(len - 1, '~'), off);
        if (!d.trace.empty()) out << "  " << traceSummary(d.trace) << "\n";
        for (const auto& r : d.related) {
            auto it = byId.find(r);
            if (it == byId.end()) continue;
            const Diagnostic& o = *it->second;
            out << fmt::format("  see also: {}:{}:{}: {} {}\n", o.span.file, o.span.startLine, o.span.startCol,
                               polarityName(o.polarity), kindName(o.kind));
        }
        for (const auto& n : d.notes)
            out << fmt::format("  note: {}:{}:{}: {}\n", n.span.file, n.span.startLine, n.span.startCol, n.message);
    }
    return out.str();
}

std::string renderJson(const std::vector<Diagnostic>& diags, const ReportStats& stats, int indent) {
    ordered_json root;
    root["diagnostics"] = ordered_json::array();
    for (const auto& d : diags) {
        ordered_json j;
        j["id"] = d.id;
        j["kind"] = kindName(d.kind);
        j["polarity"] = polarityName(d.polarity);
        j["file"] = d.span.file;
        j["span"] = spanJson(d.span);
        j["system"] = d.system;
        j["message"] = d.message;
        j["trace"] = ordered_json::array();
        for (const auto& t : d.trace) {
            ordered_json e;
            e["actor"] = t.actor;
            e["action"] = t.action == Direction::Send ? "send" : "receive";
            e["peer"] = t.peer;
            e["label"] = t.label;
            j["trace"].push_back(std::move(e));
        }
        j["related"] = d.related;
        j["notes"] = ordered_json::array();
        for (const auto& n : d.notes) {
            ordered_json e;
            e["file"] = n.span.file;
            e["span"] = spanJson(n.span);
            e["message"] = n.message;
            j["notes"].push_back(std::move(e));
        }
        root["diagnostics"].push_back(std::move(j));
    }
    ordered_json s;
    s["configurations"] = stats.configurations;
    s["bound"] = stats.bound;
    s["elapsedMs"] = stats.elapsedMs;
    root["stats"] = std::move(s);
    return root.dump(indent);
}

ParsedReport parseJsonReport(const std::string& text) {
    ParsedReport report;
    try {
        auto root = nlohmann::json::parse(text);
        for (const auto& j : root.at("diagnostics")) {
            Diagnostic d;
            d.id = j.at("id").get<std::string>();
            auto kind = kindFromName(j.at("kind").get<std::string>());
            auto pol = polarityFromName(j.at("polarity").get<std::string>());
            if (!kind || !pol) throw Error("unknown kind or polarity");
            d.kind = *kind;
            d.polarity = *pol;
            d.span = spanFrom(j.at("span"), j.at("file").get<std::string>());
            d.system = j.at("system").get<std::string>();
            d.message = j.at("message").get<std::string>();
            for (const auto& t : j.at("trace")) {
                std::string action = t.at("action").get<std::string>();
                if (action != "send" && action != "receive") throw Error("bad trace action " + action);
                d.trace.push_back(TraceEvent{t.at("actor").get<std::string>(),
                                             action == "send" ? Direction::Send : Direction::Receive,
                                             t.at("peer").get<std::string>(), t.at("label").get<std::string>()});
            }
            d.related = j.at("related").get<std::vector<std::string>>();
            if (j.contains("notes"))
                for (const auto& n : j.at("notes"))
                    d.notes.push_back(Note{spanFrom(n.at("span"), n.at("file").get<std::string>()),
                                           n.at("message").get<std::string>()});
            report.diagnostics.push_back(std::move(d));
        }
        const auto& s = root.at("stats");
        report.stats.configurations = s.at("configurations").get<std::size_t>();
        report.stats.bound = s.at("bound").get<std::size_t>();
        report.stats.elapsedMs = s.at("elapsedMs").get<std::int64_t>();
    } catch (const nlohmann::json::exception& e) {
        throw Error(fmt::format("malformed report: {}", e.what()));
    }
    return report;
}

}  // namespace livecheck
