#include "elp/report.hpp"

#include "elp/errors.hpp"
#include "elp/parser.hpp"

#include "json.hpp"

#include <cstdio>
#include <sstream>

namespace elp {

using ordered_json = nlohmann::ordered_json;

std::string program_digest(const Program& p) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : emit_elp(p)) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

OutputDocument make_document(const Program& p, SemanticsMode mode, const SearchResult& result) {
    OutputDocument doc;
    doc.semantics = to_string(mode);
    doc.program_digest = program_digest(p);
    for (const auto& item : result.ep.items()) {
        doc.ep.push_back(to_string(item));
    }
    std::size_t index = 0;
    for (const auto& wv : result.world_views) {
        OutputDocument::View v;
        v.index = ++index;
        v.guess = wv.phi.bits;
        for (const auto& item : guess_to_phi(wv.phi, result.ep)) {
            v.phi.push_back(to_string(item));
        }
        BeliefSets sets = wv.belief_sets;
        normalize(sets);
        for (const auto& s : sets) {
            std::vector<std::string> lits;
            for (const auto& l : s) {
                lits.push_back(to_string(l));
            }
            v.belief_sets.push_back(std::move(lits));
        }
        doc.world_views.push_back(std::move(v));
    }
    doc.stats = result.stats;
    return doc;
}

namespace {

ordered_json stats_json(const SearchStats& s) { return ordered_json::parse(stats_report(s)); }

} // namespace

std::string to_json(const OutputDocument& doc, int indent) {
    ordered_json j;
    j["semantics"] = doc.semantics;
    j["program_digest"] = doc.program_digest;
    j["ep"] = doc.ep;
    j["world_views"] = ordered_json::array();
    for (const auto& v : doc.world_views) {
        ordered_json w;
        w["index"] = v.index;
        w["phi"] = v.phi;
        w["guess"] = v.guess;
        w["belief_sets"] = v.belief_sets;
        j["world_views"].push_back(std::move(w));
    }
    j["stats"] = stats_json(doc.stats);
    return j.dump(indent) + "\n";
}

OutputDocument document_from_json(const std::string& text) {
    try {
        auto j = ordered_json::parse(text);
        OutputDocument doc;
        doc.semantics = j.at("semantics").get<std::string>();
        doc.program_digest = j.at("program_digest").get<std::string>();
        doc.ep = j.at("ep").get<std::vector<std::string>>();
        for (const auto& w : j.at("world_views")) {
            OutputDocument::View v;
            v.index = w.at("index").get<std::size_t>();
            v.phi = w.at("phi").get<std::vector<std::string>>();
            v.guess = w.at("guess").get<std::uint64_t>();
            v.belief_sets = w.at("belief_sets").get<std::vector<std::vector<std::string>>>();
            doc.world_views.push_back(std::move(v));
        }
        const auto& s = j.at("stats");
        doc.stats.levels_visited = s.at("levels_visited").get<std::uint64_t>();
        doc.stats.guesses_generated = s.at("guesses_generated").get<std::uint64_t>();
        doc.stats.guesses_pruned = s.at("guesses_pruned").get<std::uint64_t>();
        doc.stats.solver_calls = s.at("solver_calls").get<std::uint64_t>();
        doc.stats.answer_sets_seen = s.at("answer_sets_seen").get<std::uint64_t>();
        doc.stats.peak_in_flight_guesses = s.at("peak_in_flight_guesses").get<std::uint64_t>();
        doc.stats.wall_time = s.at("wall_time").get<double>();
        return doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(std::string("not an output document: ") + e.what());
    }
}

std::string to_text(const OutputDocument& doc, bool with_stats) {
    std::ostringstream out;
    if (doc.world_views.empty()) {
        out << "no world views\n";
    }
    for (const auto& v : doc.world_views) {
        out << "World view " << v.index << ":";
        for (const auto& s : v.belief_sets) {
            out << " {";
            for (std::size_t i = 0; i < s.size(); ++i) {
                out << (i ? ", " : " ") << s[i];
            }
            out << " }";
        }
        out << "\n";
    }
    if (with_stats) {
        const ordered_json stats = stats_json(doc.stats);
        for (const auto& [key, value] : stats.items()) {
            out << "% " << key << ": " << value.dump() << "\n";
        }
    }
    return out.str();
}

} // namespace elp
