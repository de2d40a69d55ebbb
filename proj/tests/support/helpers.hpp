#pragma once

#include "elp/model.hpp"
#include "elp/parser.hpp"
#include "oracle.hpp"

#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace elp::testing {

inline Program elp_program(const std::string& text) { return parse_elp(text); }
inline Program asp_program(const std::string& text) { return parse_asp(text); }

/// `{{"a", "-b"}, {}}` as belief sets.
inline std::set<LiteralSet> sets(std::initializer_list<std::initializer_list<const char*>> in) {
    std::set<LiteralSet> out;
    for (const auto& s : in) {
        LiteralSet ls;
        for (const char* l : s) {
            ls.insert(parse_asp(std::string(l) + ".").rules.at(0).head.at(0));
        }
        out.insert(std::move(ls));
    }
    return out;
}

inline std::set<std::set<LiteralSet>> view_sets(const std::vector<WorldView>& views) {
    std::set<std::set<LiteralSet>> out;
    for (const auto& v : views) {
        out.insert(to_literal_sets(v.belief_sets));
    }
    return out;
}

inline std::set<Literal> as_set(const BeliefSet& s) { return {s.begin(), s.end()}; }

} // namespace elp::testing
