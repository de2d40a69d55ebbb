#pragma once

#include "elp/model.hpp"
#include "elp/search.hpp"
#include "elp/semantics.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace elp {

/// What `elpsolve solve` prints, independent of the output format.
struct OutputDocument {
    struct View {
        std::size_t index = 0; // 1-based
        std::vector<std::string> phi;
        std::uint64_t guess = 0;
        std::vector<std::vector<std::string>> belief_sets;

        bool operator==(const View&) const = default;
    };

    std::string semantics;
    std::string program_digest;
    std::vector<std::string> ep;
    std::vector<View> world_views;
    SearchStats stats;
};

/// FNV-1a (64 bit) of the program's canonical text, as 16 hex digits.
std::string program_digest(const Program& p);

OutputDocument make_document(const Program& p, SemanticsMode mode, const SearchResult& result);

/// Fixed field order; belief sets and their literals sorted.
std::string to_json(const OutputDocument& doc, int indent = 2);

/// Throws Error for text that is not an output document.
OutputDocument document_from_json(const std::string& text);

/// One line per world view (`World view 1: { a } { b }`) or
/// `no world views`; counters appended as `% name: value` lines.
std::string to_text(const OutputDocument& doc, bool with_stats = false);

} // namespace elp
