#pragma once

#include "elp/model.hpp"

#include <map>
#include <set>
#include <string>

namespace elp::detail {

/// Hands out predicate names that do not clash with any predicate of a
/// program. A requested stem is returned unchanged when free; otherwise
/// underscores are appended. The same stem always maps to the same name.
class FreshNames {
public:
    explicit FreshNames(const Program& p) {
        for (const auto& l : p.universe()) {
            used_.insert(l.atom.name);
        }
    }

    const std::string& get(const std::string& stem) {
        auto it = issued_.find(stem);
        if (it != issued_.end()) {
            return it->second;
        }
        std::string name = stem;
        while (used_.count(name)) {
            name += '_';
        }
        used_.insert(name);
        return issued_.emplace(stem, std::move(name)).first->second;
    }

private:
    std::set<std::string> used_;
    std::map<std::string, std::string> issued_;
};

} // namespace elp::detail
