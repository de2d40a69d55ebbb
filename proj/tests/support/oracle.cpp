#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace elp::testing {

namespace {

bool consistent(const LiteralSet& s) {
    for (const auto& l : s) {
        if (!l.strong_neg && s.count(l.complement())) {
            return false;
        }
    }
    return true;
}

// Whether `m` is a model of the reduct of p w.r.t. s.
bool models_reduct(const Program& p, const LiteralSet& s, const LiteralSet& m) {
    for (const auto& r : p.rules) {
        bool body = true;
        for (const auto& e : r.body) {
            if (e.is_subjective()) {
                throw std::logic_error("brute_stable_models: subjective literal");
            }
            const bool in_s = s.count(e.literal) > 0;
            if (e.neg_depth == 1) {
                body = !in_s;
            } else if (e.neg_depth == 2) {
                body = in_s;
            } else {
                body = m.count(e.literal) > 0;
            }
            if (!body) {
                break;
            }
        }
        if (!body) {
            continue;
        }
        bool head = false;
        for (const auto& h : r.head) {
            head = head || m.count(h) > 0;
        }
        if (!head) {
            return false;
        }
    }
    return true;
}

LiteralSet subset(const std::vector<Literal>& u, std::uint64_t mask) {
    LiteralSet s;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if ((mask >> i) & 1u) {
            s.insert(u[i]);
        }
    }
    return s;
}

} // namespace

std::set<LiteralSet> brute_stable_models(const Program& p) {
    const std::vector<Literal> u = p.universe();
    if (u.size() > 20) {
        throw std::length_error("brute_stable_models: universe too large");
    }
    std::set<LiteralSet> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << u.size()); ++mask) {
        LiteralSet s = subset(u, mask);
        if (!consistent(s) || !models_reduct(p, s, s)) {
            continue;
        }
        bool minimal = true;
        // Proper submasks of `mask`.
        for (std::uint64_t sub = (mask - 1) & mask; minimal; sub = (sub - 1) & mask) {
            if (sub != mask && models_reduct(p, s, subset(u, sub))) {
                minimal = false;
            }
            if (sub == 0) {
                break;
            }
        }
        if (minimal) {
            out.insert(std::move(s));
        }
    }
    return out;
}

namespace {

bool holds(const std::set<LiteralSet>& w, const SubjectiveAtom& a) {
    if (a.modality == Modality::K) {
        for (const auto& s : w) {
            if (!s.count(a.literal)) {
                return false;
            }
        }
        return true;
    }
    for (const auto& s : w) {
        if (s.count(a.literal)) {
            return true;
        }
    }
    return false;
}

Program modal_reduct_by_assignment(const Program& p, const std::map<SubjectiveAtom, bool>& value) {
    Program out;
    for (const auto& r : p.rules) {
        std::vector<BodyElement> body;
        bool drop = false;
        for (const auto& e : r.body) {
            if (!e.is_subjective()) {
                body.push_back(e);
                continue;
            }
            const bool v = value.at(e.subjective_atom());
            const bool positive = e.neg_depth == 0;
            const bool satisfied = positive ? v : !v;
            if (*e.modality == Modality::K) {
                if (positive) {
                    satisfied ? body.push_back(BodyElement::objective(e.literal)) : void(drop = true);
                } else if (!satisfied) {
                    body.push_back(BodyElement::objective(e.literal, 1));
                }
            } else {
                if (positive) {
                    if (!satisfied) {
                        body.push_back(BodyElement::objective(e.literal, 2));
                    }
                } else {
                    satisfied ? body.push_back(BodyElement::objective(e.literal, 1)) : void(drop = true);
                }
            }
        }
        if (!drop) {
            out.rules.emplace_back(r.head, std::move(body));
        }
    }
    return out;
}

} // namespace

std::set<std::set<LiteralSet>> definition_world_views(const Program& p, bool maximal) {
    std::vector<SubjectiveAtom> atoms;
    for (const auto& r : p.rules) {
        for (const auto& e : r.body) {
            if (e.is_subjective()) {
                auto a = e.subjective_atom();
                bool seen = false;
                for (const auto& x : atoms) {
                    seen = seen || x == a;
                }
                if (!seen) {
                    atoms.push_back(a);
                }
            }
        }
    }
    if (atoms.size() > 16) {
        throw std::length_error("definition_world_views: too many subjective atoms");
    }
    // Each candidate W with the set of epistemic negations it satisfies:
    // `not K l` for unsatisfied K l, `M l` for satisfied M l.
    std::vector<std::pair<std::set<LiteralSet>, std::set<SubjectiveAtom>>> found;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << atoms.size()); ++mask) {
        std::map<SubjectiveAtom, bool> value;
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            value[atoms[i]] = (mask >> i) & 1u;
        }
        auto w = brute_stable_models(modal_reduct_by_assignment(p, value));
        if (w.empty()) {
            continue;
        }
        bool agrees = true;
        std::set<SubjectiveAtom> phi;
        for (const auto& a : atoms) {
            const bool h = holds(w, a);
            agrees = agrees && h == value[a];
            if ((a.modality == Modality::K && !h) || (a.modality == Modality::M && h)) {
                phi.insert(a);
            }
        }
        if (agrees) {
            found.emplace_back(std::move(w), std::move(phi));
        }
    }
    std::set<std::set<LiteralSet>> out;
    for (const auto& [w, phi] : found) {
        bool dominated = false;
        if (maximal) {
            for (const auto& other : found) {
                const auto& o = other.second;
                if (o.size() > phi.size() && std::includes(o.begin(), o.end(), phi.begin(), phi.end())) {
                    dominated = true;
                }
            }
        }
        if (!dominated) {
            out.insert(w);
        }
    }
    return out;
}

std::set<LiteralSet> to_literal_sets(const std::vector<BeliefSet>& sets) {
    std::set<LiteralSet> out;
    for (const auto& s : sets) {
        out.insert(LiteralSet(s.begin(), s.end()));
    }
    return out;
}

} // namespace elp::testing
