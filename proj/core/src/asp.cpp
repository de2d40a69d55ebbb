#include "elp/asp.hpp"

#include "fresh_names.hpp"

#include <algorithm>

namespace elp {

namespace {

void require_asp(const Program& p, const char* who) {
    if (!p.is_asp()) {
        throw ContractError(std::string(who) + ": program contains subjective literals");
    }
}

} // namespace

ClassicalElimination eliminate_classical_negation(const Program& p) {
    require_asp(p, "eliminate_classical_negation");
    ClassicalElimination out;
    detail::FreshNames names(p);
    auto universe = p.universe();

    auto rename = [&](const Literal& l) {
        if (!l.strong_neg) {
            return l;
        }
        Literal fresh{Atom{names.get("neg_" + l.atom.name), l.atom.args}, false};
        out.decode.emplace(fresh.atom, l);
        return fresh;
    };

    for (const auto& r : p.rules) {
        std::vector<Literal> head;
        std::vector<BodyElement> body;
        for (const auto& h : r.head) {
            head.push_back(rename(h));
        }
        for (const auto& e : r.body) {
            body.push_back(BodyElement::objective(rename(e.literal), e.neg_depth));
        }
        out.program.rules.emplace_back(std::move(head), std::move(body));
    }
    for (const auto& l : universe) {
        if (l.strong_neg && std::binary_search(universe.begin(), universe.end(), l.complement())) {
            out.program.rules.emplace_back(
                std::vector<Literal>{},
                std::vector<BodyElement>{BodyElement::objective(l.complement()), BodyElement::objective(rename(l))});
        }
    }
    return out;
}

NestedElimination remove_nested_negation(const Program& p) {
    require_asp(p, "remove_nested_negation");
    NestedElimination out;
    detail::FreshNames names(p);
    std::vector<Literal> order;
    std::map<Literal, Literal> fresh_for;

    for (const auto& r : p.rules) {
        Rule copy = r;
        for (auto& e : copy.body) {
            if (e.neg_depth < 2) {
                continue;
            }
            auto it = fresh_for.find(e.literal);
            if (it == fresh_for.end()) {
                Literal fresh{Atom{names.get("not_" + flat_name(e.literal)), e.literal.atom.args}, false};
                it = fresh_for.emplace(e.literal, fresh).first;
                order.push_back(e.literal);
                out.fresh.insert(fresh);
            }
            e = BodyElement::objective(it->second, 1);
        }
        out.program.rules.push_back(std::move(copy));
    }
    for (const auto& l : order) {
        out.program.rules.emplace_back(std::vector<Literal>{fresh_for.at(l)},
                                       std::vector<BodyElement>{BodyElement::objective(l, 1)});
    }
    return out;
}

Program gl_reduct(const Program& p, const BeliefSet& s) {
    require_asp(p, "gl_reduct");
    Program out;
    for (const auto& r : p.rules) {
        std::vector<BodyElement> body;
        bool blocked = false;
        for (const auto& e : r.body) {
            if (e.neg_depth > 1) {
                throw ContractError("gl_reduct: remove nested negation first");
            }
            if (e.neg_depth == 0) {
                body.push_back(e);
            } else if (s.contains(e.literal)) {
                blocked = true;
                break;
            }
        }
        if (!blocked) {
            out.rules.emplace_back(r.head, std::move(body));
        }
    }
    return out;
}

bool is_model(const Program& positive, const BeliefSet& s) {
    for (const auto& r : positive.rules) {
        bool body_holds = true;
        for (const auto& e : r.body) {
            if (e.neg_depth != 0 || e.is_subjective()) {
                throw ContractError("is_model: program is not positive");
            }
            if (!s.contains(e.literal)) {
                body_holds = false;
                break;
            }
        }
        if (!body_holds) {
            continue;
        }
        bool head_holds = std::any_of(r.head.begin(), r.head.end(), [&](const Literal& h) { return s.contains(h); });
        if (!head_holds) {
            return false;
        }
    }
    return true;
}

} // namespace elp
