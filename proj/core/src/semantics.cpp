#include "elp/semantics.hpp"

#include <algorithm>

namespace elp {

bool satisfies(const BeliefSets& w, const SubjectiveAtom& s, bool outer_not) {
    if (w.empty()) {
        throw ContractError("satisfaction is only defined for a non-empty set of belief sets");
    }
    bool holds = false;
    if (s.modality == Modality::K) {
        holds = std::all_of(w.begin(), w.end(), [&](const BeliefSet& a) { return a.contains(s.literal); });
    } else {
        holds = std::any_of(w.begin(), w.end(), [&](const BeliefSet& a) { return a.contains(s.literal); });
    }
    return outer_not ? !holds : holds;
}

Guess phi_of(const EpOrder& e, const BeliefSets& w) {
    if (w.empty()) {
        throw ContractError("phi_of: empty set of belief sets");
    }
    Guess g;
    for (std::size_t i = 0; i < e.size() && i < kMaxEpItems; ++i) {
        const EpItem& item = e[i];
        bool sat = item.kind == EpKind::not_k ? satisfies(w, {Modality::K, item.literal}, true)
                                              : satisfies(w, {Modality::M, item.literal}, false);
        if (sat) {
            g.bits |= std::uint64_t{1} << i;
        }
    }
    return g;
}

Program reduct_by_table(const Program& p, const SatisfactionTest& satisfied) {
    Program out;
    for (const auto& r : p.rules) {
        std::vector<BodyElement> body;
        bool deleted = false;
        for (const auto& e : r.body) {
            if (!e.is_subjective()) {
                body.push_back(e);
                continue;
            }
            const bool sat = satisfied(e.subjective_atom());
            const bool negated = e.neg_depth == 1;
            if (*e.modality == Modality::K) {
                if (!negated) {
                    if (sat) {
                        body.push_back(BodyElement::objective(e.literal));
                    } else {
                        deleted = true;
                    }
                } else if (sat) {
                    body.push_back(BodyElement::objective(e.literal, 1));
                }
            } else {
                if (!negated) {
                    if (!sat) {
                        body.push_back(BodyElement::objective(e.literal, 2));
                    }
                } else if (!sat) {
                    body.push_back(BodyElement::objective(e.literal, 1));
                } else {
                    deleted = true;
                }
            }
            if (deleted) {
                break;
            }
        }
        if (!deleted) {
            out.rules.emplace_back(r.head, std::move(body));
        }
    }
    return out;
}

Program modal_reduct(const Program& p, const BeliefSets& w) {
    if (w.empty()) {
        throw ContractError("modal_reduct: empty set of belief sets");
    }
    return reduct_by_table(p, [&](const SubjectiveAtom& s) { return satisfies(w, s); });
}

Program epistemic_reduct(const Program& p, Guess g, const EpOrder& e) {
    return reduct_by_table(p, [&](const SubjectiveAtom& s) {
        auto idx = e.index_of(s);
        if (!idx) {
            throw ContractError("epistemic_reduct: " + to_string(s.literal) + " has no Ep item");
        }
        const bool in_phi = g.test(*idx);
        // K l is the complement of the item `not K l`; M l is the item itself.
        return s.modality == Modality::K ? !in_phi : in_phi;
    });
}

CandidateView check_candidate(const Program& p, Guess g, const EpOrder& e, AnswerSetEngine& engine) {
    CandidateView view;
    view.phi = g;
    view.sets = engine.solve(epistemic_reduct(p, g, e)).sets;
    view.verifiable = !view.sets.empty() && phi_of(e, view.sets) == g;
    return view;
}

void sort_world_views(std::vector<WorldView>& views) {
    std::sort(views.begin(), views.end(), [](const WorldView& a, const WorldView& b) {
        int pa = popcount(a.phi.bits);
        int pb = popcount(b.phi.bits);
        if (pa != pb) {
            return pa > pb;
        }
        return a.phi.bits < b.phi.bits;
    });
}

std::vector<WorldView> maximal_views(const std::vector<WorldView>& views) {
    std::vector<WorldView> out;
    for (const auto& v : views) {
        bool dominated = std::any_of(views.begin(), views.end(),
                                     [&](const WorldView& o) { return is_strict_subset(v.phi, o.phi); });
        if (!dominated) {
            out.push_back(v);
        }
    }
    return out;
}

std::vector<WorldView> world_views_oracle(const Program& p, SemanticsMode mode, AnswerSetEngine& engine,
                                          std::size_t cap) {
    EpOrder e = extract_ep(p);
    if (e.size() > cap) {
        throw CapacityError("oracle enumerates 2^" + std::to_string(e.size()) + " guesses, above the cap of 2^" +
                            std::to_string(cap));
    }
    std::vector<WorldView> verified;
    const std::uint64_t count = std::uint64_t{1} << e.size();
    for (std::uint64_t x = 0; x < count; ++x) {
        CandidateView c = check_candidate(p, Guess{x}, e, engine);
        if (c.verifiable) {
            verified.push_back(WorldView{c.phi, std::move(c.sets)});
        }
    }
    if (mode == SemanticsMode::se16) {
        verified = maximal_views(verified);
    }
    sort_world_views(verified);
    return verified;
}

Program se_reduct(const Program& p, Guess g, const EpOrder& e) {
    // Shen-Eiter form of a subjective literal: `outer` default negations in
    // front of enaf, `inner` default negations on its argument.
    struct SeForm {
        int outer;
        int inner;
    };
    Program out;
    for (const auto& r : p.rules) {
        std::vector<BodyElement> body;
        bool useless = false;
        for (const auto& el : r.body) {
            if (!el.is_subjective()) {
                body.push_back(el);
                continue;
            }
            const bool k = *el.modality == Modality::K;
            const bool negated = el.neg_depth == 1;
            SeForm form{};
            if (k) {
                form = negated ? SeForm{0, 0} : SeForm{1, 0}; // enaf l / -enaf l
            } else {
                form = negated ? SeForm{1, 1} : SeForm{0, 1}; // -enaf -l / enaf -l
            }
            auto idx = e.index_of(el.subjective_atom());
            if (!idx) {
                throw ContractError("se_reduct: " + to_string(el.literal) + " has no Ep item");
            }
            if (g.test(*idx)) {
                // enaf F -> true
                if (form.outer % 2 == 1) {
                    useless = true;
                    break;
                }
                continue;
            }
            // enaf F -> -F; an even number of default negations collapses to l.
            const int total = form.outer + 1 + form.inner;
            body.push_back(BodyElement::objective(el.literal, total % 2));
        }
        if (!useless) {
            out.rules.emplace_back(r.head, std::move(body));
        }
    }
    return out;
}

bool theorem1_check(const Program& p, const WorldView& wv, AnswerSetEngine& engine) {
    if (wv.belief_sets.empty()) {
        return false;
    }
    EpOrder e = extract_ep(p);
    BeliefSets expected = wv.belief_sets;
    normalize(expected);
    const auto se_sets = engine.solve(se_reduct(p, wv.phi, e)).sets;
    if (se_sets != expected) {
        return false;
    }
    const auto modal_sets = engine.solve(modal_reduct(p, expected)).sets;
    return modal_sets == expected;
}

} // namespace elp
