#include "elp/translation.hpp"

#include "fresh_names.hpp"

#include <algorithm>
#include <map>

namespace elp {

namespace {

Literal fresh_literal(detail::FreshNames& names, std::set<std::string>& registry, const std::string& prefix,
                      const Literal& l) {
    const std::string& name = names.get(prefix + flat_name(l));
    registry.insert(name);
    return Literal{Atom{name, l.atom.args}, false};
}

} // namespace

Translation translate(const Program& p) {
    Translation t;
    t.ep = extract_ep(p);
    detail::FreshNames names(p);

    for (const auto& item : t.ep.items()) {
        if (item.kind == EpKind::not_k) {
            t.km.push_back(KmAtoms{fresh_literal(names, t.fresh_names, "k0_", item.literal),
                                   fresh_literal(names, t.fresh_names, "k1_", item.literal),
                                   fresh_literal(names, t.fresh_names, "neg_k_", item.literal)});
        } else {
            t.km.push_back(KmAtoms{fresh_literal(names, t.fresh_names, "m0_", item.literal),
                                   fresh_literal(names, t.fresh_names, "m1_", item.literal),
                                   fresh_literal(names, t.fresh_names, "m_", item.literal)});
        }
    }
    t.selector_name = names.get("sel");
    t.deselector_name = names.get("nsel");
    t.fresh_names.insert(t.selector_name);
    t.fresh_names.insert(t.deselector_name);

    for (const auto& r : p.rules) {
        std::vector<BodyElement> body;
        for (const auto& e : r.body) {
            if (!e.is_subjective()) {
                body.push_back(e);
                continue;
            }
            const KmAtoms& km = t.km[*t.ep.index_of(e.subjective_atom())];
            const bool negated = e.neg_depth == 1;
            if (*e.modality == Modality::K) {
                if (negated) {
                    body.push_back(BodyElement::objective(km.helper));
                } else {
                    body.push_back(BodyElement::objective(km.helper, 1));
                    body.push_back(BodyElement::objective(e.literal));
                }
            } else {
                body.push_back(BodyElement::objective(km.helper, negated ? 1 : 0));
            }
        }
        t.program.rules.emplace_back(r.head, std::move(body));
    }

    for (std::size_t i = 0; i < t.ep.size(); ++i) {
        const EpItem& item = t.ep[i];
        const KmAtoms& km = t.km[i];
        if (item.kind == EpKind::not_k) {
            t.program.rules.emplace_back(std::vector<Literal>{km.helper},
                                         std::vector<BodyElement>{BodyElement::objective(km.zero)});
            t.program.rules.emplace_back(
                std::vector<Literal>{km.helper},
                std::vector<BodyElement>{BodyElement::objective(km.one), BodyElement::objective(item.literal, 1)});
        } else {
            t.program.rules.emplace_back(std::vector<Literal>{km.helper},
                                         std::vector<BodyElement>{BodyElement::objective(km.one)});
            t.program.rules.emplace_back(
                std::vector<Literal>{km.helper},
                std::vector<BodyElement>{BodyElement::objective(km.zero), BodyElement::objective(item.literal, 2)});
        }
    }
    return t;
}

Program encode_guess_set(std::span<const Guess> guesses, const Translation& t) {
    if (guesses.empty()) {
        throw ContractError("encode_guesses: empty guess group");
    }
    const std::uint64_t range = full_mask(t.ep.size());
    std::vector<Guess> sorted(guesses.begin(), guesses.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ContractError("encode_guesses: duplicate guess");
    }

    auto sel = [&](const std::string& name, Guess g) {
        return Literal{Atom{name, {std::to_string(g.bits)}}, false};
    };
    Program out;
    std::vector<BodyElement> none_selected;
    for (const Guess& g : guesses) {
        if ((g.bits & ~range) != 0) {
            throw RangeError("guess " + std::to_string(g.bits) + " out of range");
        }
        Literal s = sel(t.selector_name, g);
        Literal ns = sel(t.deselector_name, g);
        out.rules.emplace_back(std::vector<Literal>{s}, std::vector<BodyElement>{BodyElement::objective(ns, 1)});
        out.rules.emplace_back(std::vector<Literal>{ns}, std::vector<BodyElement>{BodyElement::objective(s, 1)});
        none_selected.push_back(BodyElement::objective(ns));
    }
    for (std::size_t i = 0; i < guesses.size(); ++i) {
        for (std::size_t j = i + 1; j < guesses.size(); ++j) {
            out.rules.emplace_back(std::vector<Literal>{},
                                   std::vector<BodyElement>{BodyElement::objective(sel(t.selector_name, guesses[i])),
                                                            BodyElement::objective(sel(t.selector_name, guesses[j]))});
        }
    }
    out.rules.emplace_back(std::vector<Literal>{}, std::move(none_selected));

    for (const Guess& g : guesses) {
        Literal s = sel(t.selector_name, g);
        for (std::size_t i = 0; i < t.ep.size(); ++i) {
            const KmAtoms& km = t.km[i];
            // not K l in Phi means "K l is false" (k0); M l in Phi means "M l is true" (m1).
            const bool bit = g.test(i);
            const Literal& head = t.ep[i].kind == EpKind::not_k ? (bit ? km.zero : km.one) : (bit ? km.one : km.zero);
            out.rules.emplace_back(std::vector<Literal>{head}, std::vector<BodyElement>{BodyElement::objective(s)});
        }
    }
    return out;
}

Program encode_guesses(std::span<const Guess> group, const Translation& t) {
    if (!group.empty()) {
        const int k = popcount(group.front().bits);
        for (const Guess& g : group) {
            if (popcount(g.bits) != k) {
                throw ContractError("encode_guesses: guesses in one group must have equal popcount");
            }
        }
    }
    return encode_guess_set(group, t);
}

Program with_guesses(const Translation& t, std::span<const Guess> group) {
    Program out = t.program;
    Program g = encode_guesses(group, t);
    out.rules.insert(out.rules.end(), std::make_move_iterator(g.rules.begin()), std::make_move_iterator(g.rules.end()));
    return out;
}

BeliefSet strip_fresh(const BeliefSet& s, const std::set<std::string>& fresh) {
    std::vector<Literal> kept;
    for (const auto& l : s) {
        if (!fresh.count(l.atom.name)) {
            kept.push_back(l);
        }
    }
    return BeliefSet(std::move(kept));
}

std::vector<CandidateGroup> aggregate(const AnswerSetResult& results, const Translation& t,
                                      std::span<const Guess> submitted) {
    std::map<Guess, BeliefSets> groups;
    for (const auto& s : results.sets) {
        Guess g;
        for (std::size_t i = 0; i < t.ep.size(); ++i) {
            const KmAtoms& km = t.km[i];
            const bool zero = s.contains(km.zero);
            const bool one = s.contains(km.one);
            if (zero == one) {
                throw ConsistencyError("answer set " + to_string(s) + " does not fix a value for " + to_string(t.ep[i]));
            }
            const bool bit = t.ep[i].kind == EpKind::not_k ? zero : one;
            if (bit) {
                g.bits |= std::uint64_t{1} << i;
            }
        }
        if (std::find(submitted.begin(), submitted.end(), g) == submitted.end()) {
            throw ConsistencyError("answer set decodes to guess " + std::to_string(g.bits) +
                                   ", which was not submitted");
        }
        groups[g].push_back(strip_fresh(s, t.fresh_names));
    }
    std::vector<CandidateGroup> out;
    for (auto& [g, sets] : groups) {
        normalize(sets);
        out.push_back(CandidateGroup{g, std::move(sets)});
    }
    return out;
}

bool verify_group(const CandidateGroup& c, const EpOrder& e) {
    if (c.sets.empty()) {
        return false;
    }
    auto in_every = [&](const Literal& l) {
        return std::all_of(c.sets.begin(), c.sets.end(), [&](const BeliefSet& s) { return s.contains(l); });
    };
    auto in_some = [&](const Literal& l) {
        return std::any_of(c.sets.begin(), c.sets.end(), [&](const BeliefSet& s) { return s.contains(l); });
    };
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Literal& l = e[i].literal;
        const bool bit = c.guess.test(i);
        bool ok = true;
        if (e[i].kind == EpKind::not_k) {
            ok = bit ? !in_every(l) : in_every(l); // k0 : k1
        } else {
            ok = bit ? in_some(l) : !in_some(l); // m1 : m0
        }
        if (!ok) {
            return false;
        }
    }
    return true;
}

} // namespace elp
