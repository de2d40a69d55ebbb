#include "elp/model.hpp"

#include "elp/errors.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace elp {

Literal make_literal(std::string name, std::vector<std::string> args, bool strong_neg) {
    return Literal{Atom{std::move(name), std::move(args)}, strong_neg};
}

BodyElement BodyElement::objective(Literal l, int neg_depth) {
    return BodyElement{std::move(l), std::nullopt, neg_depth};
}

BodyElement BodyElement::subjective(Modality m, Literal l, int neg_depth) {
    return BodyElement{std::move(l), m, neg_depth};
}

SubjectiveAtom BodyElement::subjective_atom() const {
    if (!modality) {
        throw ContractError("body element is objective");
    }
    return SubjectiveAtom{*modality, literal};
}

Rule::Rule(std::vector<Literal> h, std::vector<BodyElement> b) : body(std::move(b)) {
    head.reserve(h.size());
    for (auto& l : h) {
        if (std::find(head.begin(), head.end(), l) == head.end()) {
            head.push_back(std::move(l));
        }
    }
}

bool Rule::has_subjective() const {
    return std::any_of(body.begin(), body.end(), [](const BodyElement& e) { return e.is_subjective(); });
}

bool Program::is_asp() const {
    return std::none_of(rules.begin(), rules.end(), [](const Rule& r) { return r.has_subjective(); });
}

std::vector<Literal> Program::universe() const {
    std::set<Literal> seen;
    for (const auto& r : rules) {
        seen.insert(r.head.begin(), r.head.end());
        for (const auto& e : r.body) {
            seen.insert(e.literal);
        }
    }
    return {seen.begin(), seen.end()};
}

int Program::max_neg_depth() const {
    int depth = 0;
    for (const auto& r : rules) {
        for (const auto& e : r.body) {
            if (!e.is_subjective()) {
                depth = std::max(depth, e.neg_depth);
            }
        }
    }
    return depth;
}

BeliefSet::BeliefSet(std::vector<Literal> literals) : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    literals_.erase(std::unique(literals_.begin(), literals_.end()), literals_.end());
    for (const auto& l : literals_) {
        if (l.strong_neg && contains(l.complement())) {
            throw ContractError("inconsistent belief set: contains " + to_string(l) + " and its complement");
        }
    }
}

bool BeliefSet::contains(const Literal& l) const {
    return std::binary_search(literals_.begin(), literals_.end(), l);
}

void normalize(BeliefSets& sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

EpOrder::EpOrder(std::vector<EpItem> items) : items_(std::move(items)) {
    for (std::size_t i = 0; i < items_.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (items_[i] == items_[j]) {
                throw ContractError("duplicate Ep item " + to_string(items_[i]));
            }
        }
    }
}

std::optional<std::size_t> EpOrder::index_of(const EpItem& item) const {
    auto it = std::find(items_.begin(), items_.end(), item);
    if (it == items_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - items_.begin());
}

std::optional<std::size_t> EpOrder::index_of(const SubjectiveAtom& s) const {
    EpKind kind = s.modality == Modality::K ? EpKind::not_k : EpKind::m;
    return index_of(EpItem{kind, s.literal});
}

EpOrder extract_ep(const Program& program) {
    std::vector<EpItem> items;
    for (const auto& r : program.rules) {
        for (const auto& e : r.body) {
            if (!e.is_subjective()) {
                continue;
            }
            EpItem item{*e.modality == Modality::K ? EpKind::not_k : EpKind::m, e.literal};
            if (std::find(items.begin(), items.end(), item) == items.end()) {
                items.push_back(std::move(item));
            }
        }
    }
    return EpOrder(std::move(items));
}

int popcount(std::uint64_t x) { return std::popcount(x); }

std::uint64_t full_mask(std::size_t n) {
    if (n >= 64) {
        return ~std::uint64_t{0};
    }
    return (std::uint64_t{1} << n) - 1;
}

std::vector<EpItem> guess_to_phi(Guess g, const EpOrder& e) {
    if (e.size() > kMaxEpItems || (g.bits & ~full_mask(e.size())) != 0) {
        throw RangeError("guess " + std::to_string(g.bits) + " out of range for " + std::to_string(e.size()) +
                         " epistemic negations");
    }
    std::vector<EpItem> phi;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (g.test(i)) {
            phi.push_back(e[i]);
        }
    }
    return phi;
}

Guess phi_to_guess(std::span<const EpItem> phi, const EpOrder& e) {
    Guess g;
    for (const auto& item : phi) {
        auto idx = e.index_of(item);
        if (!idx || *idx >= kMaxEpItems) {
            throw RangeError("not an epistemic negation of this program: " + to_string(item));
        }
        g.bits |= std::uint64_t{1} << *idx;
    }
    return g;
}

bool is_strict_subset(Guess g1, Guess g2) { return (g1.bits & g2.bits) == g1.bits && g1.bits != g2.bits; }

std::string to_string(const Atom& a) {
    std::string out = a.name;
    if (!a.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) {
                out += ',';
            }
            out += a.args[i];
        }
        out += ')';
    }
    return out;
}

std::string to_string(const Literal& l) { return (l.strong_neg ? "-" : "") + to_string(l.atom); }

std::string to_string(const EpItem& item) {
    return (item.kind == EpKind::not_k ? "not K " : "M ") + to_string(item.literal);
}

std::string to_string(const BeliefSet& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& l : s) {
        out += first ? " " : ", ";
        out += to_string(l);
        first = false;
    }
    out += " }";
    return out;
}

std::string flat_name(const Literal& l) { return (l.strong_neg ? "2" : "") + l.atom.name; }

} // namespace elp
