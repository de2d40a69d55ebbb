#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace elp {

// ---------------------------------------------------------------------------
// Ground syntax
// ---------------------------------------------------------------------------

/// A ground atom `name(arg1,...,argN)`; arguments are constants.
struct Atom {
    std::string name;
    std::vector<std::string> args;

    auto operator<=>(const Atom&) const = default;
    bool operator==(const Atom&) const = default;
};

/// An objective literal: an atom, optionally under classical negation.
struct Literal {
    Atom atom;
    bool strong_neg = false;

    Literal complement() const { return Literal{atom, !strong_neg}; }

    auto operator<=>(const Literal&) const = default;
    bool operator==(const Literal&) const = default;
};

Literal make_literal(std::string name, std::vector<std::string> args = {}, bool strong_neg = false);

enum class Modality : std::uint8_t { K, M };

/// `K l` or `M l`.
struct SubjectiveAtom {
    Modality modality = Modality::K;
    Literal literal;

    auto operator<=>(const SubjectiveAtom&) const = default;
    bool operator==(const SubjectiveAtom&) const = default;
};

/// One conjunct of a rule body. `neg_depth` counts leading default
/// negations: 0, 1, or 2 (`not not l`, only in ASP-internal programs).
struct BodyElement {
    enum class Kind : std::uint8_t { objective, subjective };

    Literal literal;
    std::optional<Modality> modality;
    int neg_depth = 0;

    static BodyElement objective(Literal l, int neg_depth = 0);
    static BodyElement subjective(Modality m, Literal l, int neg_depth = 0);

    Kind kind() const { return modality ? Kind::subjective : Kind::objective; }
    bool is_subjective() const { return modality.has_value(); }
    SubjectiveAtom subjective_atom() const;

    auto operator<=>(const BodyElement&) const = default;
    bool operator==(const BodyElement&) const = default;
};

/// `h1 | ... | hk :- body.`  An empty head is a constraint.
struct Rule {
    std::vector<Literal> head;
    std::vector<BodyElement> body;

    Rule() = default;
    Rule(std::vector<Literal> h, std::vector<BodyElement> b);

    bool is_constraint() const { return head.empty(); }
    bool is_fact() const { return head.size() == 1 && body.empty(); }
    bool has_subjective() const;

    bool operator==(const Rule&) const = default;
};

struct Program {
    std::vector<Rule> rules;

    /// True iff no subjective body element occurs.
    bool is_asp() const;
    /// Distinct objective literals occurring anywhere, sorted.
    std::vector<Literal> universe() const;
    /// Largest neg_depth used by any objective body element.
    int max_neg_depth() const;

    bool operator==(const Program&) const = default;
};

// ---------------------------------------------------------------------------
// Belief sets and world views
// ---------------------------------------------------------------------------

/// A consistent set of ground literals, stored sorted and deduplicated.
class BeliefSet {
public:
    BeliefSet() = default;
    /// Throws ContractError when `literals` holds a literal and its complement.
    explicit BeliefSet(std::vector<Literal> literals);

    bool contains(const Literal& l) const;
    bool empty() const { return literals_.empty(); }
    std::size_t size() const { return literals_.size(); }
    const std::vector<Literal>& literals() const { return literals_; }
    auto begin() const { return literals_.begin(); }
    auto end() const { return literals_.end(); }

    auto operator<=>(const BeliefSet&) const = default;
    bool operator==(const BeliefSet&) const = default;

private:
    std::vector<Literal> literals_;
};

/// A set of belief sets kept sorted and unique.
using BeliefSets = std::vector<BeliefSet>;

void normalize(BeliefSets& sets);

// ---------------------------------------------------------------------------
// Epistemic negations and guesses
// ---------------------------------------------------------------------------

/// Guess integers are machine words: at most this many Ep items.
inline constexpr std::size_t kMaxEpItems = 64;

enum class EpKind : std::uint8_t { not_k, m };

/// An epistemic negation: `not K l` or `M l`.
struct EpItem {
    EpKind kind = EpKind::not_k;
    Literal literal;

    auto operator<=>(const EpItem&) const = default;
    bool operator==(const EpItem&) const = default;
};

/// The enumeration of Ep(P): item i (0-based) owns bit i of a guess.
class EpOrder {
public:
    EpOrder() = default;
    explicit EpOrder(std::vector<EpItem> items);

    std::size_t size() const { return items_.size(); }
    bool empty() const { return items_.empty(); }
    const EpItem& operator[](std::size_t i) const { return items_[i]; }
    const std::vector<EpItem>& items() const { return items_; }
    std::optional<std::size_t> index_of(const EpItem& item) const;
    /// Index of the Ep item a subjective body element refers to.
    std::optional<std::size_t> index_of(const SubjectiveAtom& s) const;

    bool operator==(const EpOrder&) const = default;

private:
    std::vector<EpItem> items_;
};

/// A subset of Ep(P) as a bitvector: bit i set iff item i is in the subset.
struct Guess {
    std::uint64_t bits = 0;

    bool test(std::size_t i) const { return (bits >> i) & 1u; }

    auto operator<=>(const Guess&) const = default;
    bool operator==(const Guess&) const = default;
};

/// A world view: the verifying guess and its belief sets.
struct WorldView {
    Guess phi;
    BeliefSets belief_sets;

    bool operator==(const WorldView&) const = default;
};

/// Ep(P) in first-occurrence order; `not K l` and `K l` both contribute
/// `not K l`, `M l` and `not M l` both contribute `M l`.
EpOrder extract_ep(const Program& program);

int popcount(std::uint64_t x);

/// All-ones mask over n bits; n may be 64.
std::uint64_t full_mask(std::size_t n);

/// Throws RangeError when g does not fit in e.size() bits.
std::vector<EpItem> guess_to_phi(Guess g, const EpOrder& e);

/// Throws RangeError for items that are not in e.
Guess phi_to_guess(std::span<const EpItem> phi, const EpOrder& e);

bool is_strict_subset(Guess g1, Guess g2);

// ---------------------------------------------------------------------------
// Text forms
// ---------------------------------------------------------------------------

std::string to_string(const Atom& a);
std::string to_string(const Literal& l);
std::string to_string(const EpItem& item);
std::string to_string(const BeliefSet& s);
/// Name usable as the stem of a fresh atom: classical negation is spelled
/// with a leading `2` (`-p` becomes `2p`).
std::string flat_name(const Literal& l);

} // namespace elp
