#pragma once

#include "elp/asp.hpp"
#include "elp/model.hpp"

#include <set>
#include <span>
#include <string>
#include <vector>

namespace elp {

/// Fresh atoms standing for one epistemic negation. For `not K l` these are
/// the k-atoms k0_l, k1_l and the helper neg_k_l (read as the classical
/// negation of k_l); for `M l` the m-atoms m0_l, m1_l and m_l. A classically
/// negated l is spelled with a leading `2` (k0_2p for -p).
struct KmAtoms {
    Literal zero;   // k0_l / m0_l
    Literal one;    // k1_l / m1_l
    Literal helper; // neg_k_l / m_l
};

/// Symbol table of a translated program.
struct Translation {
    Program program; // Pi' (no guess rules)
    EpOrder ep;
    std::vector<KmAtoms> km; // parallel to ep
    std::string selector_name;
    std::string deselector_name;
    /// Every fresh predicate name; stripped from reported belief sets.
    std::set<std::string> fresh_names;
};

/// Pi': subjective literals replaced by
///
///     K l     -> not neg_k_l, l        not K l -> neg_k_l
///     M l     -> m_l                   not M l -> not m_l
///
/// plus, once per Ep item, `neg_k_l :- k0_l.  neg_k_l :- k1_l, not l.` or
/// `m_l :- m1_l.  m_l :- m0_l, not not l.`
Translation translate(const Program& p);

/// ASP(G) for a group of equal-popcount guesses. Each guess X gets a
/// selector sel(X) chosen by an even cycle with nsel(X); exactly one
/// selector holds. sel(X) derives k0_l (bit 1) or k1_l (bit 0) for
/// `not K l` items and m1_l (bit 1) or m0_l (bit 0) for `M l` items.
/// Throws ContractError for an empty group, duplicate guesses, or mixed
/// popcounts.
Program encode_guesses(std::span<const Guess> group, const Translation& t);

/// As encode_guesses without the equal-popcount requirement; the monolithic
/// search encodes every guess at once.
Program encode_guess_set(std::span<const Guess> guesses, const Translation& t);

/// Pi' with ASP(G) appended.
Program with_guesses(const Translation& t, std::span<const Guess> group);

struct CandidateGroup {
    Guess guess;
    BeliefSets sets; // k-/m-atoms and helpers removed
};

/// Groups answer sets of Pi'' by their k-/m-atoms and decodes each group to
/// its guess. Throws ConsistencyError for answer sets whose k-/m-atoms do
/// not decode to a member of `submitted`. Result ordered by guess value.
std::vector<CandidateGroup> aggregate(const AnswerSetResult& results, const Translation& t,
                                      std::span<const Guess> submitted);

/// The verification conditions on a candidate group:
///   k1_l: l in every set          k0_l: l missing from some set
///   m1_l: l in some set           m0_l: l in no set
bool verify_group(const CandidateGroup& c, const EpOrder& e);

/// Removes every literal whose predicate is one of `fresh`.
BeliefSet strip_fresh(const BeliefSet& s, const std::set<std::string>& fresh);

} // namespace elp
