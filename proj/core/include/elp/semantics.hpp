#pragma once

#include "elp/asp.hpp"
#include "elp/model.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace elp {

enum class SemanticsMode {
    /// World views with maximal sets of satisfied epistemic negations.
    se16,
    /// No maximality requirement: every reduct-verifiable guess yields a view.
    kwbgz15,
};

/// W |= s, with `outer_not` selecting `not K l` / `not M l`.
/// Throws ContractError for an empty W.
bool satisfies(const BeliefSets& w, const SubjectiveAtom& s, bool outer_not = false);

/// Phi_W: bit i set iff W satisfies Ep item i.
Guess phi_of(const EpOrder& e, const BeliefSets& w);

/// Whether a positive subjective atom (`K l` or `M l`) counts as satisfied.
/// The negated form is satisfied exactly when this returns false.
using SatisfactionTest = std::function<bool(const SubjectiveAtom&)>;

/// The modal-reduct table driven by an arbitrary satisfaction test:
///
///     K l      sat: replace by l          unsat: delete rule
///     not K l  sat: remove                unsat: replace by not l
///     M l      sat: remove                unsat: replace by not not l
///     not M l  sat: replace by not l      unsat: delete rule
Program reduct_by_table(const Program& p, const SatisfactionTest& satisfied);

/// Pi^W.
Program modal_reduct(const Program& p, const BeliefSets& w);

/// Pi^Phi: items of Phi and complements of Ep \ Phi count as satisfied.
Program epistemic_reduct(const Program& p, Guess g, const EpOrder& e);

struct CandidateView {
    Guess phi;
    BeliefSets sets;
    bool verifiable = false;
};

/// AS(Pi^Phi) and the reduct-verifiability verdict for Phi.
CandidateView check_candidate(const Program& p, Guess g, const EpOrder& e, AnswerSetEngine& engine);

inline constexpr std::size_t kOracleEpCap = 16;

/// Every guess is checked; under se16 only the subset-maximal verifiable
/// ones are kept. Result ordered by decreasing popcount, then guess value.
/// Throws CapacityError above `cap` epistemic negations.
std::vector<WorldView> world_views_oracle(const Program& p, SemanticsMode mode, AnswerSetEngine& engine,
                                          std::size_t cap = kOracleEpCap);

/// The epistemic reduct in Shen-Eiter form: each subjective literal is read
/// as an epistemic negation (K l = -enaf l, not K l = enaf l, M l = enaf -l,
/// not M l = -enaf -l with - as default negation), enaf F becomes true when
/// its item is in Phi and -F otherwise, double default negation collapses
/// to the literal, and rules containing -true are dropped.
Program se_reduct(const Program& p, Guess g, const EpOrder& e);

/// AS(se_reduct(p, wv.phi)) == wv.belief_sets and
/// AS(modal_reduct(p, wv.belief_sets)) == wv.belief_sets.
bool theorem1_check(const Program& p, const WorldView& wv, AnswerSetEngine& engine);

/// Orders world views by decreasing popcount, then increasing guess value.
void sort_world_views(std::vector<WorldView>& views);

/// The members of `views` whose guess is not a strict subset of another's.
std::vector<WorldView> maximal_views(const std::vector<WorldView>& views);

} // namespace elp
