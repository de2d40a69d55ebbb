#pragma once

#include "elp/errors.hpp"
#include "elp/model.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>

namespace elp {

// ---------------------------------------------------------------------------
// Program transformations
// ---------------------------------------------------------------------------

struct ClassicalElimination {
    Program program;
    /// Fresh positive atom -> the classically negated literal it stands for.
    std::map<Atom, Literal> decode;
};

/// Replaces every `-p(t)` by a fresh atom `neg_p(t)` and adds `:- p(t), neg_p(t).`
/// for each pair where both occur. Requires an ASP program.
ClassicalElimination eliminate_classical_negation(const Program& p);

struct NestedElimination {
    Program program;
    /// Atoms introduced for `not not l`; answer sets are reported modulo them.
    std::set<Literal> fresh;
};

/// Rewrites each `not not l` as `not l'` and adds `l' :- not l.` once per
/// distinct l, where l' is a fresh atom `not_l`.
NestedElimination remove_nested_negation(const Program& p);

/// Gelfond-Lifschitz reduct. Rules with `not l`, l in s, are dropped; the
/// remaining `not l` elements are erased. Requires neg_depth <= 1.
Program gl_reduct(const Program& p, const BeliefSet& s);

/// Every rule of the positive program whose body holds in s has a head
/// literal in s.
bool is_model(const Program& positive, const BeliefSet& s);

// ---------------------------------------------------------------------------
// Engines
// ---------------------------------------------------------------------------

enum class EngineSource { internal, external };

struct AnswerSetResult {
    BeliefSets sets; // sorted, pairwise distinct
    EngineSource source = EngineSource::internal;
};

/// Computes AS(P) for ground ASP programs. Implementations are not required
/// to be thread-safe; parallel callers clone one engine per worker.
class AnswerSetEngine {
public:
    virtual ~AnswerSetEngine() = default;

    virtual AnswerSetResult solve(const Program& p) = 0;
    virtual std::unique_ptr<AnswerSetEngine> clone() const = 0;
    virtual std::string describe() const = 0;
};

struct InternalEngineOptions {
    enum class Strategy {
        /// Backtracking subset enumeration with unit and support propagation.
        propagate,
        /// Plain enumeration of all subsets of the head universe.
        brute_force,
    };

    Strategy strategy = Strategy::propagate;
    /// Maximum number of atoms in the restricted universe; 0 selects the
    /// strategy default.
    std::size_t atom_cap = 0;

    std::size_t effective_cap() const;
};

inline constexpr std::size_t kBruteForceAtomCap = 22;
inline constexpr std::size_t kPropagateAtomCap = 4096;

class InternalEngine final : public AnswerSetEngine {
public:
    explicit InternalEngine(InternalEngineOptions options = {}) : options_(options) {}

    AnswerSetResult solve(const Program& p) override;
    std::unique_ptr<AnswerSetEngine> clone() const override;
    std::string describe() const override;

    const InternalEngineOptions& options() const { return options_; }

private:
    InternalEngineOptions options_;
};

/// AS(p) using the internal engine. Throws CapacityError when the restricted
/// universe exceeds the cap and ContractError for non-ASP input.
AnswerSetResult answer_sets(const Program& p, const InternalEngineOptions& options = {});

} // namespace elp
