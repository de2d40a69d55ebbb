#include "elp/asp.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <unordered_map>

namespace elp {

std::size_t InternalEngineOptions::effective_cap() const {
    if (atom_cap != 0) {
        return atom_cap;
    }
    return strategy == Strategy::brute_force ? kBruteForceAtomCap : kPropagateAtomCap;
}

namespace {

// Ground program over atom indices 0..n-1. All literals are positive atoms:
// classical negation and nested negation are compiled away beforehand.
struct CompiledRule {
    std::vector<int> head;
    std::vector<int> pos;
    std::vector<int> neg;
};

struct Compiled {
    std::vector<Atom> atoms;
    std::vector<CompiledRule> rules;
};

// Only atoms occurring in some head can be true in an answer set. Rules with a
// positive body atom outside that universe never fire; negative body atoms
// outside it are always satisfied.
Compiled compile(const Program& p) {
    Compiled c;
    std::map<Atom, int> index;
    for (const auto& r : p.rules) {
        for (const auto& h : r.head) {
            if (index.emplace(h.atom, static_cast<int>(c.atoms.size())).second) {
                c.atoms.push_back(h.atom);
            }
        }
    }
    for (const auto& r : p.rules) {
        CompiledRule cr;
        bool dead = false;
        for (const auto& h : r.head) {
            int v = index.at(h.atom);
            if (std::find(cr.head.begin(), cr.head.end(), v) == cr.head.end()) {
                cr.head.push_back(v);
            }
        }
        for (const auto& e : r.body) {
            auto it = index.find(e.literal.atom);
            if (e.neg_depth == 0) {
                if (it == index.end()) {
                    dead = true;
                    break;
                }
                cr.pos.push_back(it->second);
            } else if (it != index.end()) {
                cr.neg.push_back(it->second);
            }
        }
        if (!dead) {
            c.rules.push_back(std::move(cr));
        }
    }
    return c;
}

using AnswerCallback = std::function<void(const std::vector<bool>&)>;

// ---------------------------------------------------------------------------
// Brute force: every subset of the universe, minimality by every proper subset
// ---------------------------------------------------------------------------

void enumerate_brute_force(const Compiled& c, const AnswerCallback& emit) {
    const std::size_t n = c.atoms.size();
    struct MaskRule {
        std::uint64_t head = 0, pos = 0, neg = 0;
    };
    std::vector<MaskRule> rules;
    for (const auto& r : c.rules) {
        MaskRule m;
        for (int v : r.head) m.head |= std::uint64_t{1} << v;
        for (int v : r.pos) m.pos |= std::uint64_t{1} << v;
        for (int v : r.neg) m.neg |= std::uint64_t{1} << v;
        rules.push_back(m);
    }
    auto satisfies_reduct = [&](std::uint64_t model, std::uint64_t guess) {
        for (const auto& r : rules) {
            if ((r.neg & guess) != 0) {
                continue;
            }
            if ((r.pos & ~model) == 0 && (r.head & model) == 0) {
                return false;
            }
        }
        return true;
    };
    const std::uint64_t limit = std::uint64_t{1} << n;
    std::vector<bool> assignment(n);
    for (std::uint64_t s = 0; s < limit; ++s) {
        if (!satisfies_reduct(s, s)) {
            continue;
        }
        bool minimal = true;
        if (s != 0) {
            for (std::uint64_t m = (s - 1) & s;; m = (m - 1) & s) {
                if (satisfies_reduct(m, s)) {
                    minimal = false;
                    break;
                }
                if (m == 0) {
                    break;
                }
            }
        }
        if (minimal) {
            for (std::size_t i = 0; i < n; ++i) {
                assignment[i] = (s >> i) & 1u;
            }
            emit(assignment);
        }
    }
}

// ---------------------------------------------------------------------------
// Small DPLL used for the minimality check of disjunctive reducts
// ---------------------------------------------------------------------------

// Literals are 2*v (v true) and 2*v+1 (v false).
class TinySat {
public:
    TinySat(std::size_t vars, std::vector<std::vector<int>> clauses)
        : clauses_(std::move(clauses)), value_(vars, -1) {}

    bool solve() { return search(); }

private:
    int lit_value(int lit) const {
        int v = value_[lit >> 1];
        if (v < 0) {
            return -1;
        }
        return (lit & 1) ? 1 - v : v;
    }

    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses_) {
                int unassigned = -1;
                int open = 0;
                bool sat = false;
                for (int lit : cl) {
                    int lv = lit_value(lit);
                    if (lv == 1) {
                        sat = true;
                        break;
                    }
                    if (lv < 0) {
                        ++open;
                        unassigned = lit;
                    }
                }
                if (sat) {
                    continue;
                }
                if (open == 0) {
                    return false;
                }
                if (open == 1) {
                    value_[unassigned >> 1] = (unassigned & 1) ? 0 : 1;
                    trail.push_back(unassigned >> 1);
                    changed = true;
                }
            }
        }
        return true;
    }

    bool search() {
        std::vector<int> trail;
        bool ok = propagate(trail);
        if (ok) {
            auto it = std::find(value_.begin(), value_.end(), -1);
            if (it == value_.end()) {
                return true;
            }
            auto v = static_cast<std::size_t>(it - value_.begin());
            for (int val : {0, 1}) {
                value_[v] = static_cast<std::int8_t>(val);
                if (search()) {
                    return true;
                }
            }
            value_[v] = -1;
        }
        for (int v : trail) {
            value_[v] = -1;
        }
        return false;
    }

    std::vector<std::vector<int>> clauses_;
    std::vector<std::int8_t> value_;
};

// ---------------------------------------------------------------------------
// Backtracking enumeration with unit and support propagation
// ---------------------------------------------------------------------------

class Enumerator {
public:
    explicit Enumerator(const Compiled& c) : c_(c), n_(c.atoms.size()), value_(n_, -1) {
        occurs_.resize(n_);
        head_of_.resize(n_);
        touches_.resize(n_);
        for (std::size_t ri = 0; ri < c.rules.size(); ++ri) {
            const auto& r = c.rules[ri];
            std::vector<int> lits;
            for (int v : r.pos) lits.push_back(2 * v + 1);
            for (int v : r.neg) lits.push_back(2 * v);
            for (int v : r.head) lits.push_back(2 * v);
            std::sort(lits.begin(), lits.end());
            lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
            bool tautology = false;
            for (std::size_t i = 1; i < lits.size(); ++i) {
                if ((lits[i] >> 1) == (lits[i - 1] >> 1)) {
                    tautology = true;
                }
            }
            if (!tautology) {
                int ci = static_cast<int>(clauses_.size());
                for (int lit : lits) {
                    occurs_[lit >> 1].push_back(ci);
                }
                clauses_.push_back(std::move(lits));
            }
            for (int v : r.head) head_of_[v].push_back(static_cast<int>(ri));
            auto touch = [&](int v) {
                if (touches_[v].empty() || touches_[v].back() != static_cast<int>(ri)) {
                    touches_[v].push_back(static_cast<int>(ri));
                }
            };
            for (int v : r.pos) touch(v);
            for (int v : r.neg) touch(v);
            for (int v : r.head) touch(v);
        }
    }

    void run(const AnswerCallback& emit) {
        for (const auto& cl : clauses_) {
            if (cl.empty()) {
                return;
            }
            if (cl.size() == 1 && !assign(cl[0] >> 1, (cl[0] & 1) ? 0 : 1)) {
                return;
            }
        }
        for (std::size_t v = 0; v < n_; ++v) {
            if (value_[v] < 0 && !supportable(static_cast<int>(v)) && !assign(static_cast<int>(v), 0)) {
                return;
            }
        }
        emit_ = &emit;
        search();
    }

private:
    int lit_value(int lit) const {
        int v = value_[lit >> 1];
        if (v < 0) {
            return -1;
        }
        return (lit & 1) ? 1 - v : v;
    }

    // Returns false on an immediate contradiction.
    bool assign(int v, int val) {
        if (value_[v] >= 0) {
            return value_[v] == val;
        }
        value_[v] = static_cast<std::int8_t>(val);
        trail_.push_back(v);
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            value_[trail_.back()] = -1;
            trail_.pop_back();
        }
        qhead_ = std::min(qhead_, mark);
    }

    bool can_support(const CompiledRule& r, int h) const {
        for (int v : r.pos) {
            if (value_[v] == 0) return false;
        }
        for (int v : r.neg) {
            if (value_[v] == 1) return false;
        }
        for (int v : r.head) {
            if (v != h && value_[v] == 1) return false;
        }
        return true;
    }

    bool supportable(int h) const {
        for (int ri : head_of_[h]) {
            if (can_support(c_.rules[ri], h)) {
                return true;
            }
        }
        return false;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            int v = trail_[qhead_++];
            for (int ci : occurs_[v]) {
                const auto& cl = clauses_[ci];
                int open = 0;
                int last = -1;
                bool sat = false;
                for (int lit : cl) {
                    int lv = lit_value(lit);
                    if (lv == 1) {
                        sat = true;
                        break;
                    }
                    if (lv < 0) {
                        ++open;
                        last = lit;
                    }
                }
                if (sat) continue;
                if (open == 0) return false;
                if (open == 1 && !assign(last >> 1, (last & 1) ? 0 : 1)) return false;
            }
            for (int ri : touches_[v]) {
                for (int h : c_.rules[ri].head) {
                    if (value_[h] == 0 || supportable(h)) {
                        continue;
                    }
                    if (value_[h] == 1 || !assign(h, 0)) {
                        return false;
                    }
                }
            }
        }
        return true;
    }

    void search() {
        if (!propagate()) {
            return;
        }
        while (next_ < n_ && value_[next_] >= 0) {
            ++next_;
        }
        if (next_ == n_) {
            if (stable()) {
                std::vector<bool> s(n_);
                for (std::size_t i = 0; i < n_; ++i) s[i] = value_[i] == 1;
                (*emit_)(s);
            }
            return;
        }
        const std::size_t saved_next = next_;
        const int v = static_cast<int>(next_);
        const std::size_t mark = trail_.size();
        for (int val : {0, 1}) {
            assign(v, val);
            search();
            undo(mark);
            next_ = saved_next;
        }
    }

    // S is stable iff it is a minimal model of its reduct.
    bool stable() const {
        std::vector<const CompiledRule*> reduct;
        bool disjunctive = false;
        for (const auto& r : c_.rules) {
            if (std::any_of(r.neg.begin(), r.neg.end(), [&](int v) { return value_[v] == 1; })) continue;
            if (std::any_of(r.pos.begin(), r.pos.end(), [&](int v) { return value_[v] == 0; })) continue;
            int true_heads = 0;
            for (int h : r.head) true_heads += value_[h] == 1;
            disjunctive |= true_heads > 1;
            reduct.push_back(&r);
        }
        if (!disjunctive) {
            return least_model_is_total(reduct);
        }
        return !smaller_model_exists(reduct);
    }

    // Normal case: the least model of the definite reduct must equal S.
    bool least_model_is_total(const std::vector<const CompiledRule*>& reduct) const {
        std::vector<int> missing(reduct.size());
        std::unordered_map<int, std::vector<int>> watch;
        std::vector<int> queue;
        std::vector<char> derived(n_, 0);
        auto derive = [&](const CompiledRule& r) {
            for (int h : r.head) {
                if (value_[h] == 1 && !derived[h]) {
                    derived[h] = 1;
                    queue.push_back(h);
                }
            }
        };
        for (std::size_t i = 0; i < reduct.size(); ++i) {
            missing[i] = static_cast<int>(reduct[i]->pos.size());
            for (int v : reduct[i]->pos) watch[v].push_back(static_cast<int>(i));
            if (missing[i] == 0) derive(*reduct[i]);
        }
        for (std::size_t qi = 0; qi < queue.size(); ++qi) {
            auto it = watch.find(queue[qi]);
            if (it == watch.end()) continue;
            for (int ri : it->second) {
                if (--missing[ri] == 0) derive(*reduct[ri]);
            }
        }
        for (std::size_t v = 0; v < n_; ++v) {
            if (value_[v] == 1 && !derived[v]) return false;
        }
        return true;
    }

    bool smaller_model_exists(const std::vector<const CompiledRule*>& reduct) const {
        std::vector<int> local(n_, -1);
        std::size_t m = 0;
        for (std::size_t v = 0; v < n_; ++v) {
            if (value_[v] == 1) local[v] = static_cast<int>(m++);
        }
        std::vector<std::vector<int>> clauses;
        for (const auto* r : reduct) {
            std::vector<int> cl;
            for (int v : r->pos) cl.push_back(2 * local[v] + 1);
            for (int h : r->head) {
                if (local[h] >= 0) cl.push_back(2 * local[h]);
            }
            clauses.push_back(std::move(cl));
        }
        std::vector<int> some_false;
        for (std::size_t i = 0; i < m; ++i) some_false.push_back(2 * static_cast<int>(i) + 1);
        clauses.push_back(std::move(some_false));
        return TinySat(m, std::move(clauses)).solve();
    }

    const Compiled& c_;
    std::size_t n_;
    std::vector<std::int8_t> value_;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> occurs_;
    std::vector<std::vector<int>> head_of_;
    std::vector<std::vector<int>> touches_;
    std::vector<int> trail_;
    std::size_t qhead_ = 0;
    std::size_t next_ = 0;
    const AnswerCallback* emit_ = nullptr;
};

} // namespace

AnswerSetResult answer_sets(const Program& p, const InternalEngineOptions& options) {
    if (!p.is_asp()) {
        throw ContractError("answer_sets: program contains subjective literals");
    }
    auto classical = eliminate_classical_negation(p);
    auto nested = remove_nested_negation(classical.program);
    Compiled c = compile(nested.program);

    const std::size_t cap = options.effective_cap();
    const bool brute = options.strategy == InternalEngineOptions::Strategy::brute_force;
    if (c.atoms.size() > cap || (brute && c.atoms.size() > 62)) {
        throw CapacityError("program has " + std::to_string(c.atoms.size()) +
                            " atoms, above the internal engine cap of " + std::to_string(cap) +
                            "; configure an external solver for larger programs");
    }

    // Projection: drop the nested-negation atoms, decode the classical ones.
    std::vector<std::optional<Literal>> decoded(c.atoms.size());
    for (std::size_t i = 0; i < c.atoms.size(); ++i) {
        Literal plain{c.atoms[i], false};
        if (nested.fresh.count(plain)) {
            continue;
        }
        auto it = classical.decode.find(c.atoms[i]);
        decoded[i] = it == classical.decode.end() ? plain : it->second;
    }

    AnswerSetResult result;
    result.source = EngineSource::internal;
    AnswerCallback collect = [&](const std::vector<bool>& s) {
        std::vector<Literal> lits;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] && decoded[i]) {
                lits.push_back(*decoded[i]);
            }
        }
        result.sets.emplace_back(std::move(lits));
    };
    if (brute) {
        enumerate_brute_force(c, collect);
    } else {
        Enumerator(c).run(collect);
    }
    normalize(result.sets);
    return result;
}

AnswerSetResult InternalEngine::solve(const Program& p) { return answer_sets(p, options_); }

std::unique_ptr<AnswerSetEngine> InternalEngine::clone() const { return std::make_unique<InternalEngine>(options_); }

std::string InternalEngine::describe() const {
    return options_.strategy == InternalEngineOptions::Strategy::brute_force ? "internal:brute-force"
                                                                             : "internal:propagate";
}

} // namespace elp
