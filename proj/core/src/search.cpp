#include "elp/search.hpp"

#include "elp/translation.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

namespace elp {

std::optional<std::uint64_t> next_same_popcount(std::uint64_t x, std::size_t n) {
    if (x == 0) {
        return std::nullopt;
    }
    // Gosper's hack.
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    if (r == 0) {
        return std::nullopt; // carried out of the word
    }
    const std::uint64_t y = (((r ^ x) >> 2) / c) | r;
    if ((y & ~full_mask(n)) != 0) {
        return std::nullopt;
    }
    return y;
}

LevelGroupStream::LevelGroupStream(std::size_t n, std::size_t k, std::size_t group_size,
                                   std::optional<FixedBits> fixed)
    : n_(n), group_size_(group_size), fixed_(fixed) {
    if (group_size == 0) {
        throw ContractError("level_groups: group size must be positive");
    }
    if (n > kMaxEpItems) {
        throw CapacityError("level_groups: " + std::to_string(n) + " bits exceed the word width");
    }
    if (k <= n) {
        cursor_ = full_mask(k);
        if (fixed_ && !fixed_->admits(Guess{*cursor_})) {
            if (!advance()) {
                cursor_.reset();
            }
        }
    }
}

bool LevelGroupStream::advance() {
    while (cursor_) {
        cursor_ = next_same_popcount(*cursor_, n_);
        if (cursor_ && (!fixed_ || fixed_->admits(Guess{*cursor_}))) {
            return true;
        }
    }
    return false;
}

std::optional<std::vector<Guess>> LevelGroupStream::next() {
    if (!cursor_) {
        return std::nullopt;
    }
    std::vector<Guess> group;
    group.reserve(group_size_);
    while (cursor_ && group.size() < group_size_) {
        group.push_back(Guess{*cursor_});
        if (!advance()) {
            cursor_.reset();
        }
    }
    return group;
}

std::vector<std::vector<Guess>> level_groups(std::size_t n, std::size_t k, std::size_t group_size,
                                             std::optional<FixedBits> fixed) {
    std::vector<std::vector<Guess>> out;
    LevelGroupStream stream(n, k, group_size, fixed);
    while (auto g = stream.next()) {
        out.push_back(std::move(*g));
    }
    return out;
}

void SearchConfig::validate(std::size_t ep_size) const {
    if (guesses_per_call == 0) {
        throw ContractError("guesses per call must be positive");
    }
    if (workers == 0) {
        throw ContractError("worker count must be positive");
    }
    if (max_world_views && *max_world_views == 0) {
        throw ContractError("max world views must be positive");
    }
    if (level_start && *level_start > ep_size) {
        throw ContractError("level start " + std::to_string(*level_start) + " exceeds |Ep| = " +
                            std::to_string(ep_size));
    }
    if (fixed_bits) {
        if ((fixed_bits->value & ~fixed_bits->mask) != 0) {
            throw ContractError("fixed bit value not covered by its mask");
        }
        if (ep_size < kMaxEpItems && (fixed_bits->mask & ~full_mask(ep_size)) != 0) {
            throw ContractError("fixed bits outside the Ep range");
        }
    }
}

namespace {

bool prune_with(Guess g, const std::vector<WorldView>& found, SemanticsMode mode, Mutant mutant) {
    if (mode == SemanticsMode::kwbgz15 || mutant == Mutant::no_prune) {
        return false;
    }
    return std::any_of(found.begin(), found.end(), [&](const WorldView& w) {
        if (mutant == Mutant::nonstrict_prune) {
            return (g.bits & w.phi.bits) == g.bits;
        }
        return is_strict_subset(g, w.phi);
    });
}

std::string describe_group(const std::vector<Guess>& group) {
    std::string s = "{";
    for (std::size_t i = 0; i < group.size(); ++i) {
        s += (i ? "," : "") + std::to_string(group[i].bits);
    }
    return s + "}";
}

// Results of solving one group; merged into the shared state afterwards.
struct GroupOutcome {
    std::vector<WorldView> views;
    std::vector<Guess> solved;
    std::uint64_t solver_calls = 0;
    std::uint64_t answer_sets = 0;
};

class Searcher {
public:
    Searcher(const Program& p, const SearchConfig& cfg) : p_(p), cfg_(cfg), ep_(extract_ep(p)) {
        if (ep_.size() > kMaxEpItems) {
            throw CapacityError("|Ep| = " + std::to_string(ep_.size()) + " exceeds the " +
                                std::to_string(kMaxEpItems) + "-bit guess encoding");
        }
        cfg_.validate(ep_.size());
        if (cfg_.route == Route::translate) {
            translation_ = translate(p_);
        }
    }

    SearchResult run(AnswerSetEngine& engine) {
        const auto start = std::chrono::steady_clock::now();
        if (cfg_.algorithm == Algorithm::naive) {
            run_naive(engine);
        } else {
            run_levels(engine);
        }
        sort_world_views(found_);
        if (cfg_.max_world_views && found_.size() > *cfg_.max_world_views) {
            found_.resize(*cfg_.max_world_views);
        }
        stats_.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return SearchResult{ep_, std::move(found_), stats_};
    }

private:
    void emit(SearchEvent::Kind kind, std::size_t level, Guess g = {}) {
        if (cfg_.observer) {
            cfg_.observer(SearchEvent{kind, level, g});
        }
    }

    GroupOutcome solve_group(const std::vector<Guess>& group, AnswerSetEngine& engine, bool require_popcount) {
        GroupOutcome out;
        out.solved = group;
        try {
            if (cfg_.route == Route::direct) {
                for (const Guess& g : group) {
                    CandidateView c = check_candidate(p_, g, ep_, engine);
                    ++out.solver_calls;
                    out.answer_sets += c.sets.size();
                    if (c.verifiable) {
                        out.views.push_back(WorldView{g, std::move(c.sets)});
                    }
                }
                return out;
            }
            Program pp = translation_.program;
            Program enc = require_popcount ? encode_guesses(group, translation_)
                                           : encode_guess_set(group, translation_);
            pp.rules.insert(pp.rules.end(), std::make_move_iterator(enc.rules.begin()),
                            std::make_move_iterator(enc.rules.end()));
            AnswerSetResult r = engine.solve(pp);
            ++out.solver_calls;
            out.answer_sets += r.sets.size();
            for (auto& c : aggregate(r, translation_, group)) {
                if (verify_group(c, ep_)) {
                    out.views.push_back(WorldView{c.guess, std::move(c.sets)});
                }
            }
        } catch (const Error& e) {
            throw GuessGroupError("guess group " + describe_group(group) + ": " + e.what(), group);
        }
        return out;
    }

    void run_naive(AnswerSetEngine& engine) {
        const std::size_t n = ep_.size();
        const std::size_t cap = cfg_.route == Route::translate ? kNaiveTranslateEpCap : kNaiveDirectEpCap;
        if (n > cap) {
            throw CapacityError("the monolithic search enumerates 2^" + std::to_string(n) +
                                " guesses; its cap on this route is 2^" + std::to_string(cap));
        }
        std::vector<Guess> all;
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            if (!cfg_.fixed_bits || cfg_.fixed_bits->admits(Guess{x})) {
                all.push_back(Guess{x});
            }
        }
        stats_.levels_visited = 0;
        stats_.guesses_generated = all.size();
        stats_.peak_in_flight_guesses = all.size();
        if (all.empty()) {
            return;
        }
        GroupOutcome out = solve_group(all, engine, false);
        stats_.solver_calls += out.solver_calls;
        stats_.answer_sets_seen += out.answer_sets;
        for (const Guess& g : out.solved) {
            emit(SearchEvent::Kind::solved, static_cast<std::size_t>(popcount(g.bits)), g);
        }
        for (auto& v : out.views) {
            emit(SearchEvent::Kind::verified, static_cast<std::size_t>(popcount(v.phi.bits)), v.phi);
        }
        found_ = std::move(out.views);
        if (cfg_.mode == SemanticsMode::se16 && cfg_.mutant != Mutant::no_prune) {
            found_ = maximal_views(found_);
        }
    }

    bool capped() const { return cfg_.max_world_views && found_.size() >= *cfg_.max_world_views; }

    void run_levels(AnswerSetEngine& engine) {
        const std::size_t n = ep_.size();
        const std::size_t group_size = cfg_.algorithm == Algorithm::level_single ? 1 : cfg_.guesses_per_call;
        const std::size_t workers = cfg_.algorithm == Algorithm::parallel ? cfg_.workers : 1;
        const std::size_t top = cfg_.level_start.value_or(n);

        std::vector<std::unique_ptr<AnswerSetEngine>> clones;
        if (workers > 1) {
            for (std::size_t i = 0; i < workers; ++i) {
                clones.push_back(engine.clone());
            }
        }

        for (std::size_t level = top + 1; level-- > 0;) {
            if (capped()) {
                break;
            }
            ++stats_.levels_visited;
            emit(SearchEvent::Kind::level, level);
            LevelGroupStream stream(n, level, group_size, cfg_.fixed_bits);
            std::exception_ptr failure;
            bool stop = false;

            auto work = [&](AnswerSetEngine& eng) {
                for (;;) {
                    std::vector<Guess> kept;
                    std::size_t held = 0;
                    {
                        std::lock_guard lock(mu_);
                        if (stop) {
                            return;
                        }
                        auto group = stream.next();
                        if (!group) {
                            return;
                        }
                        held = group->size();
                        stats_.guesses_generated += held;
                        in_flight_ += held;
                        stats_.peak_in_flight_guesses = std::max<std::uint64_t>(stats_.peak_in_flight_guesses, in_flight_);
                        // Found views come from higher levels only: equal
                        // popcounts are never strict subsets of each other.
                        for (const Guess& g : *group) {
                            if (prune_with(g, found_, cfg_.mode, cfg_.mutant)) {
                                ++stats_.guesses_pruned;
                                emit(SearchEvent::Kind::pruned, level, g);
                            } else {
                                kept.push_back(g);
                            }
                        }
                        if (kept.empty()) {
                            in_flight_ -= held;
                            continue;
                        }
                    }
                    GroupOutcome out;
                    try {
                        out = solve_group(kept, eng, true);
                    } catch (...) {
                        std::lock_guard lock(mu_);
                        in_flight_ -= held;
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        stop = true;
                        return;
                    }
                    std::lock_guard lock(mu_);
                    in_flight_ -= held;
                    stats_.solver_calls += out.solver_calls;
                    stats_.answer_sets_seen += out.answer_sets;
                    for (const Guess& g : out.solved) {
                        emit(SearchEvent::Kind::solved, level, g);
                    }
                    for (auto& v : out.views) {
                        emit(SearchEvent::Kind::verified, level, v.phi);
                        found_.push_back(std::move(v));
                    }
                    if (capped()) {
                        stop = true;
                        return;
                    }
                }
            };

            if (workers == 1) {
                work(engine);
            } else {
                std::vector<std::thread> threads;
                threads.reserve(workers);
                for (std::size_t i = 0; i < workers; ++i) {
                    threads.emplace_back(work, std::ref(*clones[i]));
                }
                for (auto& t : threads) {
                    t.join();
                }
            }
            if (failure) {
                std::rethrow_exception(failure);
            }
        }
    }

    const Program& p_;
    SearchConfig cfg_;
    EpOrder ep_;
    Translation translation_;
    std::mutex mu_;
    std::vector<WorldView> found_;
    SearchStats stats_;
    std::uint64_t in_flight_ = 0;
};

} // namespace

bool prune(Guess g, const std::vector<WorldView>& found, SemanticsMode mode) {
    return prune_with(g, found, mode, Mutant::none);
}

SearchResult solve(const Program& p, const SearchConfig& cfg, AnswerSetEngine& engine) {
    Searcher s(p, cfg);
    return s.run(engine);
}

std::string stats_report(const SearchStats& s) {
    nlohmann::ordered_json j;
    j["levels_visited"] = s.levels_visited;
    j["guesses_generated"] = s.guesses_generated;
    j["guesses_pruned"] = s.guesses_pruned;
    j["solver_calls"] = s.solver_calls;
    j["answer_sets_seen"] = s.answer_sets_seen;
    j["peak_in_flight_guesses"] = s.peak_in_flight_guesses;
    j["wall_time"] = s.wall_time;
    return j.dump();
}

std::string to_string(Algorithm a) {
    switch (a) {
    case Algorithm::naive:
        return "naive";
    case Algorithm::level_single:
        return "level";
    case Algorithm::level_group:
        return "group";
    case Algorithm::parallel:
        return "parallel";
    }
    return "?";
}

std::string to_string(Route r) { return r == Route::translate ? "translate" : "direct"; }

std::string to_string(SemanticsMode m) { return m == SemanticsMode::se16 ? "se16" : "kwbgz15"; }

std::string to_string(Mutant m) {
    switch (m) {
    case Mutant::none:
        return "none";
    case Mutant::nonstrict_prune:
        return "nonstrict-prune";
    case Mutant::no_prune:
        return "no-prune";
    }
    return "?";
}

} // namespace elp
