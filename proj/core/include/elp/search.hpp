#pragma once

#include "elp/asp.hpp"
#include "elp/model.hpp"
#include "elp/semantics.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace elp {

/// Smallest y > x with popcount(y) == popcount(x) that fits in n bits, or
/// nothing when no such y exists (also for x == 0).
std::optional<std::uint64_t> next_same_popcount(std::uint64_t x, std::size_t n);

/// Forces chosen Ep bits: only guesses with (x & mask) == value are searched.
struct FixedBits {
    std::uint64_t mask = 0;
    std::uint64_t value = 0;

    bool admits(Guess g) const { return (g.bits & mask) == value; }
};

/// The guesses of popcount k over n bits in increasing integer order, cut
/// into groups of `group_size`. Groups are produced one at a time; the
/// stream never holds more than the group it hands out. Not thread-safe.
class LevelGroupStream {
public:
    LevelGroupStream(std::size_t n, std::size_t k, std::size_t group_size,
                     std::optional<FixedBits> fixed = std::nullopt);

    /// The next group, or nothing once the level is exhausted.
    std::optional<std::vector<Guess>> next();

private:
    bool advance();

    std::size_t n_;
    std::size_t group_size_;
    std::optional<FixedBits> fixed_;
    std::optional<std::uint64_t> cursor_;
};

/// Drains a LevelGroupStream; for tests and small levels.
std::vector<std::vector<Guess>> level_groups(std::size_t n, std::size_t k, std::size_t group_size,
                                             std::optional<FixedBits> fixed = std::nullopt);

enum class Algorithm {
    /// All 2^n guesses at once, then aggregate and verify every group.
    naive,
    /// Levels from n down to 0, one guess per solver call.
    level_single,
    /// Levels from n down to 0, guesses_per_call guesses per solver call.
    level_group,
    /// As level_group with groups of a level spread over `workers` threads.
    parallel,
};

enum class Route {
    /// Pi' plus the guess encoding, solved per group.
    translate,
    /// The epistemic reduct, solved per guess.
    direct,
};

/// Deliberate defects for exercising the differential checks.
enum class Mutant {
    none,
    /// Prunes guesses that are subsets of, or equal to, a found guess.
    nonstrict_prune,
    /// Never prunes.
    no_prune,
};

struct SearchEvent {
    enum class Kind { level, pruned, solved, verified };
    Kind kind;
    std::size_t level;
    Guess guess; // unused for Kind::level
};

struct SearchConfig {
    Algorithm algorithm = Algorithm::level_single;
    std::size_t guesses_per_call = 1;
    std::size_t workers = 1;
    std::optional<std::size_t> max_world_views;
    SemanticsMode mode = SemanticsMode::se16;
    Route route = Route::translate;
    /// Highest level searched; defaults to |Ep|.
    std::optional<std::size_t> level_start;
    std::optional<FixedBits> fixed_bits;
    Mutant mutant = Mutant::none;
    /// Called for every search event; serialized across workers.
    std::function<void(const SearchEvent&)> observer;

    /// Throws ContractError for zero counts, a level above `ep_size`, or
    /// fixed bits whose value is not covered by the mask.
    void validate(std::size_t ep_size) const;
};

struct SearchStats {
    std::uint64_t levels_visited = 0;
    std::uint64_t guesses_generated = 0;
    std::uint64_t guesses_pruned = 0;
    std::uint64_t solver_calls = 0;
    std::uint64_t answer_sets_seen = 0;
    std::uint64_t peak_in_flight_guesses = 0;
    double wall_time = 0.0; // seconds
};

struct SearchResult {
    EpOrder ep;
    std::vector<WorldView> world_views; // ordered as by sort_world_views
    SearchStats stats;
};

/// The monolithic search materializes 2^n guesses.
inline constexpr std::size_t kNaiveDirectEpCap = 20;
inline constexpr std::size_t kNaiveTranslateEpCap = 10;

/// An engine failure while solving a guess group; the original exception
/// is nested.
class GuessGroupError : public Error, public std::nested_exception {
public:
    GuessGroupError(const std::string& what, std::vector<Guess> group)
        : Error(what), group_(std::move(group)) {}

    const std::vector<Guess>& group() const { return group_; }

private:
    std::vector<Guess> group_;
};

/// True iff g should be skipped because of a found world view: under se16
/// when g is a strict subset of some found guess; never under kwbgz15.
bool prune(Guess g, const std::vector<WorldView>& found, SemanticsMode mode);

/// World views of p. Throws CapacityError when |Ep| exceeds the word width
/// (or the naive caps) and GuessGroupError for engine failures.
SearchResult solve(const Program& p, const SearchConfig& cfg, AnswerSetEngine& engine);

/// Counters as a JSON object with a fixed field order.
std::string stats_report(const SearchStats& s);

std::string to_string(Algorithm a);
std::string to_string(Route r);
std::string to_string(SemanticsMode m);
std::string to_string(Mutant m);

} // namespace elp
