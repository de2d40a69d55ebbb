#include "helpers.hpp"

#include "elp/differential.hpp"
#include "elp/generators.hpp"
#include "elp/search.hpp"

#include <catch_amalgamated.hpp>

#include <mutex>

using namespace elp;
using namespace elp::testing;

namespace {

std::vector<std::vector<std::uint64_t>> ints(const std::vector<std::vector<Guess>>& groups) {
    std::vector<std::vector<std::uint64_t>> out;
    for (const auto& g : groups) {
        std::vector<std::uint64_t> v;
        for (auto x : g) {
            v.push_back(x.bits);
        }
        out.push_back(v);
    }
    return out;
}

SearchConfig config(Algorithm a, Route r = Route::translate, std::size_t ng = 1, std::size_t np = 1) {
    SearchConfig c;
    c.algorithm = a;
    c.route = r;
    c.guesses_per_call = ng;
    c.workers = np;
    return c;
}

const std::vector<Algorithm> kAll{Algorithm::naive, Algorithm::level_single, Algorithm::level_group,
                                  Algorithm::parallel};

using Event = SearchEvent::Kind;

} // namespace

TEST_CASE("next_same_popcount", "[search]") {
    REQUIRE(next_same_popcount(0b0011, 4) == 0b0101u);
    REQUIRE(next_same_popcount(0b0110, 4) == 0b1001u);
    REQUIRE_FALSE(next_same_popcount(0b110, 3));
    REQUIRE_FALSE(next_same_popcount(0, 8));
    REQUIRE_FALSE(next_same_popcount(full_mask(64), 64));
    REQUIRE_FALSE(next_same_popcount(std::uint64_t{3} << 62, 64));
    REQUIRE(next_same_popcount(std::uint64_t{1} << 62, 64) == std::uint64_t{1} << 63);
}

TEST_CASE("next_same_popcount enumerates each level in order", "[search][property]") {
    for (std::size_t n = 1; n <= 10; ++n) {
        for (std::size_t k = 1; k <= n; ++k) {
            std::vector<std::uint64_t> expected;
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                if (popcount(x) == static_cast<int>(k)) {
                    expected.push_back(x);
                }
            }
            std::vector<std::uint64_t> got{full_mask(k)};
            while (auto y = next_same_popcount(got.back(), n)) {
                got.push_back(*y);
            }
            REQUIRE(got == expected);
        }
    }
}

TEST_CASE("level groups", "[search]") {
    REQUIRE(ints(level_groups(3, 2, 2)) == std::vector<std::vector<std::uint64_t>>{{3, 5}, {6}});
    REQUIRE(ints(level_groups(3, 0, 4)) == std::vector<std::vector<std::uint64_t>>{{0}});
    REQUIRE(ints(level_groups(2, 1, 4, FixedBits{1, 1})) == std::vector<std::vector<std::uint64_t>>{{1}});
    REQUIRE(level_groups(3, 4, 1).empty());
    REQUIRE(level_groups(2, 2, 1, FixedBits{1, 0}).empty());
    REQUIRE(ints(level_groups(64, 64, 3)) == std::vector<std::vector<std::uint64_t>>{{full_mask(64)}});
    REQUIRE_THROWS_AS(level_groups(3, 1, 0), ContractError);
}

TEST_CASE("level groups have ceil(C(n,k)/nG) members", "[search][property]") {
    auto choose = [](std::size_t n, std::size_t k) {
        std::uint64_t r = 1;
        for (std::size_t i = 1; i <= k; ++i) {
            r = r * (n - k + i) / i;
        }
        return r;
    };
    for (std::size_t n = 0; n <= 10; ++n) {
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t ng : {1u, 2u, 3u, 7u}) {
                auto groups = level_groups(n, k, ng);
                REQUIRE(groups.size() == (choose(n, k) + ng - 1) / ng);
                std::uint64_t last = 0;
                bool first = true;
                for (std::size_t i = 0; i < groups.size(); ++i) {
                    REQUIRE(groups[i].size() == (i + 1 < groups.size() ? ng : groups[i].size()));
                    for (auto g : groups[i]) {
                        REQUIRE(popcount(g.bits) == static_cast<int>(k));
                        REQUIRE((first || g.bits > last));
                        last = g.bits;
                        first = false;
                    }
                }
            }
        }
    }
}

TEST_CASE("pruning filter", "[search]") {
    std::vector<WorldView> found{{Guess{0b11}, {}}};
    REQUIRE(prune(Guess{0b01}, found, SemanticsMode::se16));
    REQUIRE_FALSE(prune(Guess{0b01}, found, SemanticsMode::kwbgz15));
    REQUIRE_FALSE(prune(Guess{0b11}, found, SemanticsMode::se16));
    std::vector<WorldView> other{{Guess{0b10}, {}}};
    REQUIRE_FALSE(prune(Guess{0b01}, other, SemanticsMode::se16));
}

TEST_CASE("E1 under every algorithm", "[search]") {
    Program p = elp_program("a :- M a.");
    InternalEngine engine;
    for (auto a : kAll) {
        for (auto r : {Route::translate, Route::direct}) {
            auto res = solve(p, config(a, r, 2, 2), engine);
            REQUIRE(view_sets(res.world_views) == std::set<std::set<LiteralSet>>{sets({{"a"}})});
            REQUIRE(res.world_views[0].phi == Guess{1});
        }
    }
    std::vector<SearchEvent> events;
    auto cfg = config(Algorithm::level_single);
    cfg.observer = [&](const SearchEvent& e) { events.push_back(e); };
    auto res = solve(p, cfg, engine);
    REQUIRE(res.stats.solver_calls == 1);
    REQUIRE(res.stats.guesses_pruned == 1);
    REQUIRE(res.stats.levels_visited == 2);
    REQUIRE(events.size() == 5);
    REQUIRE((events[0].kind == Event::level && events[0].level == 1));
    REQUIRE((events[1].kind == Event::solved && events[1].guess == Guess{1}));
    REQUIRE(events[2].kind == Event::verified);
    REQUIRE((events[3].kind == Event::level && events[3].level == 0));
    REQUIRE((events[4].kind == Event::pruned && events[4].guess == Guess{0}));
}

TEST_CASE("E4 level trace", "[search]") {
    Program p = elp_program("a :- not K b. b :- not K a.");
    InternalEngine engine;
    std::vector<SearchEvent> events;
    auto cfg = config(Algorithm::level_single);
    cfg.observer = [&](const SearchEvent& e) { events.push_back(e); };
    auto res = solve(p, cfg, engine);
    REQUIRE(view_sets(res.world_views) == std::set<std::set<LiteralSet>>{sets({{"a"}}), sets({{"b"}})});
    std::vector<std::pair<Event, std::uint64_t>> trace;
    for (const auto& e : events) {
        if (e.kind != Event::level) {
            trace.emplace_back(e.kind, e.guess.bits);
        }
    }
    REQUIRE(trace == std::vector<std::pair<Event, std::uint64_t>>{{Event::solved, 3},
                                                                  {Event::solved, 1},
                                                                  {Event::verified, 1},
                                                                  {Event::solved, 2},
                                                                  {Event::verified, 2},
                                                                  {Event::pruned, 0}});
}

TEST_CASE("single-student eligibility", "[search]") {
    Program p = elp_program("fairGPA(mike) | highGPA(mike).\n"
                    "eligible(mike) :- highGPA(mike).\n"
                    "eligible(mike) :- minority(mike), fairGPA(mike).\n"
                    "-eligible(mike) :- -fairGPA(mike), -highGPA(mike).\n"
                    "interview(mike) :- not K eligible(mike), not K -eligible(mike).\n");
    InternalEngine engine;
    auto expected = std::set<std::set<LiteralSet>>{
        sets({{"fairGPA(mike)", "interview(mike)"}, {"highGPA(mike)", "eligible(mike)", "interview(mike)"}})};
    for (auto a : kAll) {
        auto res = solve(p, config(a, Route::translate, 2, 2), engine);
        REQUIRE(view_sets(res.world_views) == expected);
        REQUIRE(popcount(res.world_views[0].phi.bits) == 2);
    }
}

TEST_CASE("naive search counters", "[search]") {
    InternalEngine engine;
    Program p = elp_program("a :- not K b. b :- not K a.");
    auto t = solve(p, config(Algorithm::naive), engine);
    REQUIRE(t.stats.guesses_generated == 4);
    REQUIRE(t.stats.solver_calls == 1);
    auto d = solve(p, config(Algorithm::naive, Route::direct), engine);
    REQUIRE(d.stats.guesses_generated == 4);
    REQUIRE(d.stats.solver_calls == 4);
    REQUIRE(d.world_views == t.world_views);
}

TEST_CASE("all algorithms agree with the oracle", "[search][property]") {
    InternalEngine engine;
    auto cases = load_corpus(ELP_CORPUS_DIR);
    auto random = random_corpus(60, 2024, {});
    cases.insert(cases.end(), random.begin(), random.end());
    auto report = run_differential(cases, DiffConfig{}, {{"internal", &engine}});
    for (const auto& f : report.failures) {
        UNSCOPED_INFO(f.case_name << " " << f.check << "\n" << f.detail << "\n" << f.program_text);
    }
    REQUIRE(report.ok());
    REQUIRE(report.runs == cases.size() * 2 * 2 * (1 + 1 + 3 + 9));
}

TEST_CASE("pruned guesses are strict subsets of earlier views", "[search][property]") {
    InternalEngine engine;
    for (const auto& c : random_corpus(150, 31, {})) {
        for (auto a : {Algorithm::level_single, Algorithm::level_group, Algorithm::parallel}) {
            std::mutex mu;
            std::vector<Guess> verified;
            bool sound = true;
            auto cfg = config(a, Route::translate, 2, 3);
            cfg.observer = [&](const SearchEvent& e) {
                std::lock_guard lock(mu);
                if (e.kind == Event::verified) {
                    verified.push_back(e.guess);
                } else if (e.kind == Event::pruned) {
                    bool covered = false;
                    for (auto v : verified) {
                        covered = covered || (is_strict_subset(e.guess, v) && popcount(v.bits) > popcount(e.guess.bits));
                    }
                    sound = sound && covered;
                }
            };
            solve(c.program, cfg, engine);
            REQUIRE(sound);
        }
    }
}

TEST_CASE("in-flight guesses stay within nG * np", "[search][property]") {
    InternalEngine engine;
    std::vector<Program> programs{eligible_program(2), eligible_program(3)};
    for (const auto& c : random_corpus(40, 5, {})) {
        programs.push_back(c.program);
    }
    for (const auto& p : programs) {
        for (std::size_t ng : {1u, 2u, 4u}) {
            for (std::size_t np : {1u, 2u, 4u}) {
                for (auto mode : {SemanticsMode::se16, SemanticsMode::kwbgz15}) {
                    auto cfg = config(Algorithm::parallel, Route::translate, ng, np);
                    cfg.mode = mode;
                    auto res = solve(p, cfg, engine);
                    REQUIRE(res.stats.peak_in_flight_guesses <= ng * np);
                    REQUIRE(res.stats.peak_in_flight_guesses >= 1);
                }
            }
        }
    }
}

TEST_CASE("early termination returns a member of the full result", "[search][property]") {
    InternalEngine engine;
    for (const auto& c : random_corpus(150, 17, {})) {
        for (auto mode : {SemanticsMode::se16, SemanticsMode::kwbgz15}) {
            for (auto a : kAll) {
                auto cfg = config(a, Route::translate, 2, 2);
                cfg.mode = mode;
                auto full = solve(c.program, cfg, engine);
                cfg.max_world_views = 1;
                auto one = solve(c.program, cfg, engine);
                REQUIRE(one.world_views.size() == std::min<std::size_t>(1, full.world_views.size()));
                if (!one.world_views.empty()) {
                    REQUIRE(std::find(full.world_views.begin(), full.world_views.end(), one.world_views[0]) !=
                            full.world_views.end());
                }
                REQUIRE(one.stats.solver_calls <= full.stats.solver_calls);
            }
        }
    }
}

TEST_CASE("search hints", "[search]") {
    InternalEngine engine;
    Program p = elp_program("a :- not K b. b :- not K a.");
    auto cfg = config(Algorithm::level_single);
    cfg.fixed_bits = FixedBits{0b01, 0b00}; // keep `not K b` out of Phi
    auto res = solve(p, cfg, engine);
    REQUIRE(res.world_views.size() == 1);
    REQUIRE(res.world_views[0].phi == Guess{2});
    cfg = config(Algorithm::level_single);
    cfg.level_start = 0;
    REQUIRE(solve(p, cfg, engine).world_views.empty());
}

TEST_CASE("configuration and capacity errors", "[search]") {
    InternalEngine engine;
    Program p = elp_program("a :- M a.");
    auto bad = config(Algorithm::level_group, Route::translate, 0);
    REQUIRE_THROWS_AS(solve(p, bad, engine), ContractError);
    bad = config(Algorithm::parallel, Route::translate, 1, 0);
    REQUIRE_THROWS_AS(solve(p, bad, engine), ContractError);
    bad = config(Algorithm::level_single);
    bad.level_start = 2;
    REQUIRE_THROWS_AS(solve(p, bad, engine), ContractError);
    bad = config(Algorithm::level_single);
    bad.fixed_bits = FixedBits{0, 1};
    REQUIRE_THROWS_AS(solve(p, bad, engine), ContractError);

    std::string wide;
    for (int i = 0; i < 65; ++i) {
        wide += "x :- M p" + std::to_string(i) + ".\n";
    }
    REQUIRE_THROWS_AS(solve(elp_program(wide), config(Algorithm::level_single), engine), CapacityError);
    REQUIRE_THROWS_AS(solve(eligible_program(6), config(Algorithm::naive), engine), CapacityError);
}

TEST_CASE("engine failures name the guess group", "[search]") {
    InternalEngineOptions o;
    o.atom_cap = 2;
    InternalEngine tiny(o);
    for (auto a : {Algorithm::level_single, Algorithm::parallel}) {
        try {
            solve(eligible_program(1), config(a, Route::translate, 2, 2), tiny);
            FAIL("expected a guess group error");
        } catch (const GuessGroupError& e) {
            REQUIRE_FALSE(e.group().empty());
            REQUIRE(std::string(e.what()).find("guess group {") == 0);
            REQUIRE_THROWS_AS(e.rethrow_nested(), CapacityError);
        }
    }
}

TEST_CASE("stats report", "[search]") {
    REQUIRE(stats_report(SearchStats{}) ==
            R"({"levels_visited":0,"guesses_generated":0,"guesses_pruned":0,"solver_calls":0,)"
            R"("answer_sets_seen":0,"peak_in_flight_guesses":0,"wall_time":0.0})");
}
