#include "helpers.hpp"

#include "elp/differential.hpp"
#include "elp/search.hpp"
#include "elp/translation.hpp"

#include <catch_amalgamated.hpp>

using namespace elp;
using namespace elp::testing;

namespace {

std::vector<CandidateGroup> run_group(const Program& p, const std::vector<Guess>& group) {
    Translation t = translate(p);
    InternalEngine engine;
    return aggregate(engine.solve(with_guesses(t, group)), t, group);
}

} // namespace

TEST_CASE("translation table", "[translation]") {
    SECTION("K l") {
        REQUIRE(translate(elp_program("p :- K q.")).program ==
                asp_program("p :- not neg_k_q, q. neg_k_q :- k0_q. neg_k_q :- k1_q, not q."));
    }
    SECTION("M l") {
        REQUIRE(translate(elp_program("p :- M q.")).program == asp_program("p :- m_q. m_q :- m1_q. m_q :- m0_q, not not q."));
    }
    SECTION("negated forms") {
        REQUIRE(translate(elp_program("p :- not K q.")).program ==
                asp_program("p :- neg_k_q. neg_k_q :- k0_q. neg_k_q :- k1_q, not q."));
        REQUIRE(translate(elp_program("p :- not M q.")).program ==
                asp_program("p :- not m_q. m_q :- m1_q. m_q :- m0_q, not not q."));
    }
    SECTION("classical negation is spelled with 2") {
        Translation t = translate(elp_program("p :- not K -q."));
        REQUIRE(t.program == asp_program("p :- neg_k_2q. neg_k_2q :- k0_2q. neg_k_2q :- k1_2q, not -q."));
        REQUIRE(t.fresh_names.count("k0_2q"));
    }
    SECTION("rules added once per item") {
        Translation t = translate(elp_program("a :- K q. b :- not K q. c :- M q. d :- not M q."));
        REQUIRE(t.ep.size() == 2);
        REQUIRE(t.program.rules.size() == 4 + 4);
    }
    SECTION("arguments carry over") {
        Translation t = translate(elp_program("i(s1) :- not K e(s1)."));
        REQUIRE(t.km.at(0).zero == make_literal("k0_e", {"s1"}));
    }
    SECTION("fresh names avoid user predicates") {
        Translation t = translate(elp_program("p :- M q. m_q :- r."));
        REQUIRE(t.km.at(0).helper.atom.name == "m_q_");
        REQUIRE(t.fresh_names.count("m_q") == 0);
    }
    SECTION("no guess rules") {
        Translation t = translate(elp_program("a :- M a."));
        for (const auto& l : t.program.universe()) {
            REQUIRE(l.atom.name != t.selector_name);
        }
    }
}

TEST_CASE("guess encoding", "[translation]") {
    SECTION("single M guess") {
        Translation t = translate(elp_program("a :- M a."));
        std::vector<Guess> g{Guess{1}};
        InternalEngine engine;
        auto r = engine.solve(with_guesses(t, g));
        REQUIRE(r.sets.size() == 1);
        REQUIRE(r.sets[0].contains(make_literal("m1_a")));
        REQUIRE_FALSE(r.sets[0].contains(make_literal("m0_a")));
    }
    SECTION("zero bit on not K gives k1") {
        Translation t = translate(elp_program("b :- not K a."));
        std::vector<Guess> g{Guess{0}};
        Program enc = encode_guesses(g, t);
        bool has_k1 = false;
        for (const auto& r : enc.rules) {
            has_k1 = has_k1 || (r.head.size() == 1 && r.head[0].atom.name == "k1_a");
        }
        REQUIRE(has_k1);
    }
    SECTION("selector shape") {
        Translation t = translate(elp_program("a :- not K b. b :- not K a."));
        std::vector<Guess> g{Guess{1}, Guess{2}};
        Program enc = encode_guesses(g, t);
        // 2 even cycles (4 rules), 1 pairwise constraint, 1 at-least-one
        // constraint, 2 x 2 k-atom rules.
        REQUIRE(enc.rules.size() == 4 + 1 + 1 + 4);
    }
    SECTION("contract violations") {
        Translation t = translate(elp_program("a :- not K b. b :- not K a."));
        std::vector<Guess> mixed{Guess{1}, Guess{3}};
        std::vector<Guess> dup{Guess{1}, Guess{1}};
        std::vector<Guess> out_of_range{Guess{4}};
        REQUIRE_THROWS_AS(encode_guesses(mixed, t), ContractError);
        REQUIRE_THROWS_AS(encode_guesses(dup, t), ContractError);
        REQUIRE_THROWS_AS(encode_guesses({}, t), ContractError);
        REQUIRE_THROWS_AS(encode_guesses(out_of_range, t), RangeError);
        REQUIRE_NOTHROW(encode_guess_set(mixed, t));
    }
}

TEST_CASE("aggregation", "[translation]") {
    SECTION("a group run splits by k-atoms") {
        auto groups = run_group(elp_program("a :- not K b. b :- not K a."), {Guess{1}, Guess{2}});
        REQUIRE(groups.size() == 2);
        REQUIRE(groups[0].guess == Guess{1});
        REQUIRE(to_literal_sets(groups[0].sets) == sets({{"a"}}));
        REQUIRE(groups[1].guess == Guess{2});
        REQUIRE(to_literal_sets(groups[1].sets) == sets({{"b"}}));
    }
    SECTION("sets sharing m1 form one group") {
        auto groups = run_group(elp_program("a | b :- M a."), {Guess{1}});
        REQUIRE(groups.size() == 1);
        REQUIRE(groups[0].guess == Guess{1});
        REQUIRE(groups[0].sets.size() == 2);
    }
    SECTION("empty results give no group") {
        Translation t = translate(elp_program("a :- M a."));
        std::vector<Guess> g{Guess{1}};
        REQUIRE(aggregate(AnswerSetResult{}, t, g).empty());
    }
    SECTION("undecodable answer sets") {
        Translation t = translate(elp_program("a :- M a."));
        std::vector<Guess> g{Guess{1}};
        AnswerSetResult both;
        both.sets.push_back(BeliefSet({make_literal("m0_a"), make_literal("m1_a")}));
        REQUIRE_THROWS_AS(aggregate(both, t, g), ConsistencyError);
        AnswerSetResult other;
        other.sets.push_back(BeliefSet({make_literal("m0_a")}));
        REQUIRE_THROWS_AS(aggregate(other, t, g), ConsistencyError);
    }
}

TEST_CASE("verification conditions", "[translation]") {
    EpOrder ma = extract_ep(elp_program("a :- M a."));
    REQUIRE(verify_group(CandidateGroup{Guess{1}, {BeliefSet({make_literal("a")})}}, ma));
    REQUIRE_FALSE(verify_group(CandidateGroup{Guess{0}, {BeliefSet{}, BeliefSet({make_literal("a")})}}, ma));
    EpOrder ka = extract_ep(elp_program("a :- not K a."));
    REQUIRE_FALSE(verify_group(CandidateGroup{Guess{1}, {BeliefSet({make_literal("a")})}}, ka));
    REQUIRE_FALSE(verify_group(CandidateGroup{Guess{1}, {}}, ma));
}

TEST_CASE("translation is faithful to the epistemic reduct", "[translation][property]") {
    InternalEngine engine;
    auto cases = load_corpus(ELP_CORPUS_DIR);
    auto random = random_corpus(150, 123, {});
    cases.insert(cases.end(), random.begin(), random.end());
    for (const auto& c : cases) {
        INFO(c.name << "\n" << emit_elp(c.program));
        Translation t = translate(c.program);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << t.ep.size()); ++x) {
            std::vector<Guess> g{Guess{x}};
            auto groups = aggregate(engine.solve(with_guesses(t, g)), t, g);
            CandidateView direct = check_candidate(c.program, Guess{x}, t.ep, engine);
            if (direct.sets.empty()) {
                REQUIRE(groups.empty());
                continue;
            }
            REQUIRE(groups.size() == 1);
            REQUIRE(groups[0].sets == direct.sets);
            REQUIRE(verify_group(groups[0], t.ep) == direct.verifiable);
        }
    }
}

TEST_CASE("grouped solving matches one guess at a time", "[translation][property]") {
    InternalEngine engine;
    for (const auto& c : random_corpus(100, 77, {})) {
        Translation t = translate(c.program);
        for (std::size_t k = 0; k <= t.ep.size(); ++k) {
            std::vector<CandidateGroup> singles;
            for (const auto& g : level_groups(t.ep.size(), k, 1)) {
                auto r = aggregate(engine.solve(with_guesses(t, g)), t, g);
                singles.insert(singles.end(), r.begin(), r.end());
            }
            for (std::size_t ng : {2u, 4u}) {
                std::vector<CandidateGroup> grouped;
                for (const auto& g : level_groups(t.ep.size(), k, ng)) {
                    auto r = aggregate(engine.solve(with_guesses(t, g)), t, g);
                    grouped.insert(grouped.end(), r.begin(), r.end());
                }
                REQUIRE(grouped.size() == singles.size());
                for (std::size_t i = 0; i < grouped.size(); ++i) {
                    REQUIRE(grouped[i].guess == singles[i].guess);
                    REQUIRE(grouped[i].sets == singles[i].sets);
                }
            }
        }
    }
}
