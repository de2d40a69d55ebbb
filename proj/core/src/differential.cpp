#include "elp/differential.hpp"

#include "elp/parser.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace elp {

namespace fs = std::filesystem;

std::vector<DiffCase> load_corpus(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".elp") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    std::vector<DiffCase> out;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            out.push_back(DiffCase{f.filename().string(), parse_elp(buf.str())});
        } catch (const ParseError& e) {
            throw ParseError(e.where(), f.string() + ": " + e.detail());
        }
    }
    return out;
}

std::vector<DiffCase> random_corpus(std::size_t count, std::uint64_t seed, const RandomElpOptions& options) {
    std::mt19937_64 rng(seed);
    std::vector<DiffCase> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(DiffCase{"random-" + std::to_string(i), random_elp(rng, options)});
    }
    return out;
}

std::string describe_views(const std::vector<WorldView>& views) {
    if (views.empty()) {
        return "none";
    }
    std::string s;
    for (const auto& v : views) {
        s += (s.empty() ? "" : "; ") + std::to_string(v.phi.bits) + ":";
        for (const auto& b : v.belief_sets) {
            s += " " + to_string(b);
        }
    }
    return s;
}

namespace {

std::vector<WorldView> sorted(std::vector<WorldView> v) {
    sort_world_views(v);
    return v;
}

struct Combination {
    Algorithm algorithm;
    Route route;
    std::size_t group_size;
    std::size_t workers;
};

std::vector<Combination> combinations(const DiffConfig& cfg) {
    std::vector<Combination> out;
    for (Algorithm a : cfg.algorithms) {
        for (Route r : cfg.routes) {
            switch (a) {
            case Algorithm::naive:
            case Algorithm::level_single:
                out.push_back({a, r, 1, 1});
                break;
            case Algorithm::level_group:
                for (std::size_t g : cfg.group_sizes) {
                    out.push_back({a, r, g, 1});
                }
                break;
            case Algorithm::parallel:
                for (std::size_t g : cfg.group_sizes) {
                    for (std::size_t w : cfg.worker_counts) {
                        out.push_back({a, r, g, w});
                    }
                }
                break;
            }
        }
    }
    return out;
}

void write_bundle(const fs::path& dir, const Disagreement& d) {
    fs::create_directories(dir);
    std::string stem = d.case_name;
    std::replace(stem.begin(), stem.end(), '/', '_');
    if (stem.size() > 4 && stem.ends_with(".elp")) {
        stem.resize(stem.size() - 4);
    }
    std::ofstream(dir / (stem + ".elp")) << d.program_text;
    std::ofstream(dir / (stem + ".txt"), std::ios::app) << d.check << "\n" << d.detail << "\n\n";
}

} // namespace

DiffReport run_differential(const std::vector<DiffCase>& cases, const DiffConfig& cfg,
                            const std::vector<NamedEngine>& engines) {
    if (engines.empty()) {
        throw ContractError("run_differential: no engine");
    }
    DiffReport report;
    const auto combos = combinations(cfg);
    for (const auto& c : cases) {
        ++report.cases;
        const std::string text = emit_elp(c.program);
        auto fail = [&](std::string check, std::string detail) {
            Disagreement d{c.name, std::move(check), std::move(detail), text};
            if (cfg.bundle_dir) {
                write_bundle(*cfg.bundle_dir, d);
            }
            report.failures.push_back(std::move(d));
        };

        AnswerSetEngine& reference = *engines.front().engine;
        std::vector<WorldView> oracle_se;
        std::vector<WorldView> oracle_kw;
        try {
            oracle_se = world_views_oracle(c.program, SemanticsMode::se16, reference);
            oracle_kw = world_views_oracle(c.program, SemanticsMode::kwbgz15, reference);
        } catch (const Error& e) {
            fail("oracle", e.what());
            continue;
        }

        if (sorted(maximal_views(oracle_kw)) != oracle_se) {
            fail("semantics", "se16 views are not the maximal kwbgz15 views");
        }
        for (const auto& se : oracle_se) {
            if (std::find(oracle_kw.begin(), oracle_kw.end(), se) == oracle_kw.end()) {
                fail("semantics", "se16 view " + std::to_string(se.phi.bits) + " missing under kwbgz15");
            }
        }
        for (const auto& wv : oracle_kw) {
            ++report.world_views_checked;
            if (!theorem1_check(c.program, wv, reference)) {
                fail("theorem1", "reducts disagree on view " + describe_views({wv}));
            }
        }

        for (const auto& named : engines) {
            for (SemanticsMode mode : cfg.modes) {
                const auto& expected = mode == SemanticsMode::se16 ? oracle_se : oracle_kw;
                for (const auto& combo : combos) {
                    SearchConfig sc;
                    sc.algorithm = combo.algorithm;
                    sc.route = combo.route;
                    sc.guesses_per_call = combo.group_size;
                    sc.workers = combo.workers;
                    sc.mode = mode;
                    sc.mutant = cfg.mutant;
                    const std::string check = to_string(combo.algorithm) + "/" + to_string(combo.route) +
                                              "/nG=" + std::to_string(combo.group_size) +
                                              "/np=" + std::to_string(combo.workers) + "/" + to_string(mode) + "/" +
                                              named.name;
                    ++report.runs;
                    try {
                        auto got = solve(c.program, sc, *named.engine).world_views;
                        if (got != expected) {
                            fail(check, "expected " + describe_views(expected) + "\ngot " + describe_views(got));
                        }
                    } catch (const Error& e) {
                        fail(check, std::string("error: ") + e.what());
                    }
                }
            }
        }
    }
    return report;
}

} // namespace elp
