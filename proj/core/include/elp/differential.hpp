#pragma once

#include "elp/asp.hpp"
#include "elp/generators.hpp"
#include "elp/search.hpp"
#include "elp/semantics.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace elp {

struct DiffCase {
    std::string name;
    Program program;
};

/// Every `*.elp` file of a directory, ordered by file name.
std::vector<DiffCase> load_corpus(const std::filesystem::path& dir);

/// `count` programs drawn from one seeded generator; named random-<i>.
std::vector<DiffCase> random_corpus(std::size_t count, std::uint64_t seed, const RandomElpOptions& options = {});

struct NamedEngine {
    std::string name;
    AnswerSetEngine* engine;
};

struct DiffConfig {
    std::vector<Algorithm> algorithms{Algorithm::naive, Algorithm::level_single, Algorithm::level_group,
                                      Algorithm::parallel};
    std::vector<Route> routes{Route::translate, Route::direct};
    std::vector<std::size_t> group_sizes{1, 2, 4};
    std::vector<std::size_t> worker_counts{1, 2, 4};
    std::vector<SemanticsMode> modes{SemanticsMode::se16, SemanticsMode::kwbgz15};
    Mutant mutant = Mutant::none;
    /// Where to write a reproduction bundle for each failing case.
    std::optional<std::filesystem::path> bundle_dir;
};

struct Disagreement {
    std::string case_name;
    std::string check; // e.g. "parallel/translate/nG=2/np=4/se16/internal"
    std::string detail;
    std::string program_text;
};

struct DiffReport {
    std::size_t cases = 0;
    std::size_t runs = 0;
    std::size_t world_views_checked = 0;
    std::vector<Disagreement> failures;

    bool ok() const { return failures.empty(); }
};

/// Compares every search configuration on every engine with the oracle
/// (computed on the first engine), checks the Shen-Eiter reduct and modal
/// reduct agreement on every oracle world view, and checks that the se16
/// views are the subset-maximal kwbgz15 views.
DiffReport run_differential(const std::vector<DiffCase>& cases, const DiffConfig& cfg,
                            const std::vector<NamedEngine>& engines);

std::string describe_views(const std::vector<WorldView>& views);

} // namespace elp
