#include "elp_cli/commands.hpp"

#include "elp/differential.hpp"
#include "elp/external.hpp"
#include "elp/generators.hpp"
#include "elp/parser.hpp"
#include "elp/report.hpp"
#include "elp/search.hpp"
#include "elp/translation.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace elp::cli {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
    std::stringstream buf;
    if (path.empty() || path == "-") {
        buf << in.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) {
            throw Error("cannot read " + path);
        }
        buf << f.rdbuf();
    }
    return buf.str();
}

struct EngineOptions {
    std::string engine = "internal";
    std::string strategy = "propagate";
    std::string external_cmd;
    double timeout = 60.0;
    std::vector<int> sat_codes{10};
    std::vector<int> unsat_codes{20};

    void add_to(CLI::App& app) {
        app.add_option("--engine", engine, "ASP back end")->check(CLI::IsMember({"internal", "external"}));
        app.add_option("--internal-strategy", strategy, "Internal engine strategy")
            ->check(CLI::IsMember({"propagate", "brute"}));
        app.add_option("--external-cmd", external_cmd,
                       std::string("Shell command of the external solver (default: $") + kExternalSolverEnv + ")");
        app.add_option("--external-timeout", timeout, "Seconds per external solver call")
            ->check(CLI::PositiveNumber);
        app.add_option("--external-sat-codes", sat_codes, "Exit statuses meaning satisfiable")->delimiter(',');
        app.add_option("--external-unsat-codes", unsat_codes, "Exit statuses meaning unsatisfiable")
            ->delimiter(',');
    }

    SolverAdapterConfig adapter() const {
        SolverAdapterConfig cfg;
        cfg.command = external_cmd;
        if (cfg.command.empty()) {
            if (const char* env = std::getenv(kExternalSolverEnv)) {
                cfg.command = env;
            }
        }
        cfg.timeout = std::chrono::duration<double>(timeout);
        cfg.sat_exit_codes = sat_codes;
        cfg.unsat_exit_codes = unsat_codes;
        return cfg;
    }

    std::unique_ptr<AnswerSetEngine> make(const std::string& which) const {
        if (which == "external") {
            return std::make_unique<ExternalEngine>(adapter());
        }
        InternalEngineOptions o;
        o.strategy = strategy == "brute" ? InternalEngineOptions::Strategy::brute_force
                                         : InternalEngineOptions::Strategy::propagate;
        return std::make_unique<InternalEngine>(o);
    }

    std::unique_ptr<AnswerSetEngine> make() const { return make(engine); }
};

const std::map<std::string, Algorithm> kAlgorithms{{"naive", Algorithm::naive},
                                                   {"level", Algorithm::level_single},
                                                   {"group", Algorithm::level_group},
                                                   {"parallel", Algorithm::parallel}};
const std::map<std::string, SemanticsMode> kModes{{"se16", SemanticsMode::se16},
                                                  {"kwbgz15", SemanticsMode::kwbgz15}};
const std::map<std::string, Route> kRoutes{{"translate", Route::translate}, {"direct", Route::direct}};
const std::map<std::string, Mutant> kMutants{{"none", Mutant::none},
                                             {"nonstrict-prune", Mutant::nonstrict_prune},
                                             {"no-prune", Mutant::no_prune}};

// ITEM=0|1 where ITEM is a 0-based bit index or an Ep item such as
// `not K p` or `M -q`.
void apply_fix(const std::string& spec, const EpOrder& ep, FixedBits& fixed) {
    auto eq = spec.rfind('=');
    if (eq == std::string::npos || eq + 2 != spec.size() || (spec[eq + 1] != '0' && spec[eq + 1] != '1')) {
        throw ContractError("--fix expects ITEM=0 or ITEM=1, got '" + spec + "'");
    }
    std::string item = spec.substr(0, eq);
    item.erase(0, item.find_first_not_of(' '));
    item.erase(item.find_last_not_of(' ') + 1);
    std::size_t index = 0;
    if (!item.empty() && std::all_of(item.begin(), item.end(), [](unsigned char c) { return std::isdigit(c); })) {
        index = std::stoul(item);
        if (index >= ep.size()) {
            throw RangeError("--fix: bit " + item + " outside Ep of size " + std::to_string(ep.size()));
        }
    } else {
        // Reuse the parser: `x :- ITEM.` yields the subjective element.
        Program probe;
        try {
            probe = parse_elp("x :- " + item + ".");
        } catch (const ParseError& e) {
            throw ContractError("--fix: cannot read Ep item '" + item + "': " + e.detail());
        }
        const auto& body = probe.rules.front().body;
        if (body.size() != 1 || !body.front().is_subjective()) {
            throw ContractError("--fix: '" + item + "' is not a subjective literal");
        }
        auto idx = ep.index_of(body.front().subjective_atom());
        if (!idx) {
            throw RangeError("--fix: '" + item + "' does not occur in the program");
        }
        index = *idx;
    }
    const std::uint64_t bit = std::uint64_t{1} << index;
    fixed.mask |= bit;
    if (spec[eq + 1] == '1') {
        fixed.value |= bit;
    } else {
        fixed.value &= ~bit;
    }
}

struct SolveOptions {
    std::string input;
    std::string algorithm = "level";
    std::size_t guesses_per_call = 1;
    std::size_t jobs = 1;
    std::size_t max_world_views = 0;
    std::string semantics = "se16";
    std::string route = "translate";
    int level_start = -1;
    std::vector<std::string> fixes;
    std::string format = "text";
    bool stats = false;
    EngineOptions engine;
};

int cmd_solve(const SolveOptions& o, std::istream& in, std::ostream& out) {
    Program p = parse_elp(read_input(o.input, in));
    SearchConfig cfg;
    cfg.algorithm = kAlgorithms.at(o.algorithm);
    cfg.guesses_per_call = o.guesses_per_call;
    cfg.workers = o.jobs;
    if (o.max_world_views > 0) {
        cfg.max_world_views = o.max_world_views;
    }
    cfg.mode = kModes.at(o.semantics);
    cfg.route = kRoutes.at(o.route);
    if (o.level_start >= 0) {
        cfg.level_start = static_cast<std::size_t>(o.level_start);
    }
    if (!o.fixes.empty()) {
        EpOrder ep = extract_ep(p);
        FixedBits fixed;
        for (const auto& f : o.fixes) {
            apply_fix(f, ep, fixed);
        }
        cfg.fixed_bits = fixed;
    }
    auto engine = o.engine.make();
    SearchResult result = solve(p, cfg, *engine);
    OutputDocument doc = make_document(p, cfg.mode, result);
    out << (o.format == "json" ? to_json(doc) : to_text(doc, o.stats));
    return result.world_views.empty() ? kExitNone : kExitFound;
}

struct TranslateOptions {
    std::string input;
    std::vector<std::uint64_t> guesses;
};

int cmd_translate(const TranslateOptions& o, std::istream& in, std::ostream& out) {
    Program p = parse_elp(read_input(o.input, in));
    if (p.is_asp()) {
        throw ContractError("input has no subjective literals; nothing to translate");
    }
    Translation t = translate(p);
    Program result = t.program;
    if (!o.guesses.empty()) {
        std::vector<Guess> group;
        for (auto x : o.guesses) {
            if (t.ep.size() < kMaxEpItems && x > full_mask(t.ep.size())) {
                throw RangeError("guess " + std::to_string(x) + " outside Ep of size " + std::to_string(t.ep.size()));
            }
            group.push_back(Guess{x});
        }
        result = with_guesses(t, group);
    }
    out << emit_asp(result);
    return 0;
}

struct DiffOptions {
    std::string corpus;
    std::size_t random = 0;
    std::uint64_t seed = 1;
    bool classical = false;
    std::string mutant = "none";
    std::string engines = "internal";
    std::string bundle;
    EngineOptions engine;
};

int cmd_diff(const DiffOptions& o, std::ostream& out) {
    std::vector<DiffCase> cases;
    if (!o.corpus.empty()) {
        cases = load_corpus(o.corpus);
    }
    if (o.random > 0) {
        RandomElpOptions ro;
        ro.classical_negation = o.classical;
        auto extra = random_corpus(o.random, o.seed, ro);
        cases.insert(cases.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    }
    if (cases.empty()) {
        throw ContractError("diff: give a corpus directory or --random N");
    }
    std::vector<std::unique_ptr<AnswerSetEngine>> owned;
    std::vector<NamedEngine> engines;
    std::vector<std::string> names;
    if (o.engines == "both") {
        names = {"internal", "external"};
    } else {
        names = {o.engines};
    }
    for (const auto& name : names) {
        owned.push_back(o.engine.make(name));
        engines.push_back(NamedEngine{name, owned.back().get()});
    }
    DiffConfig cfg;
    cfg.mutant = kMutants.at(o.mutant);
    if (!o.bundle.empty()) {
        cfg.bundle_dir = o.bundle;
    }
    DiffReport r = run_differential(cases, cfg, engines);
    for (const auto& f : r.failures) {
        out << "FAIL " << f.case_name << " [" << f.check << "]\n" << f.detail << "\nprogram:\n" << f.program_text
            << "\n";
    }
    out << r.cases << " programs, " << r.runs << " runs, " << r.world_views_checked << " world views checked, "
        << r.failures.size() << " disagreements\n";
    if (!r.ok() && cfg.bundle_dir) {
        out << "reproduction bundle written to " << cfg.bundle_dir->string() << "\n";
    }
    return r.ok() ? 0 : 1;
}

} // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"World views of ground epistemic logic programs", "elpsolve"};
    app.require_subcommand(1);

    SolveOptions solve_o;
    auto* solve_cmd = app.add_subcommand("solve", "Compute world views");
    solve_cmd->add_option("file", solve_o.input, "ELP file (default: standard input)");
    solve_cmd->add_option("--algorithm", solve_o.algorithm, "Search algorithm")
        ->check(CLI::IsMember({"naive", "level", "group", "parallel"}));
    solve_cmd->add_option("--guesses-per-call", solve_o.guesses_per_call, "Guesses per solver call")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--jobs", solve_o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-world-views", solve_o.max_world_views, "Stop after this many world views")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--semantics", solve_o.semantics, "World-view semantics")
        ->check(CLI::IsMember({"se16", "kwbgz15"}));
    solve_cmd->add_option("--route", solve_o.route, "Per-guess back end")->check(CLI::IsMember({"translate", "direct"}));
    solve_cmd->add_option("--level-start", solve_o.level_start, "Highest guess level searched")
        ->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--fix", solve_o.fixes, "Force an Ep bit: ITEM=0|1 (ITEM is a bit index or e.g. 'not K p')");
    solve_cmd->add_option("--format", solve_o.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    solve_cmd->add_flag("--stats", solve_o.stats, "Print search counters (text format)");
    solve_o.engine.add_to(*solve_cmd);

    TranslateOptions tr_o;
    auto* tr_cmd = app.add_subcommand("translate", "Print the ASP translation without guesses");
    tr_cmd->add_option("file", tr_o.input, "ELP file (default: standard input)");
    tr_cmd->add_option("--with-guess", tr_o.guesses, "Append the encoding of these guesses");

    int eligible_n = 0;
    auto* gen_cmd = app.add_subcommand("gen-eligible", "Print the scholarship-eligibility instance");
    gen_cmd->add_option("n", eligible_n, "Number of students")->required()->check(CLI::PositiveNumber);

    DiffOptions diff_o;
    auto* diff_cmd = app.add_subcommand("diff", "Compare every search configuration with the oracle");
    diff_cmd->add_option("corpus", diff_o.corpus, "Directory of .elp files")->check(CLI::ExistingDirectory);
    diff_cmd->add_option("--random", diff_o.random, "Number of random programs");
    diff_cmd->add_option("--seed", diff_o.seed, "Random seed");
    diff_cmd->add_flag("--classical", diff_o.classical, "Allow classical negation in random programs");
    diff_cmd->add_option("--inject-mutant", diff_o.mutant, "Run the searches with a deliberate defect")
        ->check(CLI::IsMember({"none", "nonstrict-prune", "no-prune"}));
    diff_cmd->add_option("--engines", diff_o.engines, "Engines compared")
        ->check(CLI::IsMember({"internal", "external", "both"}));
    diff_cmd->add_option("--bundle", diff_o.bundle, "Directory for reproduction bundles");
    diff_o.engine.add_to(*diff_cmd);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help(app.get_subcommands().empty() ? "" : app.get_subcommands().front()->get_name());
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "elpsolve: " << e.what() << "\n";
        return kExitError;
    }

    try {
        if (solve_cmd->parsed()) {
            return cmd_solve(solve_o, in, out);
        }
        if (tr_cmd->parsed()) {
            return cmd_translate(tr_o, in, out);
        }
        if (gen_cmd->parsed()) {
            out << gen_eligible(eligible_n);
            return 0;
        }
        if (diff_cmd->parsed()) {
            return cmd_diff(diff_o, out);
        }
    } catch (const GuessGroupError& e) {
        err << "elpsolve: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        err << "elpsolve: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

} // namespace elp::cli
