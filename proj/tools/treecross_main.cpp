// treecross: crossings of trees in linear arrangements.
//
// Subcommands: gen, stats, cross, mc, fig5, verify, treebank.
// Machine output goes to stdout, diagnostics to stderr. Exit codes:
// 0 success, 1 usage error, 2 data error, 3 feasibility cap exceeded.
// Stochastic subcommands require an explicit --seed; identical invocations
// produce byte-identical stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treecross/arrangement.hpp"
#include "treecross/error.hpp"
#include "treecross/kernels.hpp"
#include "treecross/oracle.hpp"
#include "treecross/random_lab.hpp"
#include "treecross/theory.hpp"
#include "treecross/tree.hpp"
#include "treecross/treebank.hpp"

namespace {

using namespace treecross;

Tree load_tree(const std::string& path) {
    if (path == "-") return read_tree(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    return read_tree(in);
}

LinearArrangement load_arrangement(const std::string& path) {
    if (path == "-") return read_arrangement(std::cin);
    std::ifstream in(path);
    if (!in) throw Error("IoError", "cannot open " + path);
    return read_arrangement(in);
}

struct Options {
    std::string tree_path, order_path, input_path, out_dir;
    std::string shape = "random";
    std::string format = "text";
    int n = 0;
    int max_n = 5;
    int threads = 1;
    bool seed_set = false;
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    std::uint64_t replicas = 10000;
    int swaps = 200;
    bool drop_punct = false;
    std::uint64_t mc_samples = 0;
    oracle::Caps caps;
};

int cmd_gen(const Options& opt) {
    Tree tree = [&] {
        if (opt.shape == "star") return make_star(opt.n);
        if (opt.shape == "linear") return make_linear(opt.n);
        if (!opt.seed_set) throw CLI::ValidationError("--seed is required for --shape random");
        Rng rng(opt.seed);
        return random_labeled_tree(
            opt.n, [&rng](int bound) { return static_cast<int>(rng.uniform_below(bound)); });
    }();
    write_tree(tree, std::cout);
    return 0;
}

int cmd_stats(const Options& opt) {
    Tree tree = load_tree(opt.tree_path);
    TheoryReport report = theory_report(tree);
    if (opt.format == "json")
        std::cout << report.to_json() << "\n";
    else
        report.write_tsv(std::cout);
    return 0;
}

int cmd_cross(const Options& opt) {
    Tree tree = load_tree(opt.tree_path);
    LinearArrangement pi = load_arrangement(opt.order_path);
    CrossingReport report = count_crossings(tree, pi);
    if (opt.format == "json")
        std::cout << report.to_json() << "\n";
    else
        report.write_kv(std::cout);
    return 0;
}

int cmd_mc(const Options& opt) {
    Tree tree = load_tree(opt.tree_path);
    McEstimate est = estimate_expected_crossings(tree, opt.samples, opt.seed, opt.threads);
    if (opt.format == "json")
        std::cout << est.to_json() << "\n";
    else
        est.write_kv(std::cout);
    return 0;
}

int cmd_fig5(const Options& opt) {
    Tree tree = load_tree(opt.tree_path);
    LinearArrangement initial = opt.order_path.empty()
                                    ? LinearArrangement::identity(tree.n())
                                    : load_arrangement(opt.order_path);
    SwapTrajectory traj =
        swap_walk(tree, initial, opt.swaps, opt.replicas, opt.seed, opt.threads);
    if (opt.format == "json") {
        nlohmann::json j;
        j["replicas"] = traj.replicas;
        j["seed"] = traj.seed;
        nlohmann::json steps = nlohmann::json::array();
        for (std::size_t s = 0; s < traj.steps.size(); ++s)
            steps.push_back({{"swap", s},
                             {"mean_C", traj.steps[s].mean_c},
                             {"mean_d", traj.steps[s].mean_d}});
        j["steps"] = steps;
        std::cout << j.dump(2) << "\n";
    } else {
        traj.write_tsv(std::cout);
    }
    return 0;
}

int cmd_verify(const Options& opt) {
    nlohmann::json j;
    j["max_n"] = opt.max_n;
    nlohmann::json identity = nlohmann::json::array();
    nlohmann::json extremes = nlohmann::json::array();
    nlohmann::json bound = nlohmann::json::array();
    bool all_pass = true;
    for (int n = 2; n <= opt.max_n; ++n) {
        auto rep_id = oracle::verify_expectation_identity(n, opt.caps, opt.threads);
        auto rep_k2 = oracle::verify_k2_extremes(n, opt.caps);
        auto rep_cp = oracle::verify_cpairs_bound(n, opt.caps, opt.threads);
        identity.push_back(nlohmann::json::parse(rep_id.to_json()));
        extremes.push_back(nlohmann::json::parse(rep_k2.to_json()));
        bound.push_back(nlohmann::json::parse(rep_cp.to_json()));
        all_pass = all_pass && rep_id.violations.empty() && rep_k2.violations.empty() &&
                   rep_cp.violations.empty();
    }
    j["expectation_identity"] = identity;
    j["k2_extremes"] = extremes;
    j["cpairs_bound"] = bound;
    j["pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
    if (!all_pass) {
        std::cerr << "error: VerificationFailed: violations recorded\n";
        return 2;
    }
    return 0;
}

int cmd_treebank(const Options& opt) {
    auto reader_lines = opt.input_path == "-" ? treebank::make_line_reader(std::cin)
                                              : treebank::open_input(opt.input_path);
    treebank::ParseOptions parse_options;
    parse_options.drop_punct = opt.drop_punct;
    treebank::ConllReader reader(std::move(reader_lines), parse_options);

    treebank::ReportOptions report_options;
    if (opt.mc_samples > 0) {
        if (!opt.seed_set)
            throw CLI::ValidationError("--seed is required with --mc-dispersion");
        report_options.mc_samples = opt.mc_samples;
        report_options.mc_seed = opt.seed;
    }

    std::filesystem::create_directories(opt.out_dir);
    std::ofstream csv(std::filesystem::path(opt.out_dir) / "sentences.csv");
    if (!csv) throw Error("IoError", "cannot write CSV in " + opt.out_dir);
    treebank::CorpusSummary summary = treebank::corpus_report(reader, csv, report_options);
    csv.close();

    std::ofstream summary_file(std::filesystem::path(opt.out_dir) / "summary.json");
    if (!summary_file) throw Error("IoError", "cannot write summary in " + opt.out_dir);
    summary_file << summary.to_json() << "\n";
    summary_file.close();

    std::cout << summary.to_json() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"crossings of trees in linear arrangements"};
    app.require_subcommand(1);
    Options opt;

    auto add_format = [&opt](CLI::App* cmd) {
        cmd->add_option("--format", opt.format, "output format: tsv (default) or json")
            ->check(CLI::IsMember({"text", "tsv", "json"}));
    };
    auto add_threads = [&opt](CLI::App* cmd) {
        cmd->add_option("--threads", opt.threads, "worker thread cap")
            ->check(CLI::PositiveNumber);
    };
    auto add_seed = [&opt](CLI::App* cmd, bool required) {
        auto* o = cmd->add_option("--seed", opt.seed, "RNG seed (stochastic runs demand one)");
        if (required) o->required();
        o->each([&opt](const std::string&) { opt.seed_set = true; });
    };

    auto* gen = app.add_subcommand("gen", "generate a tree file");
    gen->add_option("--shape", opt.shape, "star|linear|random")
        ->required()
        ->check(CLI::IsMember({"star", "linear", "random"}));
    gen->add_option("--n", opt.n, "vertex count")->required()->check(CLI::PositiveNumber);
    add_seed(gen, false);

    auto* stats = app.add_subcommand("stats", "closed-form crossing theory of a tree");
    stats->add_option("--tree", opt.tree_path, "tree file ('-' for stdin)")->required();
    add_format(stats);

    auto* cross = app.add_subcommand("cross", "observed crossings of one arrangement");
    cross->add_option("--tree", opt.tree_path, "tree file")->required();
    cross->add_option("--order", opt.order_path, "arrangement file")->required();
    add_format(cross);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E[C]");
    mc->add_option("--tree", opt.tree_path, "tree file")->required();
    mc->add_option("--samples", opt.samples, "sample count")->check(CLI::PositiveNumber);
    add_seed(mc, true);
    add_threads(mc);
    add_format(mc);

    auto* fig5 = app.add_subcommand("fig5", "swap-walk trajectory of C and <d>");
    fig5->add_option("--tree", opt.tree_path, "tree file")->required();
    fig5->add_option("--order", opt.order_path, "initial arrangement (default: identity)");
    fig5->add_option("--swaps", opt.swaps, "swap steps")->check(CLI::NonNegativeNumber);
    fig5->add_option("--replicas", opt.replicas, "replica count")->check(CLI::PositiveNumber);
    add_seed(fig5, true);
    add_threads(fig5);
    add_format(fig5);

    auto* verify = app.add_subcommand("verify", "brute-force verification reports");
    verify->add_option("--max-n", opt.max_n, "run checks for n = 2..N")
        ->check(CLI::Range(2, 17));
    verify->add_option("--max-perm-n", opt.caps.max_perm_n, "permutation cap override");
    verify->add_option("--max-enum-n", opt.caps.max_enum_n, "enumeration cap override");
    add_threads(verify);

    auto* treebank_cmd = app.add_subcommand("treebank", "CoNLL corpus crossing statistics");
    treebank_cmd->add_option("--input", opt.input_path, "CoNLL-X/U file, gz allowed, '-' stdin")
        ->required();
    treebank_cmd->add_option("--out", opt.out_dir, "output directory")->required();
    treebank_cmd->add_flag("--drop-punct", opt.drop_punct, "drop punctuation tokens");
    treebank_cmd->add_option("--mc-dispersion", opt.mc_samples,
                             "per-sentence Monte Carlo dispersion of C, with this many samples");
    add_seed(treebank_cmd, false);

    try {
        app.parse(argc, argv);
        if (gen->parsed()) return cmd_gen(opt);
        if (stats->parsed()) return cmd_stats(opt);
        if (cross->parsed()) return cmd_cross(opt);
        if (mc->parsed()) return cmd_mc(opt);
        if (fig5->parsed()) return cmd_fig5(opt);
        if (verify->parsed()) return cmd_verify(opt);
        if (treebank_cmd->parsed()) return cmd_treebank(opt);
        return 1;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.name() == "TooLarge" ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
