// chromaclust: generate / solve / bench / verify-lemmas for chromatic
// k-means and k-medians clustering.
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chromaclust/baseline.hpp"
#include "chromaclust/constant_approx.hpp"
#include "chromaclust/instance_io.hpp"
#include "chromaclust/lemma_lab.hpp"
#include "chromaclust/oracle.hpp"
#include "chromaclust/peeling.hpp"
#include "chromaclust/report.hpp"
#include "chromaclust/rng.hpp"

namespace {

using namespace chromaclust;

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

LogLevel log_level() {
    static const LogLevel level = [] {
        const char* env = std::getenv("CHROMACLUST_LOG");
        if (!env) return LogLevel::warn;
        const std::string s = env;
        if (s == "error") return LogLevel::error;
        if (s == "info") return LogLevel::info;
        if (s == "debug") return LogLevel::debug;
        return LogLevel::warn;
    }();
    return level;
}

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[info] " << msg << "\n";
}

int exit_code_for(const Error& e) {
    switch (e.error_class()) {
        case ErrorClass::validation: return 2;
        case ErrorClass::solver: return 3;
        case ErrorClass::budget: return 4;
    }
    return 1;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw BadSpecError("cannot write output file: " + path);
    out << text;
}

struct SolveOptions {
    std::string input;
    std::string algo = "peel-means";
    double epsilon = 0.3;
    std::uint64_t seed = 0;
    int threads = 1;
    int sample_cap = 18;
    long long subset_cap = 1LL << 18;
    std::optional<int> beam;
    int delta_steps = 0;
    int runs = 1;
    long long max_nodes = 50'000'000;
    std::string output;
};

PeelingConfig to_config(const SolveOptions& opt) {
    PeelingConfig cfg;
    cfg.epsilon = opt.epsilon;
    cfg.seed = opt.seed;
    cfg.threads = opt.threads;
    cfg.sample_size_cap = opt.sample_cap;
    cfg.subset_cap = opt.subset_cap;
    cfg.beam_width = opt.beam;
    cfg.delta_steps = opt.delta_steps;
    cfg.runs = opt.runs;
    cfg.max_nodes = opt.max_nodes;
    return cfg;
}

std::string config_echo(const SolveOptions& opt) {
    std::ostringstream s;
    s << "algo=" << opt.algo << " epsilon=" << fmt_double(opt.epsilon) << " seed=" << opt.seed
      << " threads=" << opt.threads << " sample-cap=" << opt.sample_cap << " subset-cap="
      << opt.subset_cap << " beam=" << (opt.beam ? std::to_string(*opt.beam) : "off")
      << " delta-steps=" << opt.delta_steps << " runs=" << opt.runs << " max-nodes="
      << opt.max_nodes;
    return s.str();
}

SolveReport run_algorithm(const Instance& inst, const SolveOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveReport rep;
    if (opt.algo == "constant-means" || opt.algo == "constant-medians") {
        const bool means = opt.algo == "constant-means";
        const auto base =
            means ? kmeans_baseline(flatten(inst), inst.k, derive_seed(opt.seed, "baseline"))
                  : kmedians_baseline(flatten(inst), inst.k, derive_seed(opt.seed, "baseline"));
        rep = means ? constant_kcmeans(inst, base) : constant_kcmedians(inst, base);
        rep.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } else if (opt.algo == "peel-means") {
        rep = solve_kcmeans_peeling(inst, to_config(opt));
    } else if (opt.algo == "peel-medians") {
        rep = solve_kcmedians_peeling(inst, to_config(opt));
    } else if (opt.algo == "full-sampling") {
        rep = solve_full_kcmeans_sampling(inst, to_config(opt));
    } else if (opt.algo == "oracle-means" || opt.algo == "oracle-medians") {
        rep = exact_chromatic(
            inst, opt.algo == "oracle-means" ? Objective::means : Objective::medians);
        rep.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    } else {
        throw BadSpecError("unknown algorithm: " + opt.algo);
    }
    rep.seed = opt.seed;
    rep.config_echo = config_echo(opt);
    return rep;
}

void add_solver_flags(CLI::App* cmd, SolveOptions& opt) {
    cmd->add_option("--algo", opt.algo,
                    "constant-means|constant-medians|peel-means|peel-medians|full-sampling|"
                    "oracle-means|oracle-medians");
    cmd->add_option("--epsilon", opt.epsilon, "approximation parameter in (0,1)");
    cmd->add_option("--seed", opt.seed, "root seed for all sub-streams");
    cmd->add_option("--threads", opt.threads, "worker-count hint for independent repetitions");
    cmd->add_option("--sample-cap", opt.sample_cap, "per-node sample size cap");
    cmd->add_option("--subset-cap", opt.subset_cap, "enumerated subsets per sample");
    cmd->add_option_function<int>(
        "--beam", [&opt](int b) { opt.beam = b; },
        "beam width (heuristic mode, voids the guarantee)");
    cmd->add_option("--delta-steps", opt.delta_steps, "delta grid steps (0 = formula default)");
    cmd->add_option("--runs", opt.runs, "independent repetitions, best-of");
    cmd->add_option("--max-nodes", opt.max_nodes, "per-run tree node budget");
}

int run_generate(const GenSpec& spec, const std::string& output) {
    const InstanceFile file = generate_instance(spec);
    write_text(output, instance_to_string(file));
    log_info("generated " + std::to_string(file.instance.groups.size()) + " groups");
    return 0;
}

int run_solve(const SolveOptions& opt) {
    const InstanceFile file = read_instance_file(opt.input);
    log_info("solving " + opt.input + " with " + opt.algo);
    const SolveReport rep = run_algorithm(file.instance, opt);
    write_text(opt.output, report_to_string(rep, file.instance));
    return 0;
}

struct BenchOptions {
    int count = 10;
    GenSpec gen;
    std::vector<std::string> algos{"constant-means", "constant-medians", "peel-means",
                                   "peel-medians"};
    SolveOptions solver;
    std::string output;
};

int run_bench(const BenchOptions& opt) {
    std::ostringstream table;
    table << bench_header() << "\n";
    for (int i = 0; i < opt.count; ++i) {
        GenSpec spec = opt.gen;
        spec.seed = derive_seed(opt.gen.seed, "gen", i);
        const InstanceFile file = generate_instance(spec);
        char name[32];
        std::snprintf(name, sizeof(name), "gen-%03d", i);

        for (std::size_t a = 0; a < opt.algos.size(); ++a) {
            SolveOptions sopt = opt.solver;
            sopt.algo = opt.algos[a];
            sopt.seed = derive_seed(opt.solver.seed, "solve", i, a);
            const SolveReport rep = run_algorithm(file.instance, sopt);

            double ratio = 0.0;
            bool ratio_known = false;
            try {
                const auto oracle = exact_chromatic(file.instance, rep.kind);
                if (oracle.objective > 1e-12) {
                    ratio = rep.objective / oracle.objective;
                    ratio_known = true;
                } else if (rep.objective <= 1e-12) {
                    ratio = 1.0;
                    ratio_known = true;
                }
            } catch (const TooLargeError&) {
                ratio_known = false;
            }
            table << bench_row(name, sopt.algo, sopt.seed, rep.objective, ratio, ratio_known,
                               rep.elapsed_seconds)
                  << "\n";
        }
        log_info("bench instance " + std::string(name) + " done");
    }
    write_text(opt.output, table.str());
    return 0;
}

struct LemmaOptions {
    int trials = 2000;
    std::uint64_t seed = 0;
    int threads = 1;
};

int run_verify_lemmas(const LemmaOptions& opt) {
    struct Row {
        std::string name;
        double value;
        double limit;
        bool upper;  // pass when value <= limit (else value >= limit)
    };
    std::vector<Row> rows;

    rows.push_back({"sampling-mean violation rate (n=200 t=20 eta=0.2)",
                    check_sampling_mean(opt.trials, 200, 20, 0.2,
                                        derive_seed(opt.seed, "lemma", 1), opt.threads),
                    0.2 + 0.03, true});
    rows.push_back({"subset-hitting failure rate (alpha=0.25 t=5 eta=0.2)",
                    check_subset_hitting(opt.trials, 200, 0.25, 5, 0.2,
                                         derive_seed(opt.seed, "lemma", 2), opt.threads),
                    0.2 + 0.03, true});
    rows.push_back({"mean-shift identity max residual",
                    check_mean_shift_identity(std::min(opt.trials, 1000),
                                              derive_seed(opt.seed, "lemma", 3), opt.threads),
                    1e-9, true});
    rows.push_back({"subset-mean bound worst slack",
                    check_subset_mean_bound(std::min(opt.trials, 1000),
                                            derive_seed(opt.seed, "lemma", 4), opt.threads),
                    -1e-9, false});
    rows.push_back({"median anchor worst normalized slack",
                    check_median_anchor(std::min(opt.trials, 500),
                                        derive_seed(opt.seed, "lemma", 5), opt.threads),
                    -1e-3, false});

    const int cases = std::min(opt.trials, 500);
    rows.push_back({"simplex lemma I violations over " + std::to_string(cases) + " cases",
                    static_cast<double>(check_simplex_cover(
                        cases, derive_seed(opt.seed, "lemma", 6), opt.threads)),
                    0.0, true});
    rows.push_back({"simplex lemma II violations over " + std::to_string(cases) + " cases",
                    static_cast<double>(check_simplex_cover_perturbed(
                        cases, derive_seed(opt.seed, "lemma", 7), opt.threads)),
                    0.0, true});

    bool all_pass = true;
    std::ostringstream out;
    for (const Row& r : rows) {
        const bool pass = r.upper ? r.value <= r.limit : r.value >= r.limit;
        all_pass = all_pass && pass;
        out << (pass ? "PASS" : "FAIL") << "  " << r.name << ": value=" << fmt_double(r.value)
            << (r.upper ? " limit<=" : " limit>=") << fmt_double(r.limit) << "\n";
    }
    std::cout << out.str();
    return all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chromatic k-means / k-medians clustering toolkit"};
    app.require_subcommand(1);

    // generate
    GenSpec gen;
    std::string gen_output;
    auto* cmd_gen = app.add_subcommand("generate", "write a synthetic instance file");
    cmd_gen->add_option("--k", gen.k, "clusters")->check(CLI::Range(2, 64));
    cmd_gen->add_option("--groups", gen.n_groups, "number of color groups");
    cmd_gen->add_option("--d", gen.d, "dimension");
    cmd_gen->add_option("--spread", gen.spread, "per-cluster noise sigma");
    cmd_gen->add_option("--separation", gen.separation, "min planted center distance");
    cmd_gen->add_flag("--full", gen.full, "every group gets exactly k points");
    cmd_gen->add_option("--seed", gen.seed, "generation seed");
    cmd_gen->add_option("--output", gen_output, "output path (default stdout)");

    // solve
    SolveOptions sopt;
    auto* cmd_solve = app.add_subcommand("solve", "run one solver on an instance file");
    cmd_solve->add_option("input", sopt.input, "instance file (native or delimited)")
        ->required();
    add_solver_flags(cmd_solve, sopt);
    cmd_solve->add_option("--output", sopt.output, "report path (default stdout)");

    // bench
    BenchOptions bopt;
    auto* cmd_bench = app.add_subcommand("bench", "generate instances, run solvers, emit TSV");
    cmd_bench->add_option("--count", bopt.count, "number of generated instances");
    cmd_bench->add_option("--k", bopt.gen.k, "clusters");
    cmd_bench->add_option("--groups", bopt.gen.n_groups, "groups per instance");
    cmd_bench->add_option("--d", bopt.gen.d, "dimension");
    cmd_bench->add_option("--spread", bopt.gen.spread, "noise sigma");
    cmd_bench->add_option("--separation", bopt.gen.separation, "planted separation");
    cmd_bench->add_flag("--full", bopt.gen.full, "full instances");
    cmd_bench->add_option("--algo", bopt.algos, "algorithms to run (repeatable)");
    cmd_bench->add_option("--seed", bopt.solver.seed, "root seed");
    cmd_bench->add_option("--epsilon", bopt.solver.epsilon, "epsilon for the solvers");
    cmd_bench->add_option("--sample-cap", bopt.solver.sample_cap, "per-node sample cap");
    cmd_bench->add_option("--runs", bopt.solver.runs, "repetitions per solve");
    cmd_bench->add_option("--threads", bopt.solver.threads, "worker-count hint");
    cmd_bench->add_option("--output", bopt.output, "table path (default stdout)");

    // verify-lemmas
    LemmaOptions lopt;
    auto* cmd_lemmas = app.add_subcommand("verify-lemmas", "statistical lemma checks");
    cmd_lemmas->add_option("--trials", lopt.trials, "trials per probabilistic check");
    cmd_lemmas->add_option("--seed", lopt.seed, "root seed");
    cmd_lemmas->add_option("--threads", lopt.threads, "worker-count hint");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_gen->parsed()) return run_generate(gen, gen_output);
        if (cmd_solve->parsed()) return run_solve(sopt);
        if (cmd_bench->parsed()) {
            bopt.gen.seed = bopt.solver.seed;
            return run_bench(bopt);
        }
        if (cmd_lemmas->parsed()) return run_verify_lemmas(lopt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
