// rhomega command line: bounds, extremal rearrangements, certificates and
// convergence experiments for spectral radii over row-rearrangement sets.

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rhomega/analysis.hpp"
#include "rhomega/experiments.hpp"
#include "rhomega/io.hpp"
#include "rhomega/optimize.hpp"
#include "rhomega/oracle.hpp"
#include "rhomega/spectral.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCertificate = 3;

struct SolverFlags {
    double tol = 1e-12;
    long max_iter = 100000;
    int max_loops = 64;
    int limit_n = rhomega::kDefaultOracleLimit;
    std::string init = "identity";
    bool unsafe_accept = false;
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--tol", f.tol, "Relative eigensolver tolerance")->capture_default_str();
    cmd->add_option("--max-iter", f.max_iter, "Power iteration cap per eigensolve")
        ->capture_default_str();
    cmd->add_option("--max-loops", f.max_loops, "Alignment loop cap")->capture_default_str();
}

rhomega::OptimizeOptions optimize_options(const SolverFlags& f) {
    rhomega::OptimizeOptions o;
    o.tol = f.tol;
    o.max_iter = f.max_iter;
    o.max_loops = f.max_loops;
    o.unsafe_accept = f.unsafe_accept;
    if (f.init == "row-norms")
        o.init = rhomega::InitHeuristic::row_norms;
    else if (f.init == "row-sums")
        o.init = rhomega::InitHeuristic::row_sums;
    else
        o.init = rhomega::InitHeuristic::identity;
    return o;
}

std::string settings_json(const SolverFlags& f) {
    std::ostringstream out;
    out << "{\"tol\":" << rhomega::format_double(f.tol) << ",\"max_iter\":" << f.max_iter
        << ",\"max_loops\":" << f.max_loops << ",\"limit_n\":" << f.limit_n << "}";
    return out.str();
}

std::string one_based_json(const rhomega::Permutation& p) {
    std::ostringstream out;
    out << '[';
    const auto v = p.one_based();
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << v[i];
    }
    out << ']';
    return out.str();
}

int run_optimize(const std::string& input, rhomega::OptimizeSense sense, const SolverFlags& flags,
                 const std::string& format, const std::string& trace_path,
                 const std::string& witness_path) {
    const rhomega::Matrix a = rhomega::load_matrix(input);
    const rhomega::OptimizeResult res = rhomega::optimize_rho(a, sense, optimize_options(flags));

    if (!trace_path.empty()) {
        std::ofstream t(trace_path);
        if (!t) throw rhomega::ParseError("cannot open trace file for writing: " + trace_path);
        t << rhomega::trace_to_json(res.trace) << '\n';
    }
    if (!witness_path.empty()) rhomega::save_matrix(witness_path, res.witness);

    if (format == "json") {
        std::cout << "{\"direction\":\""
                  << (sense == rhomega::OptimizeSense::maximize ? "max" : "min")
                  << "\",\"rho\":" << rhomega::format_double(res.rho)
                  << ",\"loop_count\":" << res.trace.loop_count
                  << ",\"certificate\":" << (res.certificate ? "true" : "false")
                  << ",\"loop_limit_hit\":" << (res.loop_limit_hit ? "true" : "false")
                  << ",\"initial_q\":" << one_based_json(res.trace.initial_q)
                  << ",\"witness\":" << rhomega::matrix_to_json(res.witness)
                  << ",\"trace\":" << rhomega::trace_to_json(res.trace)
                  << ",\"settings\":" << settings_json(flags) << "}\n";
    } else {
        std::cout << (sense == rhomega::OptimizeSense::maximize ? "max" : "min")
                  << " rho = " << rhomega::format_double(res.rho)
                  << "  (loops " << res.trace.loop_count << ", certificate "
                  << (res.certificate ? "true" : "false") << ")\n";
        std::cout << "witness:\n" << rhomega::format_matrix_pretty(res.witness);
    }
    if (res.loop_limit_hit) {
        std::cerr << "warning: loop limit reached before convergence; result is best-so-far\n";
        return kExitSolver;
    }
    return kExitOk;
}

rhomega::EntryDistribution parse_dist(const std::string& text) {
    // int:lo:hi or real:lo:hi
    std::istringstream in(text);
    std::string kind, lo, hi;
    if (!std::getline(in, kind, ':') || !std::getline(in, lo, ':') || !std::getline(in, hi))
        throw rhomega::InvalidArgument("distribution must look like int:1:9 or real:0:1");
    try {
        if (kind == "int")
            return rhomega::EntryDistribution::uniform_int(std::stol(lo), std::stol(hi));
        if (kind == "real")
            return rhomega::EntryDistribution::uniform_real(std::stod(lo), std::stod(hi));
    } catch (const std::logic_error&) {
        throw rhomega::InvalidArgument("bad distribution bounds in: " + text);
    }
    throw rhomega::InvalidArgument("unknown distribution kind: " + kind);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral radius extremes over row-rearrangement sets"};
    app.require_subcommand(1);

    std::function<int()> action;

    // ---- bound ----------------------------------------------------------
    auto* bound = app.add_subcommand(
        "bound", "Sandwich the mean row sum between the extreme spectral radii");
    {
        static std::string input, method = "auto", format = "text";
        static double epsilon = 0.0;
        static SolverFlags flags;
        bound->add_option("-i,--input", input, "Matrix file (text or JSON)")->required();
        bound->add_option("--method", method, "auto, oracle, or algorithm")
            ->check(CLI::IsMember({"auto", "oracle", "algorithm"}))
            ->capture_default_str();
        bound->add_option("--limit-n", flags.limit_n, "Max dimension for exhaustive enumeration")
            ->capture_default_str();
        bound->add_option("--epsilon", epsilon,
                          "Analyze the matrix with every entry increased by this amount")
            ->capture_default_str();
        bound->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        bound->add_flag("--unsafe-accept", flags.unsafe_accept,
                        "Skip the algorithm input structure gate");
        add_solver_flags(bound, flags);
        bound->callback([&action] {
            action = [] {
                const rhomega::Matrix a = rhomega::load_matrix(input);
                rhomega::AnalysisOptions opts;
                opts.perron = {flags.tol, flags.max_iter};
                opts.optimize = optimize_options(flags);
                opts.limit_n = flags.limit_n;
                opts.epsilon = epsilon;
                const auto m = method == "auto"
                                   ? (a.dim() <= flags.limit_n ? rhomega::BoundMethod::oracle
                                                               : rhomega::BoundMethod::algorithm)
                                   : (method == "oracle" ? rhomega::BoundMethod::oracle
                                                         : rhomega::BoundMethod::algorithm);
                const rhomega::BoundReport r = rhomega::bound_report(a, m, opts);
                if (format == "json") {
                    std::string body = rhomega::bound_report_to_json(r);
                    body.pop_back(); // splice settings into the object
                    std::cout << body << ",\"settings\":" << settings_json(flags) << "}\n";
                } else {
                    std::cout << rhomega::bound_report_summary(r) << '\n';
                }
                return kExitOk;
            };
        });
    }

    // ---- maximize / minimize -------------------------------------------
    for (const bool maximize : {true, false}) {
        auto* cmd = app.add_subcommand(
            maximize ? "maximize" : "minimize",
            maximize ? "Find a rearrangement attaining the largest spectral radius"
                     : "Find a rearrangement attaining the smallest spectral radius");
        static std::string input_s[2], format_s[2] = {"text", "text"}, trace_s[2], witness_s[2];
        static SolverFlags flags_s[2];
        const int slot = maximize ? 0 : 1;
        cmd->add_option("-i,--input", input_s[slot], "Matrix file (text or JSON)")->required();
        cmd->add_option("--format", format_s[slot], "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        cmd->add_option("--trace", trace_s[slot], "Write the JSON loop trace to this file");
        cmd->add_option("-o,--witness-out", witness_s[slot],
                        "Write the witness matrix to this file (.json selects JSON)");
        cmd->add_option("--init", flags_s[slot].init, "identity, row-norms, or row-sums")
            ->check(CLI::IsMember({"identity", "row-norms", "row-sums"}))
            ->capture_default_str();
        cmd->add_flag("--unsafe-accept", flags_s[slot].unsafe_accept,
                      "Skip the positivity / full-indecomposability gate");
        add_solver_flags(cmd, flags_s[slot]);
        cmd->callback([&action, maximize, slot] {
            action = [maximize, slot] {
                return run_optimize(input_s[slot],
                                    maximize ? rhomega::OptimizeSense::maximize
                                             : rhomega::OptimizeSense::minimize,
                                    flags_s[slot], format_s[slot], trace_s[slot], witness_s[slot]);
            };
        });
    }

    // ---- oracle ----------------------------------------------------------
    auto* oracle = app.add_subcommand(
        "oracle", "Exhaustively enumerate the rearrangement set (small n only)");
    {
        static std::string input, format = "text";
        static SolverFlags flags;
        oracle->add_option("-i,--input", input, "Matrix file (text or JSON)")->required();
        oracle->add_option("--limit-n", flags.limit_n, "Max dimension for exhaustive enumeration")
            ->capture_default_str();
        oracle->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}))
            ->capture_default_str();
        add_solver_flags(oracle, flags);
        oracle->callback([&action] {
            action = [] {
                const rhomega::Matrix a = rhomega::load_matrix(input);
                if (a.dim() > rhomega::kDefaultOracleLimit && a.dim() <= flags.limit_n) {
                    try {
                        std::cerr << "warning: exhaustive enumeration of "
                                  << rhomega::omega_count(a) << " members; expect a long run\n";
                    } catch (const rhomega::DimensionTooLarge&) {
                        std::cerr << "warning: the member count overflows 64 bits; "
                                     "this will not finish\n";
                    }
                }
                const rhomega::OracleReport r =
                    rhomega::oracle_extremes(a, {flags.tol, flags.max_iter}, flags.limit_n);
                if (format == "json") {
                    std::cout << "{\"min_rho\":" << rhomega::format_double(r.min_rho)
                              << ",\"argmin\":" << rhomega::matrix_to_json(r.argmin)
                              << ",\"max_rho\":" << rhomega::format_double(r.max_rho)
                              << ",\"argmax\":" << rhomega::matrix_to_json(r.argmax)
                              << ",\"count\":" << r.count
                              << ",\"mean_row_sum\":" << rhomega::format_double(r.mean_row_sum)
                              << ",\"settings\":" << settings_json(flags) << "}\n";
                } else {
                    std::cout << "members enumerated: " << r.count << '\n'
                              << "min rho = " << rhomega::format_double(r.min_rho) << " at\n"
                              << rhomega::format_matrix_pretty(r.argmin)
                              << "mean row sum = " << rhomega::format_double(r.mean_row_sum) << '\n'
                              << "max rho = " << rhomega::format_double(r.max_rho) << " at\n"
                              << rhomega::format_matrix_pretty(r.argmax);
                }
                return kExitOk;
            };
        });
    }

    // ---- certify ---------------------------------------------------------
    auto* certify = app.add_subcommand(
        "certify", "Check membership and extremal optimality of a candidate matrix");
    {
        static std::string input, against, direction = "max";
        static SolverFlags flags;
        certify->add_option("-i,--input", input, "Candidate matrix file")->required();
        certify->add_option("--against", against, "Original matrix defining the set")->required();
        certify->add_option("--direction", direction, "max or min")
            ->check(CLI::IsMember({"max", "min"}))
            ->capture_default_str();
        add_solver_flags(certify, flags);
        certify->callback([&action] {
            action = [] {
                const rhomega::Matrix candidate = rhomega::load_matrix(input);
                const rhomega::Matrix original = rhomega::load_matrix(against);
                if (candidate.dim() != original.dim())
                    throw rhomega::DimensionMismatch(
                        "candidate is " + std::to_string(candidate.dim()) + "x" +
                        std::to_string(candidate.dim()) + " but original is " +
                        std::to_string(original.dim()) + "x" + std::to_string(original.dim()));
                if (!rhomega::in_omega(candidate, original)) {
                    std::cerr << "candidate is not a row rearrangement of the original "
                                 "(row multisets differ)\n";
                    std::cout << "membership: false\n";
                    return kExitCertificate;
                }
                std::cout << "membership: true\n";
                const rhomega::PerronPair p =
                    rhomega::perron(candidate, {flags.tol, flags.max_iter});
                const bool ok = direction == "max"
                                    ? rhomega::is_max_optimal(candidate, p.x, flags.tol)
                                    : rhomega::is_min_optimal(candidate, p.x, flags.tol);
                std::cout << "rho = " << rhomega::format_double(p.rho) << '\n'
                          << "certificate(" << direction << "): " << (ok ? "true" : "false")
                          << '\n';
                return ok ? kExitOk : kExitCertificate;
            };
        });
    }

    // ---- equality ----------------------------------------------------------
    auto* equality = app.add_subcommand(
        "equality", "Detect the structural cases that collapse the sandwich to equality");
    {
        static std::string input;
        static bool verify = false;
        static SolverFlags flags;
        static double eq_tol = 1e-10;
        equality->add_option("-i,--input", input, "Matrix file (text or JSON)")->required();
        equality->add_flag("--verify", verify,
                           "Also enumerate the set and check the three equality conditions");
        equality->add_option("--equality-tol", eq_tol, "Relative spread treated as equal")
            ->capture_default_str();
        equality->add_option("--limit-n", flags.limit_n, "Max dimension for --verify")
            ->capture_default_str();
        add_solver_flags(equality, flags);
        equality->callback([&action] {
            action = [] {
                const rhomega::Matrix a = rhomega::load_matrix(input);
                if (!a.all_positive())
                    std::cerr << "warning: equality analysis assumes strictly positive input; "
                                 "zero entries present\n";
                const auto c = rhomega::detect_equality_case(a, eq_tol);
                std::cout << "equality case: " << rhomega::equality_case_name(c) << '\n';
                if (verify) {
                    rhomega::AnalysisOptions opts;
                    opts.perron = {flags.tol, flags.max_iter};
                    opts.limit_n = flags.limit_n;
                    opts.equality_tol = eq_tol;
                    const auto v = rhomega::verify_equality_equivalence(a, opts);
                    std::cout << "mean == max rho: " << (v.mean_equals_max ? "true" : "false")
                              << '\n'
                              << "case detected:   " << (v.case_detected ? "true" : "false") << '\n'
                              << "mean == min rho: " << (v.mean_equals_min ? "true" : "false")
                              << '\n'
                              << "consistent:      " << (v.consistent() ? "true" : "false") << '\n';
                }
                return kExitOk;
            };
        });
    }

    // ---- experiment ----------------------------------------------------------
    auto* experiment = app.add_subcommand(
        "experiment", "Convergence sweep: loop counts over random instances per dimension");
    {
        static std::vector<int> dims;
        static int instances = 50;
        static std::uint64_t seed = 0;
        static std::string dist = "int:1:9", direction = "both", out_path;
        static int threads = 1;
        static bool oracle_check = false;
        static SolverFlags flags;
        experiment->add_option("--dims", dims, "Dimensions to sweep, e.g. 5,25,50")
            ->required()
            ->delimiter(',');
        experiment->add_option("--instances", instances, "Random instances per dimension")
            ->capture_default_str();
        experiment->add_option("--seed", seed, "Base seed; substreams derive from (seed, dim, instance)")
            ->capture_default_str();
        experiment->add_option("--dist", dist, "Entry distribution: int:lo:hi or real:lo:hi")
            ->capture_default_str();
        experiment->add_option("--direction", direction, "max, min, or both")
            ->check(CLI::IsMember({"max", "min", "both"}))
            ->capture_default_str();
        experiment->add_option("--threads", threads, "Worker threads (instances are independent)")
            ->capture_default_str();
        experiment->add_flag("--oracle-check", oracle_check,
                             "Cross-check each result against exhaustive enumeration (small dims)");
        experiment->add_option("-o,--output", out_path, "CSV output file (default stdout)");
        add_solver_flags(experiment, flags);
        experiment->callback([&action] {
            action = [] {
                rhomega::ExperimentConfig cfg;
                cfg.dims = dims;
                cfg.instances_per_dim = instances;
                cfg.seed = seed;
                cfg.dist = parse_dist(dist);
                cfg.direction = direction == "max"   ? rhomega::RunDirection::max
                                : direction == "min" ? rhomega::RunDirection::min
                                                     : rhomega::RunDirection::both;
                cfg.solver = optimize_options(flags);
                cfg.threads = threads;
                cfg.oracle_check = oracle_check;
                const rhomega::LoopStats stats = rhomega::run_convergence_experiment(cfg);
                if (out_path.empty()) {
                    rhomega::write_csv(std::cout, stats);
                } else {
                    std::ofstream out(out_path);
                    if (!out)
                        throw rhomega::ParseError("cannot open CSV file for writing: " + out_path);
                    rhomega::write_csv(out, stats);
                }
                std::cerr << "global max loops observed: " << stats.global_max_loops << '\n';
                for (const auto& d : stats.per_dim)
                    std::cerr << "dim " << d.dim << ": mean loops " << d.mean_loops
                              << ", max loops " << d.max_loops_observed << ", instances "
                              << d.instance_count << '\n';
                if (stats.oracle_checked)
                    std::cerr << "oracle cross-check: " << stats.oracle_matched << '/'
                              << stats.oracle_checked << " matched\n";
                if (stats.global_max_loops > 3)
                    std::cerr << "finding: observed loop count exceeds the usual bound of 3\n";
                return kExitOk;
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        return action();
    } catch (const rhomega::ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rhomega::DimensionMismatch& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rhomega::DimensionTooLarge& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rhomega::InvalidArgument& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const rhomega::Error& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    }
}
