#include "rhomega/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <ostream>
#include <thread>

#include "rhomega/io.hpp"

namespace rhomega {

EntryDistribution EntryDistribution::uniform_int(long lo, long hi) {
    if (lo < 0 || hi < lo) throw InvalidArgument("uniform_int: need 0 <= lo <= hi");
    return {Kind::uniform_int, static_cast<double>(lo), static_cast<double>(hi)};
}

EntryDistribution EntryDistribution::uniform_real(double lo, double hi) {
    if (!(lo >= 0.0) || !(hi > lo)) throw InvalidArgument("uniform_real: need 0 <= lo < hi");
    return {Kind::uniform_real, lo, hi};
}

namespace {

// SplitMix64 output function
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t dim, std::uint64_t instance)
    : state_(mix64(mix64(mix64(seed) ^ dim) ^ instance)) {}

std::uint64_t CounterRng::next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double CounterRng::next_real(double lo, double hi) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
}

std::int64_t CounterRng::next_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    // Lemire's multiply-shift with rejection of the biased window
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * range;
    auto low = static_cast<std::uint64_t>(m);
    if (low < range) {
        const std::uint64_t cutoff = (0 - range) % range;
        while (low < cutoff) {
            m = static_cast<unsigned __int128>(next_u64()) * range;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return lo + static_cast<std::int64_t>(m >> 64);
}

Matrix random_matrix(int n, CounterRng& rng, const EntryDistribution& dist) {
    if (n < 1) throw InvalidArgument("random_matrix: dimension must be at least 1");
    std::vector<double> a(static_cast<std::size_t>(n) * n);
    for (double& v : a) {
        v = dist.kind == EntryDistribution::Kind::uniform_int
                ? static_cast<double>(rng.next_int(static_cast<std::int64_t>(dist.lo),
                                                   static_cast<std::int64_t>(dist.hi)))
                : rng.next_real(dist.lo, dist.hi);
    }
    return Matrix(n, std::move(a));
}

namespace {

struct Task {
    int dim;
    int instance;
};

void run_task(const ExperimentConfig& cfg, const Task& task, std::vector<ExperimentRow>& rows,
              std::size_t slot) {
    Matrix a = [&] {
        if (cfg.matrix_source) return cfg.matrix_source(task.dim, task.instance);
        CounterRng rng(cfg.seed, static_cast<std::uint64_t>(task.dim),
                       static_cast<std::uint64_t>(task.instance));
        return random_matrix(task.dim, rng, cfg.dist);
    }();
    const double mean = mean_row_sum(a);

    const bool check_oracle = cfg.oracle_check && task.dim <= cfg.oracle_limit;
    double oracle_min = 0.0, oracle_max = 0.0;
    if (check_oracle) {
        const OracleReport rep =
            oracle_extremes(a, PerronOptions{cfg.solver.tol, cfg.solver.max_iter}, cfg.oracle_limit);
        oracle_min = rep.min_rho;
        oracle_max = rep.max_rho;
    }

    std::vector<OptimizeSense> senses;
    if (cfg.direction != RunDirection::min) senses.push_back(OptimizeSense::maximize);
    if (cfg.direction != RunDirection::max) senses.push_back(OptimizeSense::minimize);

    for (std::size_t s = 0; s < senses.size(); ++s) {
        ExperimentRow row;
        row.dim = task.dim;
        row.instance = task.instance;
        row.sense = senses[s];
        row.mean_row_sum = mean;
        row.seed = cfg.seed;
        const auto start = std::chrono::steady_clock::now();
        try {
            const OptimizeResult res = optimize_rho(a, senses[s], cfg.solver);
            row.loops = res.trace.loop_count;
            row.rho = res.rho;
            if (res.loop_limit_hit) row.error = "loop limit reached";
            if (check_oracle) {
                const double target =
                    senses[s] == OptimizeSense::maximize ? oracle_max : oracle_min;
                row.oracle_match = std::abs(res.rho - target) <= 1e-9;
            }
        } catch (const Error& e) {
            row.error = e.what();
            row.rho = std::nan("");
        }
        row.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows[slot + s] = std::move(row);
    }
}

} // namespace

LoopStats run_convergence_experiment(const ExperimentConfig& cfg) {
    if (cfg.dims.empty()) throw InvalidArgument("experiment: dims must not be empty");
    for (int d : cfg.dims)
        if (d < 2) throw InvalidArgument("experiment: every dim must be at least 2");
    if (cfg.instances_per_dim < 1)
        throw InvalidArgument("experiment: instances_per_dim must be positive");

    const int per_task = cfg.direction == RunDirection::both ? 2 : 1;
    std::vector<Task> tasks;
    for (int d : cfg.dims)
        for (int i = 0; i < cfg.instances_per_dim; ++i) tasks.push_back({d, i});

    LoopStats stats;
    stats.rows.resize(tasks.size() * per_task);

    const int threads = std::max(1, cfg.threads);
    if (threads == 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t)
            run_task(cfg, tasks[t], stats.rows, t * per_task);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < tasks.size(); t = next.fetch_add(1))
                    run_task(cfg, tasks[t], stats.rows, t * per_task);
            });
        }
        for (auto& th : pool) th.join();
    }

    std::map<int, DimStats> per_dim;
    for (const auto& row : stats.rows) {
        auto& d = per_dim[row.dim];
        d.dim = row.dim;
        if (row.error.empty() || row.loops > 0) {
            d.mean_loops += row.loops;
            d.mean_runtime += row.runtime_seconds;
            d.max_loops_observed = std::max(d.max_loops_observed, row.loops);
            stats.global_max_loops = std::max(stats.global_max_loops, row.loops);
        }
        if (!row.error.empty()) continue;
        if (cfg.oracle_check && row.dim <= cfg.oracle_limit) {
            ++stats.oracle_checked;
            if (row.oracle_match) ++stats.oracle_matched;
        }
    }
    for (auto& [dim, d] : per_dim) {
        const int runs = cfg.instances_per_dim * per_task;
        d.mean_loops /= runs;
        d.mean_runtime /= runs;
        d.instance_count = cfg.instances_per_dim;
        stats.per_dim.push_back(d);
    }
    return stats;
}

void write_csv(std::ostream& out, const LoopStats& stats) {
    out << "dim,instance,direction,loops,rho,mean_row_sum,runtime_seconds,seed\n";
    for (const auto& row : stats.rows) {
        out << row.dim << ',' << row.instance << ','
            << (row.sense == OptimizeSense::maximize ? "max" : "min") << ',' << row.loops << ','
            << format_double(row.rho) << ',' << format_double(row.mean_row_sum) << ','
            << format_double(row.runtime_seconds) << ',' << row.seed << '\n';
    }
}

} // namespace rhomega
