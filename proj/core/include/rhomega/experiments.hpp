#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "rhomega/matrix.hpp"
#include "rhomega/optimize.hpp"
#include "rhomega/oracle.hpp"

namespace rhomega {

struct EntryDistribution {
    enum class Kind { uniform_int, uniform_real };
    Kind kind = Kind::uniform_int;
    double lo = 1.0;
    double hi = 9.0;

    static EntryDistribution uniform_int(long lo, long hi);
    static EntryDistribution uniform_real(double lo, double hi);
};

/// Deterministic splittable generator: every (seed, dim, instance) triple
/// keys an independent substream, so instances can run in parallel or in
/// any order and still reproduce bit-for-bit.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t dim = 0, std::uint64_t instance = 0);

    std::uint64_t next_u64();
    /// Uniform draw from [lo, hi).
    double next_real(double lo, double hi);
    /// Uniform draw from {lo, ..., hi} (inclusive), rejection-corrected.
    std::int64_t next_int(std::int64_t lo, std::int64_t hi);

private:
    std::uint64_t state_;
};

/// n x n matrix of independent draws from `dist`, deterministic in the
/// generator state.
Matrix random_matrix(int n, CounterRng& rng, const EntryDistribution& dist);

enum class RunDirection { max, min, both };

struct ExperimentConfig {
    std::vector<int> dims;
    int instances_per_dim = 50;
    std::uint64_t seed = 0;
    EntryDistribution dist = EntryDistribution{};
    RunDirection direction = RunDirection::both;
    OptimizeOptions solver;
    int threads = 1;
    /// Cross-check each result against exhaustive enumeration (only for
    /// dims within oracle_limit).
    bool oracle_check = false;
    int oracle_limit = kDefaultOracleLimit;
    /// Test hook: when set, supplies the instance matrix instead of the
    /// seeded generator.
    std::function<Matrix(int dim, int instance)> matrix_source;
};

struct ExperimentRow {
    int dim = 0;
    int instance = 0;
    OptimizeSense sense = OptimizeSense::maximize;
    int loops = 0;
    double rho = 0.0;
    double mean_row_sum = 0.0;
    double runtime_seconds = 0.0;
    std::uint64_t seed = 0;
    bool oracle_match = true;
    std::string error; // nonempty when the solver failed on this instance
};

struct DimStats {
    int dim = 0;
    double mean_loops = 0.0;
    int max_loops_observed = 0;
    double mean_runtime = 0.0;
    int instance_count = 0;
};

struct LoopStats {
    std::vector<ExperimentRow> rows; // ordered by (dim, instance, direction)
    std::vector<DimStats> per_dim;
    int global_max_loops = 0;
    int oracle_checked = 0;
    int oracle_matched = 0;
};

/// Runs the configured optimizer over fresh random matrices and records
/// the while-loop count of every run.  Loop counts are reproducible
/// bit-for-bit given (seed, config, solver settings); runtimes are not.
/// Solver errors are recorded per instance and do not abort the sweep.
LoopStats run_convergence_experiment(const ExperimentConfig& cfg);

/// CSV with header dim,instance,direction,loops,rho,mean_row_sum,
/// runtime_seconds,seed; one row per (instance, direction).
void write_csv(std::ostream& out, const LoopStats& stats);

} // namespace rhomega
