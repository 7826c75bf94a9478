#pragma once

#include <span>
#include <string>
#include <vector>

#include "rhomega/matrix.hpp"
#include "rhomega/spectral.hpp"

namespace rhomega {

enum class OptimizeSense { maximize, minimize };

/// Starting row order for the alignment loop.  The loop converges to the
/// same optimum from any start; this only trades iterations.
///   identity:  keep the row-sorted matrix as built (default).
///   row_norms: pre-sort rows by ascending Euclidean norm.
///   row_sums:  pre-sort rows by ascending row sum.
enum class InitHeuristic { identity, row_norms, row_sums };

struct OptimizeOptions {
    double tol = 1e-12;
    long max_iter = 100000;
    int max_loops = 64;
    InitHeuristic init = InitHeuristic::identity;
    bool unsafe_accept = false; // skip the positivity / full-indecomposability gate
};

/// One pass of the alignment loop: the Perron pair of the current iterate
/// and the row reorder applied in response.  `applied` is the identity on
/// the final pass exactly when the loop converged.
struct OptimizeStep {
    double rho;
    std::vector<double> x;
    Permutation applied;
};

struct OptimizeTrace {
    std::vector<OptimizeStep> steps;
    int loop_count = 0;     // number of eigensolves performed
    Permutation initial_q;  // row order chosen by the init heuristic
};

struct OptimizeResult {
    /// The row-sorted matrix with the accumulated permutation applied to
    /// its columns; a member of the input's row-rearrangement set whose
    /// spectral radius equals `rho`.
    Matrix witness;
    double rho;
    OptimizeTrace trace;
    bool certificate;    // alignment certificate verified on the final iterate
    bool loop_limit_hit; // max_loops stopped the loop; rho is best-so-far
};

/// Tie threshold for comparing eigenvector components: components closer
/// than this are treated as equal, which stops the loop from cycling over
/// numerically tied entries.
double tie_tolerance(std::span<const double> x);

/// Permutation p with apply_permutation(p, x) sorted in `direction`.  Sorting is
/// stable; returns the identity exactly when x is already sorted up to the
/// tie tolerance.
Permutation align_to_vector(std::span<const double> x, SortDirection direction);

/// Alignment certificates.  For strictly positive x (irreducible C) these
/// are necessary and sufficient for C to attain the extreme spectral
/// radius over its row-rearrangement set:
///   max: x_k < x_j  implies  c(i,k) <= c(i,j) for all rows i,
///   min: x_k < x_j  implies  c(i,k) >= c(i,j) for all rows i,
/// with component comparisons read up to the tie tolerance.
///
/// x must satisfy the eigen-equation of C; throws ResidualTooLarge when
/// the residual exceeds 100 * tol * max(rho, 1).
bool is_max_optimal(const Matrix& c, std::span<const double> x, double tol = 1e-12);
bool is_min_optimal(const Matrix& c, std::span<const double> x, double tol = 1e-12);

/// Iterative eigenvector/row alignment search for the member of the
/// row-rearrangement set with extreme spectral radius.
///
/// maximize: rows sorted ascending, eigenvector aligned to ascending
/// order each pass; the spectral radius strictly increases whenever a
/// non-identity reorder is applied.  minimize mirrors it with descending
/// rows (and an ascending eigenvector at the fixed point).
///
/// Requires strictly positive or fully indecomposable input unless
/// opts.unsafe_accept is set (throws PreconditionFailed otherwise).
OptimizeResult optimize_rho(const Matrix& a, OptimizeSense sense, const OptimizeOptions& opts = {});
OptimizeResult maximize_rho(const Matrix& a, const OptimizeOptions& opts = {});
OptimizeResult minimize_rho(const Matrix& a, const OptimizeOptions& opts = {});

/// JSON array of step records; permutations are 1-based, floats carry 17
/// significant digits.
std::string trace_to_json(const OptimizeTrace& trace);

} // namespace rhomega
