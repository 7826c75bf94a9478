#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rhomega/matrix.hpp"

namespace rhomega {

struct PerronOptions {
    double tol = 1e-12;    // relative residual target
    long max_iter = 100000;
};

/// Certified output of the Perron eigensolver.
///
/// x is nonnegative with unit L1 norm and satisfies
/// ||A x - rho x||_inf <= tol * max(rho, 1).  For irreducible input x is
/// strictly positive and rho is additionally bracketed by the min/max of
/// the component ratios (A x)_i / x_i, so its error is bounded by the
/// bracket width independently of the spectral gap.
struct PerronPair {
    double rho = 0.0;
    std::vector<double> x;
    double residual = 0.0;
    long iterations = 0;
    bool zero_matrix = false; // all entries zero: rho = 0 with flat x
    bool reducible = false;   // eigenvector positivity not guaranteed
};

/// Reusable buffers for tight loops that perform many solves.
struct PerronScratch {
    std::vector<double> x;
    std::vector<double> y;
};

/// Power iteration on A + I.  The shift makes the dominant eigenvalue of a
/// periodic nonnegative pattern strictly dominant, and rho(A+I) - 1 = rho(A),
/// so the iteration converges where the unshifted one oscillates.  The
/// starting vector is the flat vector; results are deterministic.
///
/// Throws NoConvergence when the residual contract cannot be met within
/// max_iter.  A reducible input is not an error: the result only carries
/// the `reducible` flag.
PerronPair perron(const Matrix& a, const PerronOptions& opts = {});

/// Same iteration without validation or structure flags; `a` points to a
/// row-major n*n block.  Exists for the enumeration oracle, which performs
/// millions of solves over one scratch buffer.
PerronPair perron_raw(int n, const double* a, const PerronOptions& opts, PerronScratch& scratch);

/// Spectral radius only; the eigenvector is left in scratch.x.
double perron_rho_raw(int n, const double* a, const PerronOptions& opts, PerronScratch& scratch);

/// min and max over i of (A x)_i / x_i for strictly positive x.  Both
/// bracket the spectral radius of A; the bracket collapses at the Perron
/// eigenvector.
struct CWBounds {
    double lower;
    double upper;
};

CWBounds cw_bounds(const Matrix& a, std::span<const double> x);

enum class BoundSide { lower, upper };

/// Outcome of checking alpha x <= A x (side == lower) or A x <= alpha x
/// (side == upper) componentwise.
///
/// For irreducible A a `holds_strictly` verdict on the lower side
/// certifies rho(A) > alpha, and on the upper side rho(A) < alpha.
struct ImprovementVerdict {
    enum class Kind { holds, holds_strictly, fails };
    Kind kind;
    std::vector<int> strict_indices; // rows with strict inequality (0-based)
    int fail_index = -1;             // first violating row when kind == fails

    bool holds() const { return kind != Kind::fails; }
};

ImprovementVerdict strict_improvement_certificate(const Matrix& a, std::span<const double> x,
                                                  double alpha, BoundSide side,
                                                  double tol = 1e-12);

/// (min_dot, max_dot) of sum_i x_i * y_phi(i) over all permutations phi:
/// the max pairs both sequences sorted the same way, the min pairs them
/// oppositely.
std::pair<double, double> rearrangement_extremes(std::span<const double> x,
                                                 std::span<const double> y);

/// True iff the digraph with an edge i -> j whenever a(i,j) > 0 is
/// strongly connected.
bool is_irreducible(const Matrix& a);

/// True iff the matrix stays irreducible under every independent row and
/// column permutation; equivalently the pattern has no p x q all-zero
/// submatrix with p + q = n.  Checked by one bipartite matching per (i,j)
/// pair on the pattern with row i and column j removed.  For n = 1 the
/// convention is a(0,0) > 0.
bool is_fully_indecomposable(const Matrix& a);

} // namespace rhomega
