#include "rhomega/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <sstream>

#include "rhomega/io.hpp"

namespace rhomega {

double tie_tolerance(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return 1e-9 * m;
}

namespace {

bool sorted_under_tie_rule(std::span<const double> x, SortDirection direction, double tie_tol) {
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (direction == SortDirection::ascending) {
            if (x[i + 1] < x[i] - tie_tol) return false;
        } else {
            if (x[i + 1] > x[i] + tie_tol) return false;
        }
    }
    return true;
}

} // namespace

Permutation align_to_vector(std::span<const double> x, SortDirection direction) {
    const int n = static_cast<int>(x.size());
    if (sorted_under_tie_rule(x, direction, tie_tolerance(x))) return Permutation::identity(n);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    if (direction == SortDirection::ascending)
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] < x[b]; });
    else
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] > x[b]; });
    return Permutation(std::move(idx));
}

namespace {

void check_eigenpair(const Matrix& c, std::span<const double> x, double tol) {
    const int n = c.dim();
    if (static_cast<int>(x.size()) != n)
        throw DimensionMismatch("certificate: vector length does not match matrix");
    double rho = 0.0;
    std::vector<double> y(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += c(i, j) * x[j];
        y[i] = acc;
        rho += acc;
    }
    double sum_x = 0.0;
    for (double v : x) sum_x += v;
    if (sum_x <= 0.0) throw NonPositiveVector("certificate: vector must be nonnegative and nonzero");
    rho /= sum_x; // scale-free estimate of the eigenvalue
    double resid = 0.0;
    for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(y[i] - rho * x[i]));
    if (resid > 100.0 * tol * std::max(rho, 1.0) * sum_x) {
        char text[32];
        std::snprintf(text, sizeof(text), "%.3g", resid);
        throw ResidualTooLarge(std::string("certificate: vector fails the eigen-equation "
                                           "(residual ") + text + ")");
    }
}

// Checks, for every row i and every pair x_k < x_j (beyond the tie
// tolerance), that c(i,k) <= c(i,j) (max sense) or >= (min sense).
// Sweeping indices in x-sorted order with a running prefix extreme makes
// the check O(n^2) instead of O(n^3).
bool alignment_certificate(const Matrix& c, std::span<const double> x, bool max_sense) {
    const int n = c.dim();
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] < x[b]; });
    const double tie_tol = tie_tolerance(x);

    for (int i = 0; i < n; ++i) {
        // prefix holds the extreme entry over all k with x_k < x_j - tie_tol
        double prefix = max_sense ? -std::numeric_limits<double>::infinity()
                                  : std::numeric_limits<double>::infinity();
        int behind = 0; // indices strictly below the current component
        for (int t = 0; t < n; ++t) {
            const int j = idx[t];
            while (behind < t && x[idx[behind]] < x[j] - tie_tol) {
                const double v = c(i, idx[behind]);
                prefix = max_sense ? std::max(prefix, v) : std::min(prefix, v);
                ++behind;
            }
            const double v = c(i, j);
            if (max_sense ? (prefix > v) : (prefix < v)) return false;
        }
    }
    return true;
}

} // namespace

bool is_max_optimal(const Matrix& c, std::span<const double> x, double tol) {
    check_eigenpair(c, x, tol);
    return alignment_certificate(c, x, true);
}

bool is_min_optimal(const Matrix& c, std::span<const double> x, double tol) {
    check_eigenpair(c, x, tol);
    return alignment_certificate(c, x, false);
}

namespace {

Permutation initial_order(const Matrix& c0, InitHeuristic init) {
    const int n = c0.dim();
    if (init == InitHeuristic::identity) return Permutation::identity(n);
    std::vector<double> key(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (double v : c0.row(i)) acc += (init == InitHeuristic::row_norms) ? v * v : v;
        key[i] = acc;
    }
    // both loop senses align the eigenvector ascending, so rows start in
    // ascending key order either way
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return key[a] < key[b]; });
    return Permutation(std::move(idx));
}

} // namespace

OptimizeResult optimize_rho(const Matrix& a, OptimizeSense sense, const OptimizeOptions& opts) {
    if (opts.max_loops < 1) throw InvalidArgument("optimize: max_loops must be positive");
    if (!opts.unsafe_accept && !a.all_positive() && !is_fully_indecomposable(a))
        throw PreconditionFailed(
            "optimize: input must be strictly positive or fully indecomposable "
            "(pass unsafe_accept to override)");

    const bool maximize = sense == OptimizeSense::maximize;
    // maximize: rows ascending and eigenvector driven to ascending order.
    // minimize: rows descending; the anti-aligned fixed point again has an
    // ascending eigenvector, so the loop sorts x ascending in both senses.
    const Matrix c0 = sort_rows(a, maximize ? SortDirection::ascending : SortDirection::descending);

    OptimizeTrace trace;
    trace.initial_q = initial_order(c0, opts.init);

    Permutation q = trace.initial_q;
    Matrix c = permute_rows(q, c0);
    const PerronOptions perron_opts{opts.tol, opts.max_iter};

    bool converged = false;
    for (int loop = 0; loop < opts.max_loops; ++loop) {
        PerronPair pr = perron(c, perron_opts);
        Permutation p = align_to_vector(pr.x, SortDirection::ascending);
        // an unsorted eigenvector can still satisfy the alignment
        // certificate (rows constant across the unsorted positions);
        // reordering then cannot move rho, so stop here
        if (!p.is_identity() && alignment_certificate(c, pr.x, maximize))
            p = Permutation::identity(c.dim());
        const bool done = p.is_identity();
        trace.steps.push_back(OptimizeStep{pr.rho, std::move(pr.x), p});
        ++trace.loop_count;
        if (done) {
            converged = true;
            break;
        }
        // on loop-limit exit the final reorder is recorded in the trace but
        // not applied, so q still matches the last solved iterate and the
        // witness carries the reported rho
        if (loop + 1 == opts.max_loops) break;
        c = permute_rows(p, c);
        q = compose(p, q);
    }

    const OptimizeStep& last = trace.steps.back();
    const double rho = last.rho;
    const bool certificate = maximize ? is_max_optimal(c, last.x, opts.tol)
                                      : is_min_optimal(c, last.x, opts.tol);
    Matrix witness = permute_cols(c0, q);
    return OptimizeResult{std::move(witness), rho, std::move(trace), certificate, !converged};
}

OptimizeResult maximize_rho(const Matrix& a, const OptimizeOptions& opts) {
    return optimize_rho(a, OptimizeSense::maximize, opts);
}

OptimizeResult minimize_rho(const Matrix& a, const OptimizeOptions& opts) {
    return optimize_rho(a, OptimizeSense::minimize, opts);
}

std::string trace_to_json(const OptimizeTrace& trace) {
    std::ostringstream out;
    out << "[";
    for (std::size_t s = 0; s < trace.steps.size(); ++s) {
        const auto& step = trace.steps[s];
        if (s) out << ',';
        out << "{\"rho\":" << format_double(step.rho) << ",\"eigenvector\":[";
        for (std::size_t i = 0; i < step.x.size(); ++i) {
            if (i) out << ',';
            out << format_double(step.x[i]);
        }
        out << "],\"applied_permutation\":[";
        const auto one_based = step.applied.one_based();
        for (std::size_t i = 0; i < one_based.size(); ++i) {
            if (i) out << ',';
            out << one_based[i];
        }
        out << "]}";
    }
    out << "]";
    return out.str();
}

} // namespace rhomega
