#include "rhomega/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace rhomega {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EngineResult {
    double rho;
    double residual;
    long iterations;
    bool zero_matrix;
};

// Shifted power iteration.  Each pass computes y = A x, the L1 estimate
// rho = sum(y), the componentwise ratios y_i / x_i and the residual
// ||y - rho x||_inf, then replaces x by (y + x) normalized.
//
// Acceptance needs the residual contract resid <= tol * max(rho, 1) and,
// opportunistically, a ratio bracket of width <= 5 * tol.  The bracket can
// sit on a rounding floor (large n * rho) or fail to close at all (x with
// zero components on reducible input), so a stall detector and a hard
// patience cap end the tightening phase without giving up the contract.
EngineResult run_engine(int n, const double* a, const PerronOptions& opts, PerronScratch& s) {
    if (opts.tol <= 0.0) throw InvalidArgument("perron: tol must be positive");
    if (opts.max_iter < 1) throw InvalidArgument("perron: max_iter must be positive");

    s.x.assign(n, 1.0 / n);
    s.y.assign(n, 0.0);

    bool all_zero = true;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    for (std::size_t k = 0; k < nn; ++k) {
        if (a[k] != 0.0) {
            all_zero = false;
            break;
        }
    }
    if (all_zero) return {0.0, 0.0, 0, true};

    const double tol = opts.tol;
    double best_width = kInf;
    long best_width_iter = 0;
    long contract_met_at = -1;
    double last_residual = kInf;

    for (long iter = 1; iter <= opts.max_iter; ++iter) {
        double rho = 0.0;
        for (int i = 0; i < n; ++i) {
            const double* row = a + static_cast<std::size_t>(i) * n;
            double acc = 0.0;
            for (int j = 0; j < n; ++j) acc += row[j] * s.x[j];
            s.y[i] = acc;
            rho += acc;
        }

        double rmin = kInf, rmax = -kInf;
        bool degenerate = false;
        double resid = 0.0;
        for (int i = 0; i < n; ++i) {
            if (s.x[i] > 0.0) {
                const double r = s.y[i] / s.x[i];
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
            } else {
                degenerate = true;
            }
            resid = std::max(resid, std::abs(s.y[i] - rho * s.x[i]));
        }
        const double width = degenerate ? kInf : rmax - rmin;
        last_residual = resid;

        const bool contract_ok = resid <= tol * std::max(rho, 1.0);
        if (contract_ok && contract_met_at < 0) contract_met_at = iter;
        if (width < best_width * 0.99) {
            best_width = width;
            best_width_iter = iter;
        }
        const bool width_ok = width <= 5.0 * tol;
        const bool stalled = iter - best_width_iter >= 60;
        const bool patience_up = contract_met_at >= 0 && iter - contract_met_at >= 600;

        if (contract_ok && (width_ok || stalled || patience_up || iter == opts.max_iter))
            return {rho, resid, iter, false};

        if (iter == opts.max_iter) break;

        // x <- (A + I) x, L1-normalized; stays strictly positive
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            s.y[i] += s.x[i];
            total += s.y[i];
        }
        for (int i = 0; i < n; ++i) s.x[i] = s.y[i] / total;
    }

    char resid_text[32];
    std::snprintf(resid_text, sizeof(resid_text), "%.3g", last_residual);
    throw NoConvergence("perron: no convergence after " + std::to_string(opts.max_iter) +
                            " iterations (last residual " + resid_text + ")",
                        last_residual, opts.max_iter);
}

PerronPair assemble(int n, const EngineResult& r, PerronScratch& s) {
    PerronPair p;
    p.rho = r.rho;
    p.residual = r.residual;
    p.iterations = r.iterations;
    p.zero_matrix = r.zero_matrix;
    p.x.assign(s.x.begin(), s.x.begin() + n);
    return p;
}

} // namespace

PerronPair perron_raw(int n, const double* a, const PerronOptions& opts, PerronScratch& scratch) {
    return assemble(n, run_engine(n, a, opts, scratch), scratch);
}

namespace {

// Strongly connected components of the nonzero pattern, Kosaraju order.
std::vector<std::vector<int>> scc_components(int n, const double* a) {
    std::vector<char> seen(n, 0);
    std::vector<int> order;
    order.reserve(n);
    std::vector<std::pair<int, int>> stack; // (vertex, next edge to try)
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        stack.push_back({s, 0});
        seen[s] = 1;
        while (!stack.empty()) {
            auto& [u, j] = stack.back();
            if (j == n) {
                order.push_back(u);
                stack.pop_back();
                continue;
            }
            const int v = j++;
            if (!seen[v] && a[static_cast<std::size_t>(u) * n + v] > 0.0) {
                seen[v] = 1;
                stack.push_back({v, 0});
            }
        }
    }
    std::vector<std::vector<int>> comps;
    std::fill(seen.begin(), seen.end(), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (seen[*it]) continue;
        comps.emplace_back();
        std::vector<int> dfs{*it};
        seen[*it] = 1;
        while (!dfs.empty()) {
            const int u = dfs.back();
            dfs.pop_back();
            comps.back().push_back(u);
            for (int v = 0; v < n; ++v) {
                // reversed edge v -> u
                if (!seen[v] && a[static_cast<std::size_t>(v) * n + u] > 0.0) {
                    seen[v] = 1;
                    dfs.push_back(v);
                }
            }
        }
    }
    return comps;
}

} // namespace

double perron_rho_raw(int n, const double* a, const PerronOptions& opts, PerronScratch& scratch) {
    bool positive = true;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    for (std::size_t k = 0; k < nn && positive; ++k) positive = a[k] > 0.0;
    if (positive || n == 1) return run_engine(n, a, opts, scratch).rho;

    // A reducible matrix can carry its spectral radius on a defective
    // eigenvalue, where the plain iteration crawls.  The radius equals the
    // max over the strongly connected blocks of the pattern, and each
    // block is irreducible, so the iteration converges geometrically.
    const auto comps = scc_components(n, a);
    if (comps.size() == 1) return run_engine(n, a, opts, scratch).rho;
    double rho = 0.0;
    std::vector<double> block;
    for (const auto& comp : comps) {
        const int m = static_cast<int>(comp.size());
        if (m == 1) {
            rho = std::max(rho, a[static_cast<std::size_t>(comp[0]) * n + comp[0]]);
            continue;
        }
        block.resize(static_cast<std::size_t>(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                block[static_cast<std::size_t>(i) * m + j] =
                    a[static_cast<std::size_t>(comp[i]) * n + comp[j]];
        rho = std::max(rho, run_engine(m, block.data(), opts, scratch).rho);
    }
    return rho;
}

PerronPair perron(const Matrix& a, const PerronOptions& opts) {
    PerronScratch scratch;
    PerronPair p = perron_raw(a.dim(), a.data(), opts, scratch);
    if (!a.all_positive()) p.reducible = !is_irreducible(a);
    return p;
}

CWBounds cw_bounds(const Matrix& a, std::span<const double> x) {
    const int n = a.dim();
    if (static_cast<int>(x.size()) != n) throw DimensionMismatch("cw_bounds: vector length does not match matrix");
    for (double v : x)
        if (!(v > 0.0)) throw NonPositiveVector("cw_bounds: vector must be strictly positive");
    double lower = kInf, upper = -kInf;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a(i, j) * x[j];
        const double r = acc / x[i];
        lower = std::min(lower, r);
        upper = std::max(upper, r);
    }
    return {lower, upper};
}

ImprovementVerdict strict_improvement_certificate(const Matrix& a, std::span<const double> x,
                                                  double alpha, BoundSide side, double tol) {
    const int n = a.dim();
    if (static_cast<int>(x.size()) != n)
        throw DimensionMismatch("strict_improvement_certificate: vector length does not match matrix");
    const double slack = tol * std::max(std::abs(alpha), 1.0);
    ImprovementVerdict v{ImprovementVerdict::Kind::holds, {}, -1};
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a(i, j) * x[j];
        // lower side checks alpha x <= A x; upper side checks A x <= alpha x
        const double diff = (side == BoundSide::lower) ? acc - alpha * x[i] : alpha * x[i] - acc;
        if (diff < -slack) {
            v.kind = ImprovementVerdict::Kind::fails;
            v.fail_index = i;
            v.strict_indices.clear();
            return v;
        }
        if (diff > slack) v.strict_indices.push_back(i);
    }
    if (!v.strict_indices.empty()) v.kind = ImprovementVerdict::Kind::holds_strictly;
    return v;
}

std::pair<double, double> rearrangement_extremes(std::span<const double> x,
                                                 std::span<const double> y) {
    if (x.size() != y.size()) throw DimensionMismatch("rearrangement_extremes: lengths differ");
    std::vector<double> xs(x.begin(), x.end());
    std::vector<double> ys(y.begin(), y.end());
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());
    double max_dot = 0.0, min_dot = 0.0;
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i) {
        max_dot += xs[i] * ys[i];
        min_dot += xs[i] * ys[n - 1 - i];
    }
    return {min_dot, max_dot};
}

namespace {

// One-directional reachability from vertex 0 over the nonzero pattern.
bool all_reachable(const Matrix& a, bool transpose) {
    const int n = a.dim();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v = 0; v < n; ++v) {
            const double w = transpose ? a(v, u) : a(u, v);
            if (w > 0.0 && !seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count == n;
}

} // namespace

bool is_irreducible(const Matrix& a) {
    if (a.dim() == 1) return true;
    return all_reachable(a, false) && all_reachable(a, true);
}

namespace {

// Kuhn augmenting-path step: re-route matched rows until `row` finds a
// free column.  Columns marked visited beforehand are off limits.
bool try_augment(const Matrix& a, int row, std::vector<int>& match_col,
                 std::vector<char>& visited) {
    const int n = a.dim();
    for (int j = 0; j < n; ++j) {
        if (visited[j] || a(row, j) <= 0.0) continue;
        visited[j] = 1;
        if (match_col[j] < 0 || try_augment(a, match_col[j], match_col, visited)) {
            match_col[j] = row;
            return true;
        }
    }
    return false;
}

} // namespace

bool is_fully_indecomposable(const Matrix& a) {
    const int n = a.dim();
    if (n == 1) return a(0, 0) > 0.0;

    // full matching on the pattern; its absence already implies an all-zero
    // p x q submatrix with p + q > n
    std::vector<int> match_col(n, -1);
    std::vector<char> visited(n);
    for (int i = 0; i < n; ++i) {
        std::fill(visited.begin(), visited.end(), 0);
        if (!try_augment(a, i, match_col, visited)) return false;
    }
    std::vector<int> match_row(n);
    for (int j = 0; j < n; ++j) match_row[match_col[j]] = j;

    // For each (i, j): the pattern minus row i and column j must still have
    // a perfect matching.  When the matching pairs i with j, deleting both
    // keeps the other n-1 edges.  Otherwise dropping row i's edge and the
    // edge through column j leaves exactly one row to re-match, so a single
    // augmenting path (never touching row i, since it is unmatched, nor
    // column j, pre-marked visited) decides the pair.
    std::vector<int> sub_match(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (match_row[i] == j) continue;
            sub_match = match_col;
            sub_match[match_row[i]] = -1;
            const int displaced = sub_match[j];
            sub_match[j] = -1;
            std::fill(visited.begin(), visited.end(), 0);
            visited[j] = 1;
            if (!try_augment(a, displaced, sub_match, visited)) return false;
        }
    }
    return true;
}

} // namespace rhomega
