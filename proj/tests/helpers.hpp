#pragma once

#include <cmath>
#include <vector>

#include "rhomega/experiments.hpp"
#include "rhomega/matrix.hpp"

namespace testutil {

// 5x5 working example used across the suites
inline rhomega::Matrix example5() {
    return rhomega::Matrix::from_rows({{2, 5, 2, 2, 5},
                                       {6, 6, 2, 3, 1},
                                       {7, 3, 5, 5, 3},
                                       {3, 3, 4, 6, 8},
                                       {2, 4, 2, 5, 5}});
}

// optimal rearrangement of example5 under the maximize sense
inline rhomega::Matrix example5_max_witness() {
    return rhomega::Matrix::from_rows({{2, 2, 5, 5, 2},
                                       {1, 3, 6, 6, 2},
                                       {3, 5, 5, 7, 3},
                                       {3, 4, 6, 8, 3},
                                       {2, 4, 5, 5, 2}});
}

// Perron vector of the row-sorted example5 (unit Euclidean norm)
inline std::vector<double> example5_first_eigenvector() {
    return {0.3561, 0.4098, 0.5091, 0.5301, 0.4063};
}

// spectral radius of [[a,b],[c,d]]: largest root of the characteristic
// polynomial; the independent check for everything 2x2
inline double rho_2x2(double a, double b, double c, double d) {
    const double tr = a + d;
    const double det = a * d - b * c;
    const double disc = std::sqrt(tr * tr - 4.0 * det);
    return (tr + disc) / 2.0;
}

inline rhomega::Matrix random_positive(int n, rhomega::CounterRng& rng, long lo = 1, long hi = 9) {
    return rhomega::random_matrix(n, rng, rhomega::EntryDistribution::uniform_int(lo, hi));
}

inline rhomega::Permutation random_permutation(int n, rhomega::CounterRng& rng) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) m[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(rng.next_int(0, i));
        std::swap(m[i], m[j]);
    }
    return rhomega::Permutation(std::move(m));
}

// random member of the row-rearrangement set: independent shuffle per row
inline rhomega::Matrix random_member(const rhomega::Matrix& a, rhomega::CounterRng& rng) {
    const int n = a.dim();
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (int i = 0; i < n; ++i) {
        double* row = out.data() + static_cast<std::size_t>(i) * n;
        for (int k = n - 1; k > 0; --k) {
            const int j = static_cast<int>(rng.next_int(0, k));
            std::swap(row[k], row[j]);
        }
    }
    return rhomega::Matrix(n, std::move(out));
}

inline double linf_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

inline std::vector<double> l1_normalized(std::vector<double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    for (double& x : v) x /= s;
    return v;
}

} // namespace testutil
