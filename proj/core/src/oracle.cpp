#include "rhomega/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace rhomega {

OmegaEnumerator::OmegaEnumerator(const Matrix& a)
    : n_(a.dim()), buf_(a.entries().begin(), a.entries().end()) {
    // start each row at its lexicographically smallest arrangement so that
    // std::next_permutation cycles through all distinct arrangements
    for (int i = 0; i < n_; ++i) {
        auto first = buf_.begin() + static_cast<std::ptrdiff_t>(i) * n_;
        std::sort(first, first + n_);
    }
}

bool OmegaEnumerator::advance() {
    for (int i = 0; i < n_; ++i) {
        auto first = buf_.begin() + static_cast<std::ptrdiff_t>(i) * n_;
        if (std::next_permutation(first, first + n_)) return true;
        // row i wrapped back to sorted order; carry into row i+1
    }
    return false;
}

long long omega_count(const Matrix& a) {
    const int n = a.dim();
    long long total = 1;
    std::vector<double> row(n);
    for (int i = 0; i < n; ++i) {
        auto r = a.row(i);
        row.assign(r.begin(), r.end());
        std::sort(row.begin(), row.end());
        // multinomial n! / prod(multiplicities!): build incrementally as
        // prod_k (k / run_position) which stays integral
        long long count = 1;
        int run = 0;
        for (int k = 0; k < n; ++k) {
            run = (k > 0 && row[k] == row[k - 1]) ? run + 1 : 1;
            const long long numer = count * (k + 1);
            if (numer / (k + 1) != count) throw DimensionTooLarge("omega_count overflows");
            count = numer / run;
        }
        double guard = static_cast<double>(total) * static_cast<double>(count);
        if (guard > 9.0e18) throw DimensionTooLarge("omega_count overflows");
        total *= count;
    }
    return total;
}

OracleReport oracle_extremes(const Matrix& a, const PerronOptions& opts, int limit_n) {
    const int n = a.dim();
    if (n > limit_n) {
        const double worst = std::exp(n * std::lgamma(n + 1.0));
        throw DimensionTooLarge("oracle_extremes: dimension " + std::to_string(n) +
                                " exceeds limit " + std::to_string(limit_n) +
                                "; worst-case member count (n!)^n ~ " + std::to_string(worst));
    }

    OmegaEnumerator e(a);
    PerronScratch scratch;
    const std::size_t nn = static_cast<std::size_t>(n) * n;

    double min_rho = 0.0, max_rho = 0.0;
    std::vector<double> argmin, argmax;
    long long count = 0;

    auto lex_less = [nn](const double* lhs, const std::vector<double>& rhs) {
        return std::lexicographical_compare(lhs, lhs + nn, rhs.data(), rhs.data() + nn);
    };

    do {
        const double* m = e.current();
        const double rho = perron_rho_raw(n, m, opts, scratch);
        if (count == 0) {
            min_rho = max_rho = rho;
            argmin.assign(m, m + nn);
            argmax.assign(m, m + nn);
        } else {
            if (rho < min_rho || (rho == min_rho && lex_less(m, argmin))) {
                min_rho = rho;
                argmin.assign(m, m + nn);
            }
            if (rho > max_rho || (rho == max_rho && lex_less(m, argmax))) {
                max_rho = rho;
                argmax.assign(m, m + nn);
            }
        }
        ++count;
    } while (e.advance());

    return OracleReport{min_rho, Matrix(n, std::move(argmin)), max_rho,
                        Matrix(n, std::move(argmax)), count, mean_row_sum(a)};
}

} // namespace rhomega
