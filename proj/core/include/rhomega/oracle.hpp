#pragma once

#include "rhomega/matrix.hpp"
#include "rhomega/spectral.hpp"

namespace rhomega {

/// Exhaustive enumeration above this dimension is refused by default:
/// the worst case is (n!)^n distinct members.
inline constexpr int kDefaultOracleLimit = 4;

/// Ground-truth extremes of the spectral radius over the full
/// row-rearrangement set, with witnesses.
struct OracleReport {
    double min_rho;
    Matrix argmin;
    double max_rho;
    Matrix argmax;
    long long count;     // distinct members enumerated
    double mean_row_sum;
};

/// Streams every distinct member of the row-rearrangement set exactly once
/// (distinct multiset permutations per row, odometer across rows).  Memory
/// stays O(n^2); visiting order is deterministic.
class OmegaEnumerator {
public:
    explicit OmegaEnumerator(const Matrix& a);

    /// Row-major view of the current member; valid until advance().
    const double* current() const { return buf_.data(); }
    Matrix current_matrix() const { return Matrix(n_, buf_); }

    /// Steps to the next member; false once all members have been visited.
    bool advance();

private:
    int n_;
    std::vector<double> buf_;
};

/// Number of distinct members: product over rows of the multinomial count
/// of each row's multiset.  Throws DimensionTooLarge if the count would
/// overflow the return type.
long long omega_count(const Matrix& a);

/// Brute-force min/max of the spectral radius over the whole set.  Ties on
/// rho resolve to the lexicographically smallest witness, so the report is
/// reproducible no matter how the enumeration is scheduled.
/// Throws DimensionTooLarge when a.dim() > limit_n.
OracleReport oracle_extremes(const Matrix& a, const PerronOptions& opts = {},
                             int limit_n = kDefaultOracleLimit);

} // namespace rhomega
