#pragma once

#include <string>

#include "rhomega/matrix.hpp"
#include "rhomega/optimize.hpp"
#include "rhomega/oracle.hpp"

namespace rhomega {

/// Structural situations under which the mean row sum coincides with both
/// extreme spectral radii of the row-rearrangement set (for positive
/// input):
///   flat_eigenvector: all row sums equal, so the flat vector is a Perron
///                     eigenvector of every member;
///   constant_rows:    every row is constant, so the set is a singleton.
/// When both hold, constant_rows is reported.
enum class EqualityCase { flat_eigenvector, constant_rows, none };

enum class BoundMethod { oracle, algorithm };

/// Sandwich of the mean row sum between the extreme spectral radii, with
/// the nonnegative gaps to either side.
struct BoundReport {
    double mean_row_sum;
    double max_rho;
    double min_rho;
    double gap_upper; // max_rho - mean_row_sum
    double gap_lower; // mean_row_sum - min_rho
    BoundMethod method;
    EqualityCase equality_case;
};

struct AnalysisOptions {
    PerronOptions perron;
    OptimizeOptions optimize;
    int limit_n = kDefaultOracleLimit;
    double equality_tol = 1e-10; // relative spread treated as equal
    /// When positive, the report is computed for the matrix with every
    /// entry increased by epsilon.  This is the route for inputs the
    /// alignment algorithms reject: the perturbed matrix is strictly
    /// positive and its bounds converge to the original's as epsilon
    /// shrinks.
    double epsilon = 0.0;
};

/// Spread-based detection with relative tolerance `tol`
/// (max - min <= tol * mean, per row for constant_rows, across row sums
/// for flat_eigenvector).
EqualityCase detect_equality_case(const Matrix& a, double tol = 1e-10);

/// Computes the sandwich by exhaustive enumeration (method == oracle,
/// requires dim <= limit_n) or by the alignment algorithms.  Throws
/// InvariantViolation if either gap is below -1e-9, which would indicate
/// an implementation bug.
BoundReport bound_report(const Matrix& a, BoundMethod method, const AnalysisOptions& opts = {});

/// The three equality conditions, oracle-checked on one instance.  For
/// positive input they are pairwise equivalent: either all hold or none
/// does.
struct EqualityEquivalence {
    bool mean_equals_max;
    bool case_detected;
    bool mean_equals_min;

    bool all() const { return mean_equals_max && case_detected && mean_equals_min; }
    bool consistent() const {
        return mean_equals_max == case_detected && case_detected == mean_equals_min;
    }
};

EqualityEquivalence verify_equality_equivalence(const Matrix& a, const AnalysisOptions& opts = {});

std::string bound_report_summary(const BoundReport& r);
std::string bound_report_to_json(const BoundReport& r);
std::string equality_case_name(EqualityCase c);

} // namespace rhomega
