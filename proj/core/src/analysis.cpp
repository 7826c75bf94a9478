#include "rhomega/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <sstream>

#include "rhomega/io.hpp"
#include "rhomega/spectral.hpp"

namespace rhomega {

namespace {

// spread-over-mean test; exact zeros compare equal even when the mean is 0
bool equal_within(std::span<const double> v, double tol) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    return *hi - *lo <= tol * mean;
}

} // namespace

EqualityCase detect_equality_case(const Matrix& a, double tol) {
    const int n = a.dim();

    bool constant_rows = true;
    for (int i = 0; i < n && constant_rows; ++i) constant_rows = equal_within(a.row(i), tol);
    if (constant_rows) return EqualityCase::constant_rows;

    const auto s = row_sums(a);
    if (equal_within(s, tol)) return EqualityCase::flat_eigenvector;

    return EqualityCase::none;
}

BoundReport bound_report(const Matrix& a, BoundMethod method, const AnalysisOptions& opts) {
    const Matrix subject = opts.epsilon > 0.0 ? epsilon_perturb(a, opts.epsilon) : a;

    // inputs the alignment algorithms reject fall back to enumeration when
    // it is feasible; otherwise the caller must pick an epsilon
    if (method == BoundMethod::algorithm && !opts.optimize.unsafe_accept &&
        !subject.all_positive() && !is_fully_indecomposable(subject)) {
        if (subject.dim() <= opts.limit_n) {
            method = BoundMethod::oracle;
        } else {
            throw PreconditionFailed(
                "bound_report: input is neither strictly positive nor fully indecomposable; "
                "enumeration is infeasible at this size, use the epsilon perturbation route");
        }
    }

    double min_rho = 0.0, max_rho = 0.0;
    if (method == BoundMethod::oracle) {
        const OracleReport rep = oracle_extremes(subject, opts.perron, opts.limit_n);
        min_rho = rep.min_rho;
        max_rho = rep.max_rho;
    } else {
        max_rho = maximize_rho(subject, opts.optimize).rho;
        min_rho = minimize_rho(subject, opts.optimize).rho;
    }

    BoundReport r;
    r.mean_row_sum = mean_row_sum(subject);
    r.max_rho = max_rho;
    r.min_rho = min_rho;
    r.gap_upper = max_rho - r.mean_row_sum;
    r.gap_lower = r.mean_row_sum - min_rho;
    r.method = method;
    r.equality_case = detect_equality_case(subject, opts.equality_tol);
    if (r.gap_upper < -1e-9 || r.gap_lower < -1e-9)
        throw InvariantViolation("bound_report: sandwich violated (gap_upper " +
                                 format_double(r.gap_upper) + ", gap_lower " +
                                 format_double(r.gap_lower) + "); this is a solver bug");
    return r;
}

EqualityEquivalence verify_equality_equivalence(const Matrix& a, const AnalysisOptions& opts) {
    const OracleReport rep = oracle_extremes(a, opts.perron, opts.limit_n);
    const double mean = mean_row_sum(a);
    EqualityEquivalence v;
    v.mean_equals_max = std::abs(rep.max_rho - mean) <= 1e-9;
    v.case_detected = detect_equality_case(a, opts.equality_tol) != EqualityCase::none;
    v.mean_equals_min = std::abs(mean - rep.min_rho) <= 1e-9;
    return v;
}

std::string equality_case_name(EqualityCase c) {
    switch (c) {
        case EqualityCase::flat_eigenvector: return "flat_eigenvector";
        case EqualityCase::constant_rows: return "constant_rows";
        default: return "none";
    }
}

std::string bound_report_summary(const BoundReport& r) {
    std::ostringstream out;
    out << "min_rho " << format_double(r.min_rho) << " <= mean " << format_double(r.mean_row_sum)
        << " <= max_rho " << format_double(r.max_rho) << " (gaps " << format_double(r.gap_lower)
        << ", " << format_double(r.gap_upper) << "; method "
        << (r.method == BoundMethod::oracle ? "oracle" : "algorithm") << "; equality "
        << equality_case_name(r.equality_case) << ")";
    return out.str();
}

std::string bound_report_to_json(const BoundReport& r) {
    std::ostringstream out;
    out << "{\"mean_row_sum\":" << format_double(r.mean_row_sum)
        << ",\"max_rho\":" << format_double(r.max_rho)
        << ",\"min_rho\":" << format_double(r.min_rho)
        << ",\"gap_upper\":" << format_double(r.gap_upper)
        << ",\"gap_lower\":" << format_double(r.gap_lower) << ",\"method\":\""
        << (r.method == BoundMethod::oracle ? "oracle" : "algorithm") << "\",\"equality_case\":\""
        << equality_case_name(r.equality_case) << "\"}";
    return out.str();
}

} // namespace rhomega
