#pragma once

#include <span>
#include <vector>

#include "rhomega/errors.hpp"

namespace rhomega {

enum class SortDirection { ascending, descending };

/// Dense nonnegative square matrix with row-major storage.
///
/// Entries are validated once at construction (finite, >= 0, exactly n*n);
/// instances are immutable values afterwards and safe to share across
/// threads.  Indices are 0-based in code; user-facing output converts to
/// 1-based.
class Matrix {
public:
    Matrix(int n, std::vector<double> entries);

    static Matrix zero(int n);
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    std::span<const double> row(int i) const {
        return {a_.data() + static_cast<std::size_t>(i) * n_, static_cast<std::size_t>(n_)};
    }
    std::span<const double> entries() const { return a_; }
    const double* data() const { return a_.data(); }

    bool all_positive() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    int n_;
    std::vector<double> a_;
};

/// Bijection on {0..n-1}.  map()[i] == j encodes the permutation matrix P
/// with P(i,j) = 1, so (P x)_i = x_j and row i of P*A is row j of A.
class Permutation {
public:
    Permutation() = default; // empty; placeholder until assigned
    explicit Permutation(std::vector<int> map);

    static Permutation identity(int n);

    int size() const { return static_cast<int>(map_.size()); }
    int operator[](int i) const { return map_[i]; }
    const std::vector<int>& map() const { return map_; }

    bool is_identity() const;
    Permutation inverse() const;

    /// 1-based copy of the index map, the convention used in all output.
    std::vector<int> one_based() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<int> map_;
};

/// Matrix product P*Q: compose(p, q)[i] == q[p[i]].
Permutation compose(const Permutation& p, const Permutation& q);

/// (P x)_i = x_{p[i]}.
std::vector<double> apply_permutation(const Permutation& p, std::span<const double> x);

/// Canonical form for membership in a row-rearrangement set: each row
/// replaced by its ascending sort.  Two matrices have equal signatures
/// exactly when each can be produced from the other by permuting entries
/// within rows.
class RowSignature {
public:
    explicit RowSignature(const Matrix& a);

    friend bool operator==(const RowSignature&, const RowSignature&) = default;

private:
    int n_;
    std::vector<double> sorted_;
};

/// Vector of per-row entry sums; invariant under within-row permutation.
std::vector<double> row_sums(const Matrix& a);

/// Arithmetic mean of the row sums: (1/n) * sum of all entries.
double mean_row_sum(const Matrix& a);

/// Each row independently sorted in the given direction (stable).
Matrix sort_rows(const Matrix& a, SortDirection direction);

Matrix permute_rows(const Permutation& p, const Matrix& a);
Matrix permute_cols(const Matrix& a, const Permutation& p);

/// True iff b can be obtained from a by permuting entries within each row.
bool in_omega(const Matrix& b, const Matrix& a);

/// Every entry increased by epsilon (> 0); the result is strictly positive.
Matrix epsilon_perturb(const Matrix& a, double epsilon);

} // namespace rhomega
