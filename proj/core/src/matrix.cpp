#include "rhomega/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rhomega {

Matrix::Matrix(int n, std::vector<double> entries) : n_(n), a_(std::move(entries)) {
    if (n < 1) throw InvalidArgument("matrix dimension must be at least 1");
    if (a_.size() != static_cast<std::size_t>(n) * n)
        throw InvalidArgument("matrix entry count does not match dimension");
    for (double v : a_) {
        if (!std::isfinite(v)) throw InvalidArgument("matrix entries must be finite");
        if (v < 0.0) throw InvalidArgument("matrix entries must be nonnegative");
    }
}

Matrix Matrix::zero(int n) {
    if (n < 1) throw InvalidArgument("matrix dimension must be at least 1");
    return Matrix(n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<double> a;
    a.reserve(static_cast<std::size_t>(n) * n);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != n)
            throw InvalidArgument("matrix rows must all have length n");
        a.insert(a.end(), r.begin(), r.end());
    }
    return Matrix(n, std::move(a));
}

bool Matrix::all_positive() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return v > 0.0; });
}

Permutation::Permutation(std::vector<int> map) : map_(std::move(map)) {
    const int n = static_cast<int>(map_.size());
    std::vector<char> seen(n, 0);
    for (int v : map_) {
        if (v < 0 || v >= n || seen[v]) throw InvalidArgument("permutation map is not a bijection");
        seen[v] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> m(n);
    std::iota(m.begin(), m.end(), 0);
    return Permutation(std::move(m));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (map_[i] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(map_.size());
    for (int i = 0; i < size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

std::vector<int> Permutation::one_based() const {
    std::vector<int> out(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) out[i] = map_[i] + 1;
    return out;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw DimensionMismatch("compose: permutation sizes differ");
    std::vector<int> m(p.size());
    for (int i = 0; i < p.size(); ++i) m[i] = q[p[i]];
    return Permutation(std::move(m));
}

std::vector<double> apply_permutation(const Permutation& p, std::span<const double> x) {
    if (static_cast<std::size_t>(p.size()) != x.size())
        throw DimensionMismatch("apply_permutation: permutation and vector sizes differ");
    std::vector<double> out(x.size());
    for (int i = 0; i < p.size(); ++i) out[i] = x[p[i]];
    return out;
}

RowSignature::RowSignature(const Matrix& a) : n_(a.dim()), sorted_(a.entries().begin(), a.entries().end()) {
    for (int i = 0; i < n_; ++i) {
        auto first = sorted_.begin() + static_cast<std::ptrdiff_t>(i) * n_;
        std::sort(first, first + n_);
    }
}

std::vector<double> row_sums(const Matrix& a) {
    const int n = a.dim();
    std::vector<double> s(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (double v : a.row(i)) acc += v;
        s[i] = acc;
    }
    return s;
}

double mean_row_sum(const Matrix& a) {
    const auto s = row_sums(a);
    return std::accumulate(s.begin(), s.end(), 0.0) / a.dim();
}

Matrix sort_rows(const Matrix& a, SortDirection direction) {
    const int n = a.dim();
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (int i = 0; i < n; ++i) {
        auto first = out.begin() + static_cast<std::ptrdiff_t>(i) * n;
        if (direction == SortDirection::ascending)
            std::stable_sort(first, first + n);
        else
            std::stable_sort(first, first + n, std::greater<double>());
    }
    return Matrix(n, std::move(out));
}

Matrix permute_rows(const Permutation& p, const Matrix& a) {
    const int n = a.dim();
    if (p.size() != n) throw DimensionMismatch("permute_rows: permutation size does not match matrix");
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        auto src = a.row(p[i]);
        std::copy(src.begin(), src.end(), out.begin() + static_cast<std::ptrdiff_t>(i) * n);
    }
    return Matrix(n, std::move(out));
}

Matrix permute_cols(const Matrix& a, const Permutation& p) {
    const int n = a.dim();
    if (p.size() != n) throw DimensionMismatch("permute_cols: permutation size does not match matrix");
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    // column k of a lands in column p[k], matching the product A*P
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) out[static_cast<std::size_t>(i) * n + p[k]] = a(i, k);
    return Matrix(n, std::move(out));
}

bool in_omega(const Matrix& b, const Matrix& a) {
    if (b.dim() != a.dim()) return false;
    return RowSignature(b) == RowSignature(a);
}

Matrix epsilon_perturb(const Matrix& a, double epsilon) {
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon_perturb: epsilon must be positive");
    std::vector<double> out(a.entries().begin(), a.entries().end());
    for (double& v : out) v += epsilon;
    return Matrix(a.dim(), std::move(out));
}

} // namespace rhomega
