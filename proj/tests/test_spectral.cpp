#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "rhomega/spectral.hpp"

using namespace rhomega;
using testutil::rho_2x2;

namespace {

double residual(const Matrix& a, const PerronPair& p) {
    const int n = a.dim();
    double r = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a(i, j) * p.x[j];
        r = std::max(r, std::abs(acc - p.rho * p.x[i]));
    }
    return r;
}

} // namespace

TEST_CASE("perron on small fixed matrices") {
    SUBCASE("identity") {
        const PerronPair p = perron(Matrix::from_rows({{1, 0}, {0, 1}}));
        CHECK(p.rho == doctest::Approx(1.0));
        CHECK(p.x == std::vector<double>{0.5, 0.5});
        CHECK(p.reducible); // diagonal pattern has no cross edges
        CHECK_FALSE(p.zero_matrix);
    }
    SUBCASE("periodic two-cycle still converges under the shift") {
        const PerronPair p = perron(Matrix::from_rows({{0, 1}, {1, 0}}));
        CHECK(p.rho == doctest::Approx(1.0));
        CHECK_FALSE(p.reducible);
        CHECK(testutil::linf_diff(p.x, {0.5, 0.5}) < 1e-12);
    }
    SUBCASE("zero matrix is flagged, not an error") {
        const PerronPair p = perron(Matrix::zero(3));
        CHECK(p.zero_matrix);
        CHECK(p.rho == 0.0);
        CHECK(p.x == std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3});
        CHECK(p.residual == 0.0);
    }
    SUBCASE("zero row converges to the degenerate eigenvector") {
        const PerronPair p = perron(Matrix::from_rows({{0, 0}, {1, 1}}));
        CHECK(p.rho == doctest::Approx(1.0));
        CHECK(p.reducible);
        CHECK(p.x[1] == doctest::Approx(1.0));
    }
    SUBCASE("1x1") {
        const PerronPair p = perron(Matrix::from_rows({{7}}));
        CHECK(p.rho == doctest::Approx(7.0));
        CHECK(p.x == std::vector<double>{1.0});
    }
}

TEST_CASE("perron matches the printed eigenvector of the sorted example") {
    const Matrix c0 = sort_rows(testutil::example5(), SortDirection::ascending);
    const PerronPair p = perron(c0);
    // the reference vector is printed with unit Euclidean norm; compare
    // after rescaling both to unit sum
    const auto expected = testutil::l1_normalized(testutil::example5_first_eigenvector());
    CHECK(testutil::linf_diff(p.x, expected) < 1e-3);
    CHECK(residual(c0, p) <= 1e-12 * std::max(p.rho, 1.0));
}

TEST_CASE("perron agrees with the closed form on 1000 random 2x2 matrices") {
    CounterRng rng(31, 0, 0);
    for (int t = 0; t < 1000; ++t) {
        const Matrix a = random_matrix(2, rng, EntryDistribution::uniform_real(0.01, 10.0));
        const PerronPair p = perron(a);
        const double expected = rho_2x2(a(0, 0), a(0, 1), a(1, 0), a(1, 1));
        CHECK(std::abs(p.rho - expected) < 1e-10);
    }
}

TEST_CASE("perron residual contract and Frobenius bound hold on random matrices") {
    CounterRng rng(32, 0, 0);
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng.next_int(0, 10));
        const Matrix a = testutil::random_positive(n, rng);
        const PerronPair p = perron(a);
        CHECK(residual(a, p) <= 1e-12 * std::max(p.rho, 1.0));
        const auto s = row_sums(a);
        const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
        CHECK(p.rho >= *lo - 1e-9);
        CHECK(p.rho <= *hi + 1e-9);
        const double sum = std::accumulate(p.x.begin(), p.x.end(), 0.0);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // positive input is irreducible, so the eigenvector is strictly positive
        CHECK_FALSE(p.reducible);
        for (double v : p.x) CHECK(v > 0.0);
    }
}

namespace {

// Reference solver on an entirely different route: long double power
// iteration, L2 normalization, Rayleigh quotient, no shift and no bracket
// logic.  Valid for positive matrices, where the iteration is contractive.
double reference_rho(const Matrix& a) {
    const int n = a.dim();
    std::vector<long double> x(n, 1.0L), y(n);
    long double rho = 0.0L, prev = -1.0L;
    for (int k = 0; k < 100000 && std::abs(static_cast<double>(rho - prev)) > 1e-16; ++k) {
        prev = rho;
        long double num = 0.0L, den = 0.0L, norm = 0.0L;
        for (int i = 0; i < n; ++i) {
            long double acc = 0.0L;
            for (int j = 0; j < n; ++j) acc += static_cast<long double>(a(i, j)) * x[j];
            y[i] = acc;
            num += x[i] * acc;
            den += x[i] * x[i];
        }
        rho = num / den;
        for (int i = 0; i < n; ++i) norm += y[i] * y[i];
        norm = std::sqrt(norm);
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return static_cast<double>(rho);
}

} // namespace

TEST_CASE("low-level entry points match the validated one") {
    CounterRng rng(38, 0, 0);
    const Matrix a = testutil::random_positive(6, rng);
    PerronScratch scratch;
    const PerronPair full = perron(a);
    const PerronPair raw = perron_raw(a.dim(), a.data(), {}, scratch);
    CHECK(raw.rho == full.rho);
    CHECK(raw.x == full.x);
    CHECK(perron_rho_raw(a.dim(), a.data(), {}, scratch) == full.rho);
}

TEST_CASE("perron agrees with an independent reference solver up to n=20") {
    CounterRng rng(37, 0, 0);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.next_int(0, 18));
        const Matrix a = testutil::random_positive(n, rng);
        const double expected = reference_rho(a);
        CHECK(std::abs(perron(a).rho - expected) <= 1e-9 * std::max(expected, 1.0));
    }
}

TEST_CASE("perron throws NoConvergence when the iteration budget is too small") {
    try {
        perron(Matrix::from_rows({{1, 2}, {3, 4}}), {1e-12, 2});
        FAIL("expected NoConvergence");
    } catch (const NoConvergence& e) {
        CHECK(e.iterations == 2);
        CHECK(e.last_residual > 0.0);
    }
}

TEST_CASE("cw_bounds") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    SUBCASE("flat vector gives the row sums") {
        const CWBounds b = cw_bounds(a, std::vector<double>{0.5, 0.5});
        CHECK(b.lower == doctest::Approx(3.0));
        CHECK(b.upper == doctest::Approx(7.0));
    }
    SUBCASE("true spectral radius lies inside") {
        const double rho = rho_2x2(1, 2, 3, 4);
        CHECK(rho > 3.0);
        CHECK(rho < 7.0);
    }
    SUBCASE("the Perron vector collapses the bracket") {
        const PerronPair p = perron(a);
        const CWBounds b = cw_bounds(a, p.x);
        CHECK(b.upper - b.lower <= 1e-11);
        CHECK(b.lower <= p.rho + 1e-11);
        CHECK(p.rho <= b.upper + 1e-11);
    }
    SUBCASE("rejects nonpositive vectors and bad sizes") {
        CHECK_THROWS_AS(cw_bounds(a, std::vector<double>{1.0, 0.0}), NonPositiveVector);
        CHECK_THROWS_AS(cw_bounds(a, std::vector<double>{1.0, -1.0}), NonPositiveVector);
        CHECK_THROWS_AS(cw_bounds(a, std::vector<double>{1.0}), DimensionMismatch);
    }
}

TEST_CASE("cw sandwich on random positive matrices") {
    CounterRng rng(33, 0, 0);
    for (int t = 0; t < 100; ++t) {
        const int n = 2 + static_cast<int>(rng.next_int(0, 8));
        const Matrix a = testutil::random_positive(n, rng);
        std::vector<double> x(n);
        for (double& v : x) v = rng.next_real(0.1, 2.0);
        const PerronPair p = perron(a);
        const CWBounds b = cw_bounds(a, x);
        CHECK(b.lower <= p.rho + 1e-9);
        CHECK(p.rho <= b.upper + 1e-9);
    }
}

TEST_CASE("strict_improvement_certificate") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const std::vector<double> flat{0.5, 0.5};
    SUBCASE("holds strictly on one row") {
        const auto v = strict_improvement_certificate(a, flat, 3.0, BoundSide::lower);
        CHECK(v.kind == ImprovementVerdict::Kind::holds_strictly);
        CHECK(v.strict_indices == std::vector<int>{1});
    }
    SUBCASE("eigen-equation leaves an empty strict set") {
        const PerronPair p = perron(a);
        const auto v = strict_improvement_certificate(a, p.x, p.rho, BoundSide::lower, 1e-9);
        CHECK(v.kind == ImprovementVerdict::Kind::holds);
        CHECK(v.strict_indices.empty());
        const auto w = strict_improvement_certificate(a, p.x, p.rho, BoundSide::upper, 1e-9);
        CHECK(w.kind == ImprovementVerdict::Kind::holds);
    }
    SUBCASE("fails with the offending row") {
        const auto v = strict_improvement_certificate(a, flat, 8.0, BoundSide::lower);
        CHECK(v.kind == ImprovementVerdict::Kind::fails);
        CHECK(v.fail_index == 0);
        CHECK_FALSE(v.holds());
    }
}

TEST_CASE("rearrangement_extremes") {
    SUBCASE("two elements") {
        const auto [mn, mx] = rearrangement_extremes(std::vector<double>{1, 2},
                                                     std::vector<double>{3, 4});
        CHECK(mn == doctest::Approx(10.0));
        CHECK(mx == doctest::Approx(11.0));
    }
    SUBCASE("constant x collapses the range") {
        const auto [mn, mx] = rearrangement_extremes(std::vector<double>{2, 2, 2},
                                                     std::vector<double>{1, 5, 9});
        CHECK(mn == doctest::Approx(mx));
    }
    SUBCASE("three elements, exhaustive") {
        const auto [mn, mx] = rearrangement_extremes(std::vector<double>{1, 2, 3},
                                                     std::vector<double>{1, 2, 3});
        CHECK(mn == doctest::Approx(10.0));
        CHECK(mx == doctest::Approx(14.0));
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(rearrangement_extremes(std::vector<double>{1},
                                               std::vector<double>{1, 2}),
                        DimensionMismatch);
    }
    SUBCASE("every permutation lies inside the extremes") {
        CounterRng rng(34, 0, 0);
        for (int t = 0; t < 20; ++t) {
            const int n = 2 + static_cast<int>(rng.next_int(0, 4));
            std::vector<double> x(n), y(n);
            for (double& v : x) v = rng.next_real(0.0, 5.0);
            for (double& v : y) v = rng.next_real(0.0, 5.0);
            const auto [mn, mx] = rearrangement_extremes(x, y);
            std::vector<int> idx(n);
            std::iota(idx.begin(), idx.end(), 0);
            std::sort(idx.begin(), idx.end());
            do {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += x[i] * y[idx[i]];
                CHECK(dot >= mn - 1e-12);
                CHECK(dot <= mx + 1e-12);
            } while (std::next_permutation(idx.begin(), idx.end()));
        }
    }
}

TEST_CASE("permutation similarity of row and column reorderings") {
    CounterRng rng(35, 0, 0);
    for (int t = 0; t < 50; ++t) {
        const int n = 2 + static_cast<int>(rng.next_int(0, 6));
        const Matrix a = testutil::random_positive(n, rng);
        const Permutation p = testutil::random_permutation(n, rng);
        const double r1 = perron(permute_rows(p, a)).rho;
        const double r2 = perron(permute_cols(a, p)).rho;
        CHECK(std::abs(r1 - r2) <= 1e-11);
    }
}

TEST_CASE("is_irreducible") {
    CHECK(is_irreducible(Matrix::from_rows({{1, 2}, {3, 4}})));
    CHECK_FALSE(is_irreducible(Matrix::from_rows({{1, 1}, {0, 1}})));
    CHECK(is_irreducible(Matrix::from_rows({{0, 1}, {1, 0}})));
    CHECK(is_irreducible(Matrix::from_rows({{5}})));
    CHECK_FALSE(is_irreducible(Matrix::from_rows({{1, 0}, {0, 1}})));
}

TEST_CASE("is_fully_indecomposable") {
    CHECK(is_fully_indecomposable(Matrix::from_rows({{1, 2}, {3, 4}})));
    CHECK(is_fully_indecomposable(Matrix::from_rows({{1, 1}, {1, 1}})));
    CHECK_FALSE(is_fully_indecomposable(Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})));
    CHECK_FALSE(is_fully_indecomposable(Matrix::from_rows({{0, 1}, {1, 0}})));
    CHECK_FALSE(is_fully_indecomposable(Matrix::from_rows({{1, 1}, {0, 1}})));
    SUBCASE("1x1 convention") {
        CHECK(is_fully_indecomposable(Matrix::from_rows({{2}})));
        CHECK_FALSE(is_fully_indecomposable(Matrix::from_rows({{0}})));
    }
    SUBCASE("agrees with the brute-force definition at n = 3") {
        // direct definition: irreducible under every row and column reorder
        auto brute = [](const Matrix& a) {
            std::vector<int> pm{0, 1, 2};
            do {
                std::vector<int> qm{0, 1, 2};
                do {
                    const Matrix x =
                        permute_cols(permute_rows(Permutation(pm), a), Permutation(qm));
                    if (!is_irreducible(x)) return false;
                } while (std::next_permutation(qm.begin(), qm.end()));
            } while (std::next_permutation(pm.begin(), pm.end()));
            return true;
        };
        CounterRng rng(36, 0, 0);
        for (int t = 0; t < 60; ++t) {
            std::vector<double> e(9);
            for (double& v : e) v = rng.next_int(0, 1) ? 1.0 : 0.0;
            const Matrix a(3, e);
            CHECK(is_fully_indecomposable(a) == brute(a));
        }
    }
}
