#include <doctest.h>

#include <map>

#include "helpers.hpp"
#include "rhomega/oracle.hpp"

using namespace rhomega;
using testutil::rho_2x2;

namespace {

// independent count of distinct row arrangements: multinomial per row
long long multinomial_count(const Matrix& a) {
    const int n = a.dim();
    auto factorial = [](int k) {
        long long f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    long long total = 1;
    for (int i = 0; i < n; ++i) {
        std::map<double, int> mult;
        for (double v : a.row(i)) ++mult[v];
        long long c = factorial(n);
        for (const auto& [_, m] : mult) c /= factorial(m);
        total *= c;
    }
    return total;
}

} // namespace

TEST_CASE("enumeration counts") {
    auto count_members = [](const Matrix& a) {
        OmegaEnumerator e(a);
        long long c = 0;
        do {
            ++c;
        } while (e.advance());
        return c;
    };
    CHECK(count_members(Matrix::from_rows({{1, 2}, {3, 4}})) == 4);
    CHECK(count_members(Matrix::from_rows({{2, 2}, {3, 4}})) == 2);
    const Matrix m3 = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
    CHECK(count_members(m3) == 216);
    CHECK(omega_count(m3) == 216);
    CHECK(omega_count(Matrix::from_rows({{2, 2}, {3, 4}})) == 2);

    SUBCASE("count equals the product of per-row multinomials") {
        CounterRng rng(41, 0, 0);
        for (int t = 0; t < 15; ++t) {
            const int n = 2 + static_cast<int>(rng.next_int(0, 1));
            const Matrix a = testutil::random_positive(n, rng, 1, 3); // ties likely
            CHECK(count_members(a) == multinomial_count(a));
            CHECK(omega_count(a) == multinomial_count(a));
        }
    }
}

TEST_CASE("every enumerated member stays in the set") {
    const Matrix a = Matrix::from_rows({{1, 2, 2}, {0, 3, 5}, {7, 7, 1}});
    OmegaEnumerator e(a);
    do {
        CHECK(in_omega(e.current_matrix(), a));
    } while (e.advance());
}

TEST_CASE("oracle extremes on the 2x2 with closed-form eigenvalues") {
    const Matrix a = Matrix::from_rows({{1, 2}, {3, 4}});
    const OracleReport r = oracle_extremes(a);
    CHECK(r.count == 4);
    CHECK(std::abs(r.min_rho - rho_2x2(2, 1, 4, 3)) < 1e-10); // (5+sqrt(17))/2
    CHECK(std::abs(r.max_rho - rho_2x2(1, 2, 3, 4)) < 1e-10); // (5+sqrt(33))/2
    CHECK(r.argmin == Matrix::from_rows({{2, 1}, {4, 3}}));
    CHECK(r.argmax == Matrix::from_rows({{1, 2}, {3, 4}}));
    CHECK(r.mean_row_sum == doctest::Approx(5.0));
    CHECK(r.min_rho <= r.mean_row_sum);
    CHECK(r.mean_row_sum <= r.max_rho);
}

TEST_CASE("equal row sums collapse the extremes to the mean") {
    const OracleReport r = oracle_extremes(Matrix::from_rows({{1, 2}, {2, 1}}));
    CHECK(r.count == 4);
    CHECK(std::abs(r.min_rho - 3.0) < 1e-10);
    CHECK(std::abs(r.max_rho - 3.0) < 1e-10);
    CHECK(r.mean_row_sum == doctest::Approx(3.0));
}

TEST_CASE("constant rows make the set a singleton") {
    const OracleReport r = oracle_extremes(Matrix::from_rows({{3, 3}, {5, 5}}));
    CHECK(r.count == 1);
    CHECK(std::abs(r.min_rho - 8.0) < 1e-10);
    CHECK(std::abs(r.max_rho - 8.0) < 1e-10);
    CHECK(r.mean_row_sum == doctest::Approx(8.0));
}

TEST_CASE("mean row sum is sandwiched on random nonnegative matrices") {
    CounterRng rng(42, 0, 0);
    const PerronOptions opts{1e-12, 2000000};
    for (int t = 0; t < 200; ++t) {
        const int n = 2 + static_cast<int>(rng.next_int(0, 2));
        const Matrix a = random_matrix(n, rng, EntryDistribution::uniform_int(0, 9));
        const OracleReport r = oracle_extremes(a, opts);
        CHECK(r.min_rho <= r.mean_row_sum + 1e-9);
        CHECK(r.mean_row_sum <= r.max_rho + 1e-9);
    }
}

TEST_CASE("extremes are invariant under row permutation of the input") {
    CounterRng rng(43, 0, 0);
    for (int t = 0; t < 20; ++t) {
        const Matrix a = testutil::random_positive(3, rng);
        const Permutation p = testutil::random_permutation(3, rng);
        const OracleReport ra = oracle_extremes(a);
        const OracleReport rp = oracle_extremes(permute_rows(p, a));
        CHECK(std::abs(ra.min_rho - rp.min_rho) <= 1e-9);
        CHECK(std::abs(ra.max_rho - rp.max_rho) <= 1e-9);
    }
}

TEST_CASE("dimension limit") {
    const Matrix big = Matrix::zero(5);
    CHECK_THROWS_WITH_AS(oracle_extremes(big), doctest::Contains("(n!)^n"), DimensionTooLarge);
    // raising the limit admits the dimension (zero matrix: one member)
    const OracleReport r = oracle_extremes(Matrix::zero(5), {}, 5);
    CHECK(r.count == 1);
    CHECK(r.min_rho == 0.0);
}
