#include <doctest.h>

#include <cmath>

#include "eet/entangled.hpp"
#include "eet/random.hpp"

using namespace eet;

namespace {

// Literal evaluation of the entangled mean from the dense matrix of U, with
// no power caching and no shared code path with average_time_domain.
Mat naive_average(const EntangledInstance& inst, std::int64_t n) {
    const std::size_t d = inst.u.dim();
    const Mat um = inst.u.to_matrix();
    const int k = inst.partition.k();
    if (k == 0) return Mat::identity(d);

    Mat sum = Mat::zero(d, d);
    std::vector<std::int64_t> idx(std::size_t(k), 0);
    while (true) {
        Mat prod = Mat::identity(d);
        for (std::size_t pos = 1; pos <= std::size_t(2 * k); ++pos) {
            const std::int64_t e = idx[std::size_t(inst.partition.cls(pos)) - 1];
            for (std::int64_t i = 0; i < e; ++i) prod = prod * um;
            if (pos <= inst.ops.size()) prod = prod * inst.ops[pos - 1];
        }
        sum += prod;
        int c = k - 1;
        while (c >= 0 && ++idx[std::size_t(c)] == n) {
            idx[std::size_t(c)] = 0;
            --c;
        }
        if (c < 0) break;
    }
    sum *= cplx(1.0 / std::pow(double(n), k));
    return sum;
}

SpectralUnitary diag_unitary(std::vector<Phase> phases) {
    const std::size_t d = phases.size();
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    for (std::size_t i = 0; i < d; ++i) {
        Vec v(d);
        v[i] = 1.0;
        pairs.emplace_back(phases[i], std::vector<Vec>{v});
    }
    return SpectralUnitary::from_eigensystem(std::move(pairs));
}

} // namespace

TEST_CASE("k = 0 collapses to the identity") {
    Rng rng(1);
    const auto u = random_rational_unitary(rng, 3, 2);
    EntangledInstance inst(u, PairPartition::from_word({}), {});
    for (std::int64_t n : {1, 5, 12}) {
        CHECK((average_time_domain(inst, n) - Mat::identity(3)).frobenius_norm() <= 1e-12);
        CHECK((average_spectral(inst, n) - Mat::identity(3)).frobenius_norm() <= 1e-12);
    }
    CHECK((entangled_limit(inst) - Mat::identity(3)).frobenius_norm() <= 1e-12);
}

TEST_CASE("k = 1 hand case: (U^0 + U^2)/2 = I at u = diag(1,-1)") {
    const auto u = diag_unitary({Phase::rational(0, 1), Phase::rational(1, 2)});
    EntangledInstance inst(u, PairPartition::from_word({1, 1}), {Mat::identity(2)});
    CHECK((average_time_domain(inst, 2) - Mat::identity(2)).frobenius_norm() <= 1e-14);
    CHECK((average_spectral(inst, 2) - Mat::identity(2)).frobenius_norm() <= 1e-14);
}

TEST_CASE("time-domain average matches the naive oracle") {
    Rng rng(2);
    for (int t = 0; t < 6; ++t) {
        const auto u = random_rational_unitary(rng, 4, 3);
        const int k = 1 + t % 2;
        const auto part = random_pair_partition(rng, k);
        std::vector<Mat> ops;
        for (int i = 0; i < 2 * k - 1; ++i) ops.push_back(random_matrix(rng, 4, 4));
        EntangledInstance inst(u, part, ops);
        CHECK((average_time_domain(inst, 3) - naive_average(inst, 3)).frobenius_norm() <=
              1e-10);
    }
}

TEST_CASE("spectral and time-domain routes agree") {
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
        const std::size_t dim = 2 + std::size_t(uniform(rng, 0, 6));
        const std::size_t ne = 1 + std::size_t(uniform(rng, 0, double(std::min<std::size_t>(dim, 5)) - 0.01));
        const auto u = random_rational_unitary(rng, dim, ne);
        const int k = 1 + t % 2;
        const auto part = random_pair_partition(rng, k);
        std::vector<Mat> ops;
        for (int i = 0; i < 2 * k - 1; ++i) ops.push_back(random_matrix(rng, dim, dim));
        EntangledInstance inst(u, part, ops);
        const std::int64_t n = 1 + std::int64_t(uniform(rng, 0, 49));
        CHECK((average_time_domain(inst, n) - average_spectral(inst, n)).frobenius_norm() <=
              1e-9);
    }
}

TEST_CASE("identity unitary gives the plain operator product at every N") {
    Rng rng(4);
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    pairs.emplace_back(Phase::rational(0, 1), random_orthonormal_basis(rng, 3));
    const auto u = SpectralUnitary::from_eigensystem(std::move(pairs));
    std::vector<Mat> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(random_matrix(rng, 3, 3));
    EntangledInstance inst(u, PairPartition::from_word({1, 2, 1, 2}), ops);
    const Mat want = ops[0] * ops[1] * ops[2];
    for (std::int64_t n : {1, 4, 9}) {
        CHECK((average_spectral(inst, n) - want).frobenius_norm() <= 1e-12);
    }
    CHECK((entangled_limit(inst) - want).frobenius_norm() <= 1e-12);
}

TEST_CASE("exact limit attainment on a common-denominator spectrum") {
    Rng rng(5);
    for (const auto& part : PairPartition::enumerate(2)) {
        const auto basis = random_orthonormal_basis(rng, 4);
        std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
        for (int j = 0; j < 4; ++j)
            pairs.emplace_back(Phase::rational(j, 4), std::vector<Vec>{basis[std::size_t(j)]});
        const auto u = SpectralUnitary::from_eigensystem(std::move(pairs));
        std::vector<Mat> ops;
        for (int i = 0; i < 3; ++i) ops.push_back(random_matrix(rng, 4, 4));
        EntangledInstance inst(u, part, ops);
        const Mat lim = entangled_limit(inst);
        for (std::int64_t n : {4, 8, 20})
            CHECK((average_spectral(inst, n) - lim).frobenius_norm() <= 1e-10);
    }
}

TEST_CASE("limit for the flip on the 2-cycle") {
    // u = cyclic shift on C^2, A = the flip itself; limit is
    // E_1 A E_1 + E_{-1} A E_{-1}, checked against the exact N = 2 average.
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
    pairs.emplace_back(Phase::rational(0, 2), std::vector<Vec>{Vec{s, s}});
    pairs.emplace_back(Phase::rational(1, 2), std::vector<Vec>{Vec{s, -s}});
    const auto u = SpectralUnitary::from_eigensystem(std::move(pairs));
    Mat flip = Mat::zero(2, 2);
    flip(0, 1) = 1.0;
    flip(1, 0) = 1.0;
    EntangledInstance inst(u, PairPartition::from_word({1, 1}), {flip});
    CHECK((entangled_limit(inst) - average_time_domain(inst, 2)).frobenius_norm() <= 1e-12);
}

TEST_CASE("limit is independent of input class labels") {
    Rng rng(6);
    const auto u = random_rational_unitary(rng, 4, 3);
    std::vector<Mat> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(random_matrix(rng, 4, 4));
    EntangledInstance a(u, PairPartition::from_word({1, 2, 1, 2}), ops);
    EntangledInstance b(u, PairPartition::from_word({2, 1, 2, 1}), ops);
    CHECK((entangled_limit(a) - entangled_limit(b)).frobenius_norm() == 0.0);
}

TEST_CASE("average norm is bounded by the product of operator norms") {
    Rng rng(7);
    const auto u = random_rational_unitary(rng, 4, 3);
    std::vector<Mat> ops;
    double bound = 1.0;
    for (int i = 0; i < 3; ++i) {
        ops.push_back(random_matrix(rng, 4, 4));
        bound *= operator_norm_estimate(ops.back());
    }
    EntangledInstance inst(u, PairPartition::from_word({1, 2, 2, 1}), ops);
    for (std::int64_t n : {1, 5, 17})
        CHECK(operator_norm_estimate(average_time_domain(inst, n)) <= bound + 1e-6);
}

TEST_CASE("reduction identity on eigenvectors") {
    Rng rng(8);
    SUBCASE("beta = [1,1] is the base case") {
        const auto u = random_rational_unitary(rng, 3, 2);
        EntangledInstance inst(u, PairPartition::from_word({1, 1}), {random_matrix(rng, 3, 3)});
        for (const auto& e : u.eigs())
            for (const auto& v : e.basis) CHECK(zaz_reduction_check(inst, v) <= 1e-10);
    }
    SUBCASE("k + 1 = 2 classes, both shapes") {
        for (const std::vector<int>& word :
             {std::vector<int>{1, 2, 1, 2}, std::vector<int>{1, 2, 2, 1},
              std::vector<int>{1, 1, 2, 2}}) {
            const auto u = random_rational_unitary(rng, 4, 3);
            std::vector<Mat> ops;
            for (int i = 0; i < 3; ++i) ops.push_back(random_matrix(rng, 4, 4));
            EntangledInstance inst(u, PairPartition::from_word(word), ops);
            for (const auto& e : u.eigs())
                for (const auto& v : e.basis) CHECK(zaz_reduction_check(inst, v) <= 1e-9);
        }
    }
    SUBCASE("non-eigenvector input is rejected") {
        const auto u = diag_unitary({Phase::rational(0, 1), Phase::rational(1, 2)});
        EntangledInstance inst(u, PairPartition::from_word({1, 1}), {Mat::identity(2)});
        const double s = 1.0 / std::sqrt(2.0);
        CHECK_THROWS_AS(zaz_reduction_check(inst, Vec{s, s}), NotAnEigenvector);
    }
}

TEST_CASE("convergence report") {
    Rng rng(9);
    SUBCASE("identity unitary is exactly converged everywhere") {
        std::vector<std::pair<Phase, std::vector<Vec>>> pairs;
        pairs.emplace_back(Phase::rational(0, 1), random_orthonormal_basis(rng, 3));
        const auto u = SpectralUnitary::from_eigensystem(std::move(pairs));
        EntangledInstance inst(u, PairPartition::from_word({1, 1}), {random_matrix(rng, 3, 3)});
        const std::vector<std::int64_t> grid = {2, 4, 8};
        const std::vector<Vec> probes = {random_unit_vector(rng, 3)};
        const auto rep = convergence_report(inst, grid, probes);
        REQUIRE(rep.rows.size() == 3);
        for (const auto& row : rep.rows) CHECK(row.deviation <= 1e-12);
        CHECK_FALSE(rep.fitted_slope.has_value());
    }
    SUBCASE("non-increasing grid is rejected") {
        const auto u = random_rational_unitary(rng, 3, 2);
        EntangledInstance inst(u, PairPartition::from_word({1, 1}), {random_matrix(rng, 3, 3)});
        const std::vector<std::int64_t> grid = {8, 4};
        const std::vector<Vec> probes = {random_unit_vector(rng, 3)};
        CHECK_THROWS_AS(convergence_report(inst, grid, probes), Error);
    }
}

TEST_CASE("budget guards fail fast") {
    Rng rng(10);
    const auto u = random_rational_unitary(rng, 4, 3);
    std::vector<Mat> ops;
    for (int i = 0; i < 3; ++i) ops.push_back(random_matrix(rng, 4, 4));
    EntangledInstance inst(u, PairPartition::from_word({1, 2, 1, 2}), ops);
    CHECK_THROWS_AS(average_time_domain(inst, 100000), BudgetExceeded);

    std::vector<Mat> ops4;
    for (int i = 0; i < 7; ++i) ops4.push_back(random_matrix(rng, 4, 4));
    EntangledInstance big(u, PairPartition::from_word({1, 2, 3, 4, 1, 2, 3, 4}), ops4);
    CHECK_THROWS_AS(average_time_domain(big, 2), BudgetExceeded);
}

TEST_CASE("operator count and dimensions are validated") {
    Rng rng(11);
    const auto u = random_rational_unitary(rng, 3, 2);
    CHECK_THROWS_AS(EntangledInstance(u, PairPartition::from_word({1, 1}), {}), Error);
    CHECK_THROWS_AS(
        EntangledInstance(u, PairPartition::from_word({1, 1}), {random_matrix(rng, 2, 2)}),
        DimensionMismatch);
}
