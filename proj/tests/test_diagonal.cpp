#include <doctest.h>

#include <cmath>

#include "eet/diagonal.hpp"
#include "eet/random.hpp"

using namespace eet;

TEST_CASE("sigma pairs") {
    SUBCASE("cyclic m = 3, (m1,m2) = (1,2): the diagonal of turn numerators") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const auto pairs = sigma_pairs(td);
        REQUIRE(pairs.size() == 3);
        for (const auto& s : pairs) {
            CHECK(s.j == s.l);
            CHECK((s.j + 2 * s.l) % 3 == 0);
        }
    }
    SUBCASE("cyclic m = 2: two pairs") {
        CyclicTensorDynamics td(CyclicRotationSystem(2), 1, 2);
        const auto pairs = sigma_pairs(td);
        REQUIRE(pairs.size() == 2);
        CHECK(pairs[0].j == 0);
        CHECK(pairs[0].l == 0);
        CHECK(pairs[1].j == 0);
        CHECK(pairs[1].l == 1);
    }
    SUBCASE("bernoulli has only the trivial pair") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(3), 1, 2};
        const auto pairs = sigma_pairs(td);
        REQUIRE(pairs.size() == 1);
        CHECK(pairs[0].z.is_one());
        CHECK(pairs[0].w.is_one());
    }
    SUBCASE("membership constraint holds exactly") {
        CyclicTensorDynamics td(CyclicRotationSystem(6), 2, 3);
        for (const auto& s : sigma_pairs(td))
            CHECK((s.z.times(2) + s.w.times(3)).is_one());
    }
}

TEST_CASE("invariant projection on the tensor space") {
    SUBCASE("m = 1 gives the 1x1 identity") {
        CyclicTensorDynamics td(CyclicRotationSystem(1), 1, 2);
        CHECK((invariant_projection_tensor(td) - Mat::identity(1)).frobenius_norm() <= 1e-14);
    }
    SUBCASE("m = 3 has rank 3") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const Mat e1 = invariant_projection_tensor(td);
        CHECK(e1.is_projection());
        cplx tr = 0.0;
        for (std::size_t i = 0; i < 9; ++i) tr += e1(i, i);
        CHECK(std::abs(tr - cplx(3.0)) <= 1e-12);
    }
    SUBCASE("matches the mean ergodic projection of the tensor unitary") {
        for (int m : {2, 3, 4}) {
            CyclicTensorDynamics td(CyclicRotationSystem(m), 1, 2);
            const Mat a = invariant_projection_tensor(td);
            const Mat b = td.tensor_unitary().mean_ergodic_projection();
            CHECK((a - b).frobenius_norm() <= 1e-10);
        }
    }
    SUBCASE("Omega (x) Omega is invariant") {
        CyclicTensorDynamics td(CyclicRotationSystem(4), 1, 2);
        const Vec oo = tensor(td.base().omega(), td.base().omega());
        CHECK((td.tensor_unitary().power_apply(1, oo) - oo).norm() <= 1e-12);
    }
}

TEST_CASE("partial isometry") {
    SUBCASE("m = 1: the scalar 1") {
        CyclicTensorDynamics td(CyclicRotationSystem(1), 1, 2);
        const auto v = build_partial_isometry(td);
        CHECK(std::abs(v.v(0, 0) - cplx(1.0)) <= 1e-14);
    }
    SUBCASE("V*V = E1 and VV* is a projection") {
        for (int m : {2, 3, 5}) {
            CyclicTensorDynamics td(CyclicRotationSystem(m), 1, 2);
            const auto v = build_partial_isometry(td);
            CHECK((v.v.adjoint() * v.v - invariant_projection_tensor(td)).frobenius_norm() <=
                  1e-10);
            CHECK((v.v * v.v.adjoint()).is_projection());
        }
    }
    SUBCASE("character product rule at m = 3") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const auto& sys = td.base();
        const auto v = build_partial_isometry(td);
        for (const auto& s : sigma_pairs(td)) {
            const Vec in = tensor(sys.generator_for_phase(s.j).apply(sys.omega()),
                                  sys.generator_for_phase(s.l).apply(sys.omega()));
            const Vec want =
                (sys.generator_for_phase(s.j) * sys.generator_for_phase(s.l)).apply(sys.omega());
            CHECK((apply_partial_isometry(v, in) - want).norm() <= 1e-12);
        }
    }
    SUBCASE("isometric on the range of E1") {
        Rng rng(1);
        CyclicTensorDynamics td(CyclicRotationSystem(4), 1, 2);
        const auto v = build_partial_isometry(td);
        const Mat e1 = invariant_projection_tensor(td);
        for (int t = 0; t < 20; ++t) {
            const Vec x = e1.apply(random_vector(rng, 16));
            CHECK(apply_partial_isometry(v, x).norm() == doctest::Approx(x.norm()).epsilon(1e-10));
        }
    }
    SUBCASE("colliding images are rejected") {
        // m = 4, (m1, m2) = (1, 3): two sigma pairs share the image character.
        CyclicTensorDynamics td(CyclicRotationSystem(4), 1, 3);
        CHECK_THROWS_AS(build_partial_isometry(td), Error);
    }
}

TEST_CASE("diagonal cesaro vector") {
    SUBCASE("identity operators give Omega") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        for (std::int64_t n : {1, 5, 9})
            CHECK((diagonal_cesaro_vector(td, Mat::identity(3), Mat::identity(3), n) -
                   td.base().omega())
                      .norm() <= 1e-13);
    }
    SUBCASE("cyclic m = 3, A = B = V_1, N = 3: exact limit") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const Mat v1 = td.base().character(1);
        const auto v = build_partial_isometry(td);
        const Vec lim = apply_partial_isometry(
            v, tensor(v1.apply(td.base().omega()), v1.apply(td.base().omega())));
        CHECK((diagonal_cesaro_vector(td, v1, v1, 3) - lim).norm() <= 1e-12);
        // and the image is V_1^2 Omega = V_2 Omega
        CHECK((lim - td.base().character(2).apply(td.base().omega())).norm() <= 1e-12);
    }
    SUBCASE("bernoulli characters: limit zero at rate C/N") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(3), 1, 2};
        const CylOp a = td.base.character(0, 1);
        const CylOp b = td.base.character(0, 2);
        const CylVec lim = apply_partial_isometry_symbolic(
            td.base, td.base.apply_op(a, td.base.omega()), td.base.apply_op(b, td.base.omega()));
        CHECK(BernoulliShiftSystem::norm(lim) == 0.0);
        // the N summands are orthonormal words, so the norm is exactly 1/sqrt(N)
        for (std::int64_t n : {8, 32, 128}) {
            const double dev = BernoulliShiftSystem::norm(diagonal_cesaro_vector(td, a, b, n));
            CHECK(dev == doctest::Approx(1.0 / std::sqrt(double(n))).epsilon(1e-12));
        }
    }
}

TEST_CASE("diagonal cesaro operator") {
    Rng rng(2);
    SUBCASE("cyclic: exact at N divisible by m, and closing formula agrees") {
        for (int m : {2, 3, 5}) {
            CyclicTensorDynamics td(CyclicRotationSystem(m), 1, 2);
            const Mat a = td.base().character(1);
            std::vector<Vec> probes;
            for (int i = 0; i < 5; ++i) probes.push_back(random_unit_vector(rng, std::size_t(m)));
            const std::vector<std::int64_t> grid = {std::int64_t(m), 6 * std::int64_t(m)};
            const auto rep = diagonal_cesaro_operator(td, a, grid, probes);
            CHECK(rep.max_deviation() <= 1e-10);

            const auto v = build_partial_isometry(td);
            const Vec a_omega = a.apply(td.base().omega());
            for (const auto& xi : probes) {
                const Vec lhs = apply_partial_isometry(v, tensor(a_omega, xi));
                const Vec rhs = closing_formula_apply(td.base(), a, xi);
                CHECK((lhs - rhs).norm() <= 1e-10);
            }
        }
    }
    SUBCASE("vector and operator forms are consistent") {
        CyclicTensorDynamics td(CyclicRotationSystem(4), 1, 2);
        const Mat a = td.base().character(1);
        const Mat b = td.base().character(3);
        const Vec b_omega = b.apply(td.base().omega());
        for (std::int64_t n : {3, 8}) {
            // (1/N) sum U^n A U^n (B Omega) computed via the vector routine
            const Vec via_vec = diagonal_cesaro_vector(td, a, b, n);
            Vec direct(4);
            for (std::int64_t i = 0; i < n; ++i)
                direct += td.base().u().power_apply(
                    i, a.apply(td.base().u().power_apply(i, b_omega)));
            direct *= cplx(1.0 / double(n));
            CHECK((via_vec - direct).norm() <= 1e-12);
        }
    }
    SUBCASE("bernoulli probes decay") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(2), 1, 2};
        const CylOp a = td.base.character(0, 1);
        const std::vector<CylVec> probes = {td.base.omega()};
        const std::vector<std::int64_t> grid = {4, 16, 64, 256};
        const auto rep = diagonal_cesaro_operator(td, a, grid, probes);
        REQUIRE(rep.rows.size() == 4);
        CHECK(rep.rows.back().deviation < rep.rows.front().deviation);
    }
}

TEST_CASE("triple correlation") {
    SUBCASE("identities give 1") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const auto avg =
            triple_correlation(td, Mat::identity(3), Mat::identity(3), Mat::identity(3), 7);
        CHECK(std::abs(avg.finite_n - cplx(1.0)) <= 1e-13);
        CHECK(std::abs(avg.limit - cplx(1.0)) <= 1e-13);
    }
    SUBCASE("cyclic m = 3, all V_1: exact at N = 3") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        const Mat v1 = td.base().character(1);
        const auto avg = triple_correlation(td, v1, v1, v1, 3);
        CHECK(std::abs(avg.finite_n - avg.limit) <= 1e-12);
    }
    SUBCASE("three routes to the limit agree") {
        for (int m : {2, 3}) {
            CyclicTensorDynamics td(CyclicRotationSystem(m), 1, 2);
            const auto& sys = td.base();
            const Mat a0 = sys.character(1);
            const Mat a1 = sys.character(m - 1);
            const Mat a2 = sys.character(1);

            const auto avg = triple_correlation(td, a0, a1, a2, 1);

            // route (b): expand V(A1 Omega (x) A2 Omega) in the orthonormal
            // domain basis of the sigma pairs
            const auto v = build_partial_isometry(td);
            const Vec x1 = a1.apply(sys.omega());
            const Vec x2 = a2.apply(sys.omega());
            auto img = Vec(std::size_t(m));
            for (std::size_t i = 0; i < v.domain_basis.size(); ++i) {
                const Vec dom = v.domain_basis[i];
                // dom = p (x) q with p, q unit: coefficient <x1,p><x2,q>
                const cplx c = inner(tensor(x1, x2), dom);
                img += c * v.images[i];
            }
            const Vec a0_adj_omega = a0.adjoint().apply(sys.omega());
            const cplx route_b = inner(img, a0_adj_omega);
            CHECK(std::abs(route_b - avg.limit) <= 1e-10);

            // route (c): long direct average
            const auto long_avg = triple_correlation(td, a0, a1, a2, 3 * m * m);
            CHECK(std::abs(long_avg.finite_n - avg.limit) <= 1e-10);
        }
    }
    SUBCASE("bernoulli: disjoint-support characters decay to the product") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(3), 1, 2};
        const CylOp a0 = td.base.character(0, 1);
        const CylOp a1 = td.base.character(1, 1);
        const CylOp a2 = td.base.character(0, 2);
        for (std::int64_t n : {8, 64, 512}) {
            const auto avg = triple_correlation(td, a0, a1, a2, n);
            CHECK(std::abs(avg.limit) == 0.0);
            CHECK(std::abs(avg.finite_n - avg.limit) <= 8.0 / double(n));
        }
    }
}

TEST_CASE("general exponent averages") {
    SUBCASE("m2 - m1 = 1 in the ergodic model: the product state") {
        CyclicTensorDynamics td(CyclicRotationSystem(3), 1, 2);
        Rng rng(3);
        const Mat a = random_matrix(rng, 3, 3);
        const Mat b = random_matrix(rng, 3, 3);
        const auto avg = general_exponent_average(td, a, b, 9);
        const cplx want = inner(a.apply(td.base().omega()), td.base().omega()) *
                          inner(b.apply(td.base().omega()), td.base().omega());
        CHECK(std::abs(avg.limit - want) <= 1e-12);
        CHECK(std::abs(avg.finite_n - avg.limit) <= 1e-12); // 9 divisible by 3
    }
    SUBCASE("cyclic m = 4, m2 - m1 = 2: two-term sum beats the product state") {
        CyclicTensorDynamics td(CyclicRotationSystem(4), 1, 3);
        const Mat v2 = td.base().character(2);
        const auto avg = general_exponent_average(td, v2, v2, 8);
        const cplx product = inner(v2.apply(td.base().omega()), td.base().omega()) *
                             inner(v2.apply(td.base().omega()), td.base().omega());
        CHECK(std::abs(avg.limit - product) > 0.1);
        CHECK(std::abs(avg.finite_n - avg.limit) <= 1e-12);
    }
    SUBCASE("bernoulli limit is always the product state") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(2), 1, 3};
        const CylOp a = td.base.character(0, 1);
        const CylOp b = td.base.character(0, 1);
        const auto avg = general_exponent_average(td, a, b, 32);
        CHECK(avg.limit == td.base.state(a) * td.base.state(b));
        CHECK(std::abs(avg.finite_n - avg.limit) <= 4.0 / 32.0);
    }
    SUBCASE("weak mixing probe defect vanishes with N") {
        BernoulliTensorDynamics td{BernoulliShiftSystem(3), 1, 2};
        const CylOp a = td.base.character(0, 1);
        const CylVec xi = td.base.apply_op(td.base.character(1, 2), td.base.omega());
        const double d16 = weak_mixing_probe_defect(td, a, xi, 16);
        const double d256 = weak_mixing_probe_defect(td, a, xi, 256);
        CHECK(d256 < d16);
        CHECK(d256 <= 1.0 / std::sqrt(256.0) + 1e-12);
    }
}
