#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eet/linalg.hpp"
#include "eet/random.hpp"

using namespace eet;

namespace {

double mat_dist(const Mat& a, const Mat& b) { return (a - b).frobenius_norm(); }

// Scalar-level triple loop, no reuse of Mat::operator*.
Mat naive_product(const Mat& a, const Mat& b) {
    Mat out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            cplx s = 0.0;
            for (std::size_t l = 0; l < a.cols(); ++l) s += a(i, l) * b(l, j);
            out(i, j) = s;
        }
    return out;
}

} // namespace

TEST_CASE("kron identities") {
    CHECK(mat_dist(kron(Mat::identity(2), Mat::identity(3)), Mat::identity(6)) == 0.0);

    Rng rng(1);
    const Mat a = random_matrix(rng, 3, 3);
    Mat one(1, 1);
    one(0, 0) = 1.0;
    CHECK(mat_dist(kron(a, one), a) == 0.0);
    CHECK(mat_dist(kron(one, a), a) == 0.0);
}

TEST_CASE("kron acts as tensor product of actions") {
    Rng rng(2);
    const Mat a = random_matrix(rng, 3, 3);
    const Mat b = random_matrix(rng, 3, 3);
    const Vec x = random_vector(rng, 3);
    const Vec y = random_vector(rng, 3);
    const Vec lhs = kron(a, b).apply(tensor(x, y));
    const Vec rhs = tensor(a.apply(x), b.apply(y));
    CHECK((lhs - rhs).norm() <= 1e-12);
}

TEST_CASE("kron is associative with exact entries") {
    Rng rng(3);
    const Mat a = random_matrix(rng, 2, 2);
    const Mat b = random_matrix(rng, 2, 3);
    const Mat c = random_matrix(rng, 3, 2);
    const Mat l = kron(kron(a, b), c);
    const Mat r = kron(a, kron(b, c));
    REQUIRE(l.rows() == r.rows());
    for (std::size_t i = 0; i < l.rows(); ++i)
        for (std::size_t j = 0; j < l.cols(); ++j) CHECK(std::abs(l(i, j) - r(i, j)) <= 1e-12);
}

TEST_CASE("projector_from_vectors") {
    SUBCASE("single standard vector") {
        const Vec e1{1.0, 0.0};
        const Mat p = projector_from_vectors(std::vector<Vec>{e1});
        CHECK(p(0, 0) == cplx(1.0));
        CHECK(p(1, 1) == cplx(0.0));
        CHECK(p.is_projection());
    }
    SUBCASE("empty family is the zero matrix") {
        const Mat p = projector_from_vectors(std::vector<Vec>{}, 3);
        CHECK(p.frobenius_norm() == 0.0);
        CHECK(p.rows() == 3);
    }
    SUBCASE("complete orthonormal basis gives the identity") {
        const double s = 1.0 / std::sqrt(2.0);
        const std::vector<Vec> basis = {Vec{s, s}, Vec{s, -s}};
        CHECK(mat_dist(projector_from_vectors(basis), Mat::identity(2)) <= 1e-14);
    }
    SUBCASE("non-orthonormal input is rejected") {
        const std::vector<Vec> bad = {Vec{1.0, 0.0}, Vec{0.9, 0.1}};
        CHECK_THROWS_AS(projector_from_vectors(bad), NonOrthonormalInput);
    }
    SUBCASE("output always passes the projection check") {
        Rng rng(4);
        for (int t = 0; t < 10; ++t) {
            auto basis = random_orthonormal_basis(rng, 4);
            basis.resize(2);
            CHECK(projector_from_vectors(basis).is_projection());
        }
    }
}

TEST_CASE("chain_product") {
    Rng rng(5);
    const Mat a = random_matrix(rng, 2, 2);
    SUBCASE("single factor") {
        CHECK(mat_dist(chain_product(std::vector<Mat>{a}), a) == 0.0);
    }
    SUBCASE("identity padding") {
        const std::vector<Mat> f = {Mat::identity(2), a, Mat::identity(2)};
        CHECK(mat_dist(chain_product(f), a) <= 1e-14);
    }
    SUBCASE("matches the scalar triple-loop oracle") {
        const Mat p = random_matrix(rng, 2, 2);
        const Mat q = random_matrix(rng, 2, 2);
        const Mat want = naive_product(naive_product(p, a), q);
        CHECK(mat_dist(chain_product(std::vector<Mat>{p, a, q}), want) <= 1e-12);
    }
    SUBCASE("dimension mismatch") {
        const std::vector<Mat> f = {Mat::identity(2), Mat::identity(3)};
        CHECK_THROWS_AS(chain_product(f), DimensionMismatch);
    }
}

TEST_CASE("frobenius distance is a metric") {
    Rng rng(6);
    for (int t = 0; t < 10; ++t) {
        const Mat a = random_matrix(rng, 3, 3);
        const Mat b = random_matrix(rng, 3, 3);
        const Mat c = random_matrix(rng, 3, 3);
        CHECK(mat_dist(a, b) == doctest::Approx(mat_dist(b, a)).epsilon(1e-12));
        CHECK(mat_dist(a, c) <= mat_dist(a, b) + mat_dist(b, c) + 1e-12);
        CHECK(mat_dist(a, a) == 0.0);
    }
}

TEST_CASE("operator norm estimate on a known diagonal") {
    Mat d = Mat::zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = cplx(0.0, -3.0);
    d(2, 2) = 0.5;
    CHECK(operator_norm_estimate(d) == doctest::Approx(3.0).epsilon(1e-5));
}

TEST_CASE("hermitian min eigenvalue") {
    Mat h = Mat::zero(2, 2);
    h(0, 0) = 2.0;
    h(1, 1) = 2.0;
    h(0, 1) = cplx(0.0, 1.0);
    h(1, 0) = cplx(0.0, -1.0);
    // eigenvalues 2 +- 1
    CHECK(hermitian_min_eigenvalue(h) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unitary and projection flags") {
    Mat u = Mat::zero(2, 2);
    u(0, 1) = 1.0;
    u(1, 0) = 1.0;
    CHECK(u.is_unitary());
    CHECK_FALSE(u.is_projection());
    CHECK(Mat::identity(4).is_projection());
}
