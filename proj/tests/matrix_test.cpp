#include <doctest.h>

#include "haarmod/matrix.hpp"
#include "haarmod/rng.hpp"
#include "haarmod/sampling.hpp"
#include "oracles.hpp"

using namespace haarmod;

TEST_SUITE_BEGIN("matrices");

TEST_CASE("matrix product and sum over Z_m") {
    auto z6 = make_zm(6);
    Matrix a(z6, 2, 2, {1, 2, 3, 4});
    CHECK(mul(a, Matrix::identity(z6, 2)) == a);

    auto z12 = make_zm(12);
    RngStream rng(3);
    for (int i = 0; i < 50; ++i) {
        Matrix m = sample_uniform_matrix(z12, 3, 3, rng);
        CHECK(mul(Matrix::identity(z12, 3), m) == m);
    }

    auto z2 = make_zm(2);
    Matrix ones(z2, 2, 2, {1, 1, 1, 1});
    CHECK(mul(ones, ones) == Matrix(z2, 2, 2, {0, 0, 0, 0}));

    CHECK_THROWS_AS(mul(a, Matrix(z6, 3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(add(a, Matrix(make_zm(7), 2, 2)), std::invalid_argument);
}

TEST_CASE("determinant of small matrices") {
    Matrix a(make_zm(6), 2, 2, {1, 2, 3, 4});
    CHECK(determinant(a) == 4);  // -2 mod 6

    for (const RingPtr& ring :
         {RingPtr(make_zm(12)), RingPtr(make_fq(2, 2)),
          RingPtr(LocalRing::truncated_poly(make_fq(2, 1), 2))}) {
        for (std::uint32_t n = 1; n <= 5; ++n) {
            CHECK(determinant(Matrix::identity(ring, n)) == ring->one());
        }
    }
    CHECK_THROWS_AS(determinant(Matrix(make_zm(4), 2, 3)), std::invalid_argument);
}

TEST_CASE("determinant agrees with cofactor expansion on random matrices") {
    auto z12 = make_zm(12);
    RngStream rng(11);
    for (int i = 0; i < 1000; ++i) {
        Matrix m = sample_uniform_matrix(z12, 4, 4, rng);
        CHECK(determinant(m) == oracles::det_cofactor(m));
    }
    // and across ring kinds at mixed sizes
    for (const RingPtr& ring :
         {RingPtr(make_fq(2, 2)), RingPtr(make_fq(3, 1)),
          RingPtr(LocalRing::prime_power(2, 3)),
          RingPtr(LocalRing::truncated_poly(make_fq(2, 1), 2))}) {
        for (int i = 0; i < 200; ++i) {
            std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(4));
            Matrix m = sample_uniform_matrix(ring, n, n, rng);
            CHECK(determinant(m) == oracles::det_cofactor(m));
        }
    }
}

TEST_CASE("invertibility criteria") {
    Matrix a(make_zm(6), 2, 2, {1, 2, 3, 4});
    CHECK(determinant(a) == 4);
    CHECK_FALSE(is_invertible(a));  // gcd(4, 6) = 2

    Matrix b(make_zm(4), 2, 2, {3, 0, 0, 1});
    CHECK(is_invertible(b));  // reduction mod 2 is the identity
}

TEST_CASE("both invertibility paths agree on all 2x2 matrices mod 4") {
    auto z4 = make_zm(4);
    std::uint64_t invertible = 0;
    oracles::for_each_matrix(z4, 2, [&](const Matrix& m) {
        bool fast = is_invertible(m);
        CHECK(fast == is_invertible_via_det(m));
        if (fast) ++invertible;
    });
    CHECK(invertible == 96);
}

TEST_CASE("truncation takes the upper-left corner") {
    auto z6 = make_zm(6);
    Matrix a(z6, 2, 2, {1, 2, 3, 4});
    CHECK(truncate(a, 2) == a);
    CHECK(truncate(a, 1) == Matrix(z6, 1, 1, {1}));
    CHECK(truncate(Matrix::identity(z6, 5), 3) == Matrix::identity(z6, 3));
    CHECK_THROWS_AS(truncate(a, 3), std::invalid_argument);
    CHECK_THROWS_AS(truncate(a, 0), std::invalid_argument);
}

TEST_CASE("rank over a field") {
    auto f2 = make_fq(2, 1);
    CHECK(rank_over_field(Matrix::identity(f2, 3)) == 3);
    CHECK(rank_over_field(Matrix(f2, 3, 3)) == 0);
    CHECK(rank_over_field(Matrix(f2, 2, 2, {1, 1, 1, 1})) == 1);
    CHECK(rank_over_field(Matrix(make_fq(2, 2), 2, 3, {1, 2, 3, 2, 3, 1})) <= 2);
    CHECK_THROWS_AS(rank_over_field(Matrix(make_zm(4), 2, 2)), std::domain_error);
}

TEST_CASE("CRT matrix split and combine") {
    auto z6 = make_zm(6);
    Matrix a(z6, 1, 1, {5});
    auto parts = crt_split_matrix(a);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0] == Matrix(make_zm(2), 1, 1, {1}));
    CHECK(parts[1] == Matrix(make_zm(3), 1, 1, {2}));
    CHECK(crt_combine_matrix(parts, z6) == a);

    auto z12 = make_zm(12);
    RngStream rng(5);
    for (int i = 0; i < 1000; ++i) {
        Matrix m = sample_uniform_matrix(z12, 4, 4, rng);
        CHECK(crt_combine_matrix(crt_split_matrix(m), z12) == m);
    }
    CHECK_THROWS_AS(crt_split_matrix(Matrix(make_fq(2, 2), 1, 1)), std::domain_error);
}

TEST_CASE("invertibility over Z_6 matches componentwise invertibility, exhaustive") {
    auto z6 = make_zm(6);
    std::uint64_t count = 0;
    oracles::for_each_matrix(z6, 2, [&](const Matrix& m) {
        auto parts = crt_split_matrix(m);
        bool both = is_invertible(parts[0]) && is_invertible(parts[1]);
        CHECK(is_invertible(m) == both);
        if (both) ++count;
    });
    CHECK(count == 288);
}

TEST_CASE("determinant is multiplicative, sampled") {
    RngStream rng(17);
    for (const RingPtr& ring : {RingPtr(make_zm(6)), RingPtr(make_fq(2, 2))}) {
        for (int i = 0; i < 1000; ++i) {
            std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(5));
            Matrix a = sample_uniform_matrix(ring, n, n, rng);
            Matrix b = sample_uniform_matrix(ring, n, n, rng);
            CHECK(determinant(mul(a, b)) == ring->mul(determinant(a), determinant(b)));
        }
    }
}

TEST_SUITE_END();
