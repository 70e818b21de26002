#include <doctest.h>

#include <map>
#include <set>

#include "haarmod/rings.hpp"
#include "haarmod/rng.hpp"

using namespace haarmod;

TEST_SUITE_BEGIN("rings");

TEST_CASE("factorize splits into increasing prime powers") {
    auto f = factorize(12);
    CHECK(f.m == 12);
    REQUIRE(f.factors.size() == 2);
    CHECK(f.factors[0] == PrimePower{2, 2});
    CHECK(f.factors[1] == PrimePower{3, 1});

    CHECK(factorize(7).factors == std::vector<PrimePower>{{7, 1}});

    auto g = factorize(360);
    CHECK(g.factors == std::vector<PrimePower>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("factorize rejects invalid moduli") {
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    CHECK_THROWS_AS(factorize(1), std::invalid_argument);
}

TEST_CASE("factorize certifies primes by trial division") {
    for (std::uint64_t m = 2; m <= 2000; ++m) {
        std::uint64_t product = 1;
        for (const auto& [p, r] : factorize(m).factors) {
            CHECK(is_prime(p));
            for (std::uint32_t i = 0; i < r; ++i) product *= p;
        }
        CHECK(product == m);
    }
}

TEST_CASE("Z_m arithmetic reduces mod m") {
    ZmRing z12(12);
    CHECK(z12.mul(5, 5) == 1);
    CHECK(z12.add(7, 7) == 2);
    CHECK(z12.neg(0) == 0);
    CHECK(z12.neg(5) == 7);
    CHECK_THROWS_AS(z12.add(12, 0), std::invalid_argument);
    CHECK_THROWS_AS(z12.mul(0, 99), std::invalid_argument);
}

TEST_CASE("units of Z_m are the residues coprime to m") {
    ZmRing z12(12);
    CHECK(z12.is_unit(5));
    CHECK_FALSE(z12.is_unit(8));
    CHECK_FALSE(ZmRing(2).is_unit(0));
}

TEST_CASE("reduce_mod and its fibers") {
    CHECK(reduce_mod(5, 6, 2) == 1);
    std::set<std::uint64_t> fiber;
    for (std::uint64_t x = 0; x < 6; ++x) {
        if (reduce_mod(x, 6, 2) == 1) fiber.insert(x);
    }
    CHECK(fiber == std::set<std::uint64_t>{1, 3, 5});

    CHECK(reduce_mod(4, 5, 5) == 4);
    CHECK(reduce_mod(7, 12, 3) == 1);
    CHECK_THROWS_AS(reduce_mod(0, 6, 4), std::invalid_argument);
    CHECK_THROWS_AS(reduce_mod(6, 6, 2), std::invalid_argument);
}

TEST_CASE("every fiber of reduce_mod has v/u elements") {
    for (auto [v, u] : {std::pair<std::uint64_t, std::uint64_t>{6, 2}, {12, 3}, {60, 12}}) {
        std::map<std::uint64_t, std::uint64_t> counts;
        for (std::uint64_t x = 0; x < v; ++x) ++counts[reduce_mod(x, v, u)];
        for (std::uint64_t y = 0; y < u; ++y) CHECK(counts[y] == v / u);
    }
}

TEST_CASE("CRT split and combine") {
    ZmRing z6(6);
    CHECK(z6.crt_split(5) == std::vector<std::uint64_t>{1, 2});
    CHECK(z6.crt_combine({1, 2}) == 5);
    CHECK(z6.crt_split(0) == std::vector<std::uint64_t>{0, 0});

    ZmRing z12(12);
    CHECK(z12.crt_split(7) == std::vector<std::uint64_t>{3, 1});
    CHECK(z12.crt_combine({3, 1}) == 7);
    CHECK(z12.crt_combine({0, 0}) == 0);
    CHECK_THROWS_AS(z12.crt_combine({4, 0}), std::invalid_argument);
    CHECK_THROWS_AS(z12.crt_combine({0}), std::invalid_argument);
}

TEST_CASE("CRT round trip and multiplicativity on random inputs") {
    RngStream rng(7);
    for (std::uint64_t m : {30ull, 360ull, 46189ull}) {
        ZmRing ring(m);
        for (int i = 0; i < 2000; ++i) {
            std::uint64_t x = rng.below(m), y = rng.below(m);
            CHECK(ring.crt_combine(ring.crt_split(x)) == x);
            auto lhs = ring.crt_split(ring.mul(x, y));
            auto sx = ring.crt_split(x);
            auto sy = ring.crt_split(y);
            for (std::size_t f = 0; f < lhs.size(); ++f) {
                const auto& [p, r] = ring.factorization().factors[f];
                CHECK(lhs[f] == sx[f] * sy[f] % pow_u64_checked(p, r, m));
            }
        }
    }
}

TEST_CASE("GF(4) arithmetic is forced by the modulus polynomial") {
    FqField f4(2, 2);  // x^2 + x + 1
    const std::uint64_t x = f4.encode({0, 1});
    const std::uint64_t x_plus_1 = f4.encode({1, 1});
    CHECK(f4.mul(x, x) == x_plus_1);
    CHECK(f4.inv(x) == x_plus_1);
    CHECK(f4.mul(x, x_plus_1) == 1);
}

TEST_CASE("GF(9) with modulus x^2 + 1") {
    FqField f9(3, 2);
    CHECK(f9.modulus_poly() == std::vector<std::uint64_t>{1, 0, 1});
    const std::uint64_t x = f9.encode({0, 1});
    CHECK(f9.mul(x, x) == 2);  // x^2 = -1 = 2
    CHECK_THROWS_AS(f9.inv(0), std::domain_error);
}

TEST_CASE("log-table and direct multiplication agree") {
    for (auto [p, n] : {std::pair<std::uint64_t, std::uint32_t>{2, 4}, {3, 3}, {5, 2}}) {
        FqField f(p, n);
        REQUIRE(f.uses_log_tables());
        for (std::uint64_t a = 0; a < f.q(); ++a) {
            for (std::uint64_t b = 0; b < f.q(); ++b) {
                CHECK(f.mul(a, b) == f.mul_direct(a, b));
            }
        }
    }
}

TEST_CASE("canonical modulus polynomials are minimal irreducibles") {
    for (auto [p, n] : {std::pair<std::uint64_t, std::uint32_t>{2, 2}, {2, 3}, {2, 4}, {2, 5},
                        {2, 6}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
        auto canonical = canonical_modulus_poly(p, n);
        REQUIRE(canonical.size() == n + 1);
        CHECK(canonical.back() == 1);
        CHECK(is_irreducible_poly(canonical, p));
        // encode the non-leading coefficients and recompute by search
        std::uint64_t canonical_code = 0;
        for (std::uint32_t i = n; i-- > 0;) canonical_code = canonical_code * p + canonical[i];
        for (std::uint64_t code = 0; code < canonical_code; ++code) {
            std::vector<std::uint64_t> poly(n + 1);
            std::uint64_t v = code;
            for (std::uint32_t i = 0; i < n; ++i) {
                poly[i] = v % p;
                v /= p;
            }
            poly[n] = 1;
            CHECK_FALSE(is_irreducible_poly(poly, p));
        }
    }
}

TEST_CASE("user-supplied modulus polynomials are validated") {
    CHECK_THROWS_AS(FqField(3, 2, {2, 0, 1}), std::invalid_argument);  // x^2+2 = (x+1)(x+2)
    CHECK_NOTHROW(FqField(5, 2, {2, 0, 1}));                           // irreducible over F_5
    CHECK_THROWS_AS(FqField(2, 2, {1, 1}), std::invalid_argument);     // wrong degree
    CHECK_THROWS_AS(FqField(4, 1, {0, 1}), std::invalid_argument);     // 4 is not prime
}

TEST_CASE("prime-power local rings") {
    auto z4 = LocalRing::prime_power(2, 2);
    CHECK(z4->size() == 4);
    CHECK(z4->residue_field().q() == 2);
    CHECK(z4->representative(0) == 0);
    CHECK(z4->representative(1) == 1);
    CHECK(z4->ideal_size() == 2);
    CHECK(z4->ideal_element(0) == 0);
    CHECK(z4->ideal_element(1) == 2);
    CHECK(z4->is_unit(1));
    CHECK(z4->is_unit(3));
    CHECK_FALSE(z4->is_unit(0));
    CHECK_FALSE(z4->is_unit(2));
}

TEST_CASE("truncated polynomial local rings") {
    auto ring = LocalRing::truncated_poly(make_fq(2, 1), 2);  // F_2[t]/(t^2)
    CHECK(ring->size() == 4);
    const std::uint64_t t = 2;  // digits (0, 1)
    CHECK(ring->mul(t, t) == 0);
    CHECK(ring->mul(1 + t, 1 + t) == 1);  // (1+t)^2 = 1 + 2t + t^2 = 1
    CHECK(ring->is_unit(1));
    CHECK(ring->is_unit(1 + t));
    CHECK_FALSE(ring->is_unit(0));
    CHECK_FALSE(ring->is_unit(t));
    CHECK(ring->ideal_element(1) == t);
}

TEST_CASE("a multi-prime modulus is not a local ring") {
    CHECK_THROWS_AS(LocalRing::prime_power(6, 1), std::invalid_argument);
    CHECK_THROWS_AS(LocalRing::prime_power(15, 2), std::invalid_argument);
}

TEST_CASE("local ring units are exactly the elements with nonzero residue") {
    std::vector<std::shared_ptr<const LocalRing>> rings = {
        LocalRing::prime_power(2, 3),
        LocalRing::prime_power(3, 2),
        LocalRing::truncated_poly(make_fq(2, 2), 2),
        LocalRing::truncated_poly(make_fq(3, 1), 3),
    };
    for (const auto& ring : rings) {
        for (std::uint64_t a = 0; a < ring->size(); ++a) {
            CHECK(ring->is_unit(a) == (ring->residue(a) != 0));
        }
    }
}

TEST_CASE("ring element encodings round-trip") {
    FqField f8(2, 3);
    for (std::uint64_t a = 0; a < 8; ++a) CHECK(f8.encode(f8.decode(a)) == a);
}

TEST_CASE("same_ring compares descriptors structurally") {
    CHECK(same_ring(*make_zm(6), *make_zm(6)));
    CHECK_FALSE(same_ring(*make_zm(6), *make_zm(12)));
    CHECK_FALSE(same_ring(*make_zm(4), *LocalRing::prime_power(2, 2)));
    CHECK(same_ring(*make_fq(2, 2), *make_fq(2, 2)));
    CHECK_FALSE(same_ring(*make_fq(3, 2), *make_fq(3, 2, {2, 2, 1})));
}

TEST_SUITE_END();
