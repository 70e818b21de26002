#include <doctest.h>

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "haarmod/counting.hpp"
#include "haarmod/errors.hpp"
#include "haarmod/json_io.hpp"
#include "haarmod/sampling.hpp"
#include "haarmod/stats.hpp"

using namespace haarmod;

namespace {

SampleBatch batch_of(const RingPtr& ring, std::uint32_t n, std::vector<Matrix> draws) {
    SampleBatch b;
    b.ring = ring;
    b.n = n;
    b.s = n;
    b.seed = 0;
    b.rng_version = RngStream::version();
    for (auto& m : draws) b.corners.push_back(m.entries());
    return b;
}

}  // namespace

TEST_SUITE_BEGIN("sampling");

TEST_CASE("uniform entries over Z_2 are balanced") {
    auto z2 = make_zm(2);
    RngStream rng(101);
    int ones = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) ones += static_cast<int>(sample_uniform_matrix(z2, 1, 1, rng).at(0, 0));
    double freq = static_cast<double>(ones) / draws;
    CHECK(std::fabs(freq - 0.5) < 0.005);
}

TEST_CASE("ideal-restricted draws stay in the maximal ideal") {
    auto z4 = LocalRing::prime_power(2, 2);
    RngStream rng(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        Matrix m = sample_ideal_matrix(z4, 2, 2, rng);
        for (std::uint64_t e : m.entries()) seen.insert(e);
    }
    CHECK(seen == std::set<std::uint64_t>{0, 2});
}

TEST_CASE("fixed seeds reproduce matrices exactly") {
    auto z12 = make_zm(12);
    RngStream a(42), b(42);
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_uniform_matrix(z12, 3, 3, a) == sample_uniform_matrix(z12, 3, 3, b));
    }
    RngStream c(42), d(42);
    for (int i = 0; i < 20; ++i) {
        CHECK(sample_gl_zm(z12, 3, c) == sample_gl_zm(z12, 3, d));
    }
}

TEST_CASE("chain sampler over GL_1(F_2) is constant") {
    auto f2 = make_fq(2, 1);
    RngStream rng(9);
    for (int i = 0; i < 100; ++i) {
        CHECK(sample_gl_field_chain(f2, 1, rng) == Matrix(f2, 1, 1, {1}));
    }
}

TEST_CASE("chain sampler visits GL_2(F_2) uniformly") {
    auto f2 = make_fq(2, 1);
    RngStream rng(2026);
    std::map<std::vector<std::uint64_t>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) ++counts[sample_gl_field_chain(f2, 2, rng).entries()];
    REQUIRE(counts.size() == 6);
    for (const auto& [key, count] : counts) CHECK(std::abs(count - 10000) < 400);
}

TEST_CASE("every chain draw is invertible") {
    RngStream rng(77);
    for (const RingPtr& field : {RingPtr(make_fq(2, 1)), RingPtr(make_fq(3, 1)), RingPtr(make_fq(2, 2))}) {
        for (std::uint32_t n = 1; n <= 8; ++n) {
            for (int i = 0; i < 420; ++i) {
                CHECK(is_invertible(sample_gl_field_chain(field, n, rng)));
            }
        }
    }
}

TEST_CASE("rejection sampler acceptance rate over M_2(F_2)") {
    auto f2 = make_fq(2, 1);
    RngStream rng(404);
    const int attempts = 100000;
    int accepted = 0;
    for (int i = 0; i < attempts; ++i) {
        if (is_invertible(sample_uniform_matrix(f2, 2, 2, rng))) ++accepted;
    }
    double rate = static_cast<double>(accepted) / attempts;
    CHECK(std::fabs(rate - 6.0 / 16.0) < 0.005);
}

TEST_CASE("rejection sampler over GL_1(F_3) is uniform on units") {
    auto f3 = make_fq(3, 1);
    RngStream rng(8);
    std::map<std::uint64_t, int> counts;
    for (int i = 0; i < 20000; ++i) ++counts[sample_gl_field_reject(f3, 1, rng).at(0, 0)];
    REQUIRE(counts.size() == 2);
    CHECK(counts.count(1) == 1);
    CHECK(counts.count(2) == 1);
    CHECK(std::abs(counts[1] - counts[2]) < 600);  // ~4.2 sigma of the difference
}

TEST_CASE("chain and rejection samplers have the same law on GL_2(F_3)") {
    auto f3 = make_fq(3, 1);
    RngStream r1(314), r2(159);
    const int draws = 100000;
    std::vector<Matrix> chain, reject;
    chain.reserve(draws);
    reject.reserve(draws);
    for (int i = 0; i < draws; ++i) chain.push_back(sample_gl_field_chain(f3, 2, r1));
    for (int i = 0; i < draws; ++i) reject.push_back(sample_gl_field_reject(f3, 2, r2));
    auto result = chi_squared_two_sample(empirical_dist(batch_of(f3, 2, std::move(chain))),
                                         empirical_dist(batch_of(f3, 2, std::move(reject))));
    CHECK(result.cells == 48);
    CHECK(result.p_value > 0.001);
}

TEST_CASE("lift over GL_1(Z_4) is uniform on the units") {
    auto f2 = make_fq(2, 1);
    RngStream rng(21);
    std::map<std::uint64_t, int> counts;
    const int draws = 20000;
    for (int i = 0; i < draws; ++i) {
        Matrix lifted = lift_to_prime_power(Matrix(f2, 1, 1, {1}), 2, rng);
        ++counts[lifted.at(0, 0)];
    }
    REQUIRE(counts.size() == 2);
    CHECK(counts.count(1) == 1);
    CHECK(counts.count(3) == 1);
    CHECK(std::abs(counts[1] - 10000) < 450);
}

TEST_CASE("lift at r = 1 returns the residue unchanged") {
    auto f3 = make_fq(3, 1);
    RngStream rng(33);
    Matrix residue = sample_gl_field_chain(f3, 3, rng);
    Matrix lifted = lift_to_prime_power(residue, 1, rng);
    CHECK(lifted.entries() == residue.entries());
    CHECK(lifted.ring().size() == 3);
}

TEST_CASE("lift rejects non-invertible residues") {
    auto f2 = make_fq(2, 1);
    RngStream rng(1);
    CHECK_THROWS_AS(lift_to_prime_power(Matrix(f2, 2, 2), 2, rng), std::invalid_argument);
}

TEST_CASE("composed chain + lift visits GL_2(Z_4) uniformly") {
    auto f2 = make_fq(2, 1);
    RngStream rng(555);
    std::map<std::vector<std::uint64_t>, int> counts;
    const int draws = 960000;
    for (int i = 0; i < draws; ++i) {
        Matrix residue = sample_gl_field_chain(f2, 2, rng);
        ++counts[lift_to_prime_power(residue, 2, rng).entries()];
    }
    REQUIRE(counts.size() == 96);
    for (const auto& [key, count] : counts) CHECK(std::abs(count - 10000) < 400);
}

TEST_CASE("Haar over GL_1(Z_6) is uniform on the units") {
    auto z6 = make_zm(6);
    RngStream rng(66);
    std::map<std::uint64_t, int> counts;
    for (int i = 0; i < 20000; ++i) ++counts[sample_gl_zm(z6, 1, rng).at(0, 0)];
    REQUIRE(counts.size() == 2);
    CHECK(counts.count(1) == 1);
    CHECK(counts.count(5) == 1);
}

TEST_CASE("prime modulus degenerates to the field chain sampler") {
    auto z5 = make_zm(5);
    RngStream a(12), b(12);
    for (int i = 0; i < 50; ++i) {
        Matrix via_crt = sample_gl_zm(z5, 3, a);
        Matrix via_chain = sample_gl_field_chain(z5, 3, b);
        CHECK(via_crt.entries() == via_chain.entries());
    }
}

TEST_CASE("Haar over GL_2(Z_6) is uniform on all 288 elements") {
    auto z6 = make_zm(6);
    RngStream rng(2880);
    std::map<std::vector<std::uint64_t>, int> counts;
    const int draws = 288000;
    for (int i = 0; i < draws; ++i) ++counts[sample_gl_zm(z6, 2, rng).entries()];
    REQUIRE(counts.size() == 288);
    for (const auto& [key, count] : counts) CHECK(std::abs(count - 1000) < 130);
}

TEST_CASE("local sampler over F_2[t]/(t^2) hits exactly the units at n = 1") {
    auto ring = LocalRing::truncated_poly(make_fq(2, 1), 2);
    RngStream rng(4);
    std::map<std::uint64_t, int> counts;
    for (int i = 0; i < 20000; ++i) ++counts[sample_gl_local(ring, 1, rng).at(0, 0)];
    REQUIRE(counts.size() == 2);
    CHECK(counts.count(1) == 1);  // 1
    CHECK(counts.count(3) == 1);  // 1 + t
}

TEST_CASE("local sampler output is always invertible") {
    auto ring = LocalRing::truncated_poly(make_fq(2, 1), 2);
    RngStream rng(10);
    for (int i = 0; i < 10000; ++i) CHECK(is_invertible(sample_gl_local(ring, 2, rng)));
}

TEST_CASE("local sampler over Z_4 matches the lift sampler in law") {
    auto local = LocalRing::prime_power(2, 2);
    auto f2 = make_fq(2, 1);
    RngStream r1(71), r2(72);
    const int draws = 1000000;
    std::vector<Matrix> via_local, via_lift;
    via_local.reserve(draws);
    via_lift.reserve(draws);
    for (int i = 0; i < draws; ++i) via_local.push_back(sample_gl_local(local, 2, r1));
    for (int i = 0; i < draws; ++i) {
        via_lift.push_back(lift_to_prime_power(sample_gl_field_chain(f2, 2, r2), 2, r2));
    }
    auto result =
        chi_squared_two_sample(empirical_dist(batch_of(local, 2, std::move(via_local))),
                               empirical_dist(batch_of(make_zm(4), 2, std::move(via_lift))));
    CHECK(result.cells == 96);
    CHECK(result.p_value > 0.001);
}

TEST_CASE("corner batches at s = n are full Haar matrices") {
    auto z6 = make_zm(6);
    RngStream rng(3);
    SampleBatch batch = sample_truncated(z6, 2, 2, 500, rng);
    for (const auto& corner : batch.corners) {
        CHECK(is_invertible(Matrix(z6, 2, 2, corner)));
    }
}

TEST_CASE("corner frequency over GL_2(F_2) at s = 1") {
    auto z2 = make_zm(2);
    RngStream rng(600);
    SampleBatch batch = sample_truncated(z2, 2, 1, 600000, rng);
    std::uint64_t ones = 0;
    for (const auto& corner : batch.corners) ones += corner[0];
    double freq = static_cast<double>(ones) / static_cast<double>(batch.corners.size());
    CHECK(std::fabs(freq - 2.0 / 3.0) < 0.002);
}

TEST_CASE("corner batches are reproducible from the seed") {
    auto z12 = make_zm(12);
    RngStream a(9001), b(9001);
    SampleBatch ba = sample_truncated(z12, 6, 2, 2000, a);
    SampleBatch bb = sample_truncated(z12, 6, 2, 2000, b);
    CHECK(ba.corners == bb.corners);
    std::ostringstream sa, sb;
    write_sample_batch(sa, ba);
    write_sample_batch(sb, bb);
    CHECK(sa.str() == sb.str());
}

TEST_CASE("rejection samplers fail cleanly at the retry cap") {
    RngStream rng(1);
    CHECK_THROWS_AS(sample_gl_field_reject(make_fq(2, 1), 4, rng, 0), SamplingError);
    CHECK_THROWS_AS(sample_gl_nonzero_det(make_zm(4), 2, rng, 0), SamplingError);
}

TEST_CASE("corner batch argument validation") {
    auto z6 = make_zm(6);
    RngStream rng(1);
    CHECK_THROWS_AS(sample_truncated(z6, 2, 3, 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_truncated(z6, 2, 0, 10, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_truncated(z6, 2, 2, 0, rng), std::invalid_argument);
}

TEST_CASE("streamed corners have the same law as corners of full draws") {
    auto z4 = make_zm(4);
    RngStream r1(31), r2(32);
    const int draws = 200000;
    SampleBatch streamed = sample_truncated(z4, 3, 1, draws, r1);
    std::vector<Matrix> full;
    full.reserve(draws);
    for (int i = 0; i < draws; ++i) full.push_back(truncate(sample_gl_zm(z4, 3, r2), 1));
    SampleBatch full_batch;
    full_batch.ring = z4;
    full_batch.n = 3;
    full_batch.s = 1;
    full_batch.rng_version = RngStream::version();
    for (auto& m : full) full_batch.corners.push_back(m.entries());
    auto result = chi_squared_two_sample(empirical_dist(streamed), empirical_dist(full_batch));
    CHECK(result.p_value > 0.001);
}

TEST_SUITE_END();
