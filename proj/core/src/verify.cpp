#include "haarmod/verify.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "haarmod/counting.hpp"
#include "haarmod/json_io.hpp"
#include "haarmod/matrix.hpp"
#include "haarmod/rng.hpp"
#include "haarmod/sampling.hpp"
#include "haarmod/stats.hpp"

namespace haarmod::verify {

namespace {

class Suite {
public:
    explicit Suite(std::string name) : name_(std::move(name)) {}

    void check(const std::string& check_name, const std::function<std::string()>& fn) {
        Check c;
        c.suite = name_;
        c.name = check_name;
        try {
            c.detail = fn();  // empty string means pass
            c.passed = c.detail.empty();
        } catch (const std::exception& e) {
            c.passed = false;
            c.detail = std::string("exception: ") + e.what();
        }
        checks_.push_back(std::move(c));
    }

    std::vector<Check> take() { return std::move(checks_); }

private:
    std::string name_;
    std::vector<Check> checks_;
};

std::string fail(const std::string& msg) {
    return msg;
}

template <typename T>
std::string expect_eq(const T& got, const T& want, const std::string& what) {
    if (got == want) return {};
    std::ostringstream os;
    os << what << ": got " << got << ", want " << want;
    return os.str();
}

SampleBatch batch_of_matrices(const RingPtr& ring, std::uint32_t n, std::uint64_t seed,
                              std::vector<Matrix> draws) {
    SampleBatch b;
    b.ring = ring;
    b.n = n;
    b.s = n;
    b.seed = seed;
    b.rng_version = RngStream::version();
    b.corners.reserve(draws.size());
    for (auto& m : draws) b.corners.push_back(m.entries());
    return b;
}

// ---------------------------------------------------------------------------

std::vector<Check> rings_suite(std::uint64_t seed) {
    Suite suite("rings");

    suite.check("crt_roundtrip_exhaustive_m_le_1000", [] {
        for (std::uint64_t m = 2; m <= 1000; ++m) {
            ZmRing ring(m);
            for (std::uint64_t x = 0; x < m; ++x) {
                if (ring.crt_combine(ring.crt_split(x)) != x)
                    return fail("roundtrip failed at m=" + std::to_string(m) +
                                " x=" + std::to_string(x));
            }
        }
        return std::string{};
    });

    suite.check("crt_roundtrip_random_large_moduli", [seed] {
        RngStream rng = RngStream(seed).split("verify/rings/crt-roundtrip");
        for (std::uint64_t m : {123456ull, 720720ull, 9699690ull, 2147483646ull}) {
            ZmRing ring(m);
            for (int i = 0; i < 10000; ++i) {
                std::uint64_t x = rng.below(m);
                if (ring.crt_combine(ring.crt_split(x)) != x)
                    return fail("roundtrip failed at m=" + std::to_string(m) +
                                " x=" + std::to_string(x));
            }
        }
        return std::string{};
    });

    suite.check("crt_split_is_multiplicative", [seed] {
        RngStream rng = RngStream(seed).split("verify/rings/crt-hom");
        for (std::uint64_t m : {6ull, 12ull, 360ull, 9699690ull, 2147483646ull}) {
            ZmRing ring(m);
            const auto& factors = ring.factorization().factors;
            for (int i = 0; i < 10000; ++i) {
                std::uint64_t x = rng.below(m), y = rng.below(m);
                auto lhs = ring.crt_split(ring.mul(x, y));
                auto sx = ring.crt_split(x), sy = ring.crt_split(y);
                for (std::size_t f = 0; f < factors.size(); ++f) {
                    std::uint64_t q = pow_u64_checked(factors[f].prime, factors[f].exponent, m);
                    if (lhs[f] != sx[f] * sy[f] % q)
                        return fail("split(x*y) != split(x)*split(y) at m=" + std::to_string(m));
                }
            }
        }
        return std::string{};
    });

    suite.check("unit_iff_all_components_unit_m_le_1000", [] {
        for (std::uint64_t m = 2; m <= 1000; ++m) {
            ZmRing ring(m);
            const auto& factors = ring.factorization().factors;
            for (std::uint64_t x = 0; x < m; ++x) {
                auto parts = ring.crt_split(x);
                bool all_units = true;
                for (std::size_t f = 0; f < factors.size(); ++f) {
                    std::uint64_t q =
                        pow_u64_checked(factors[f].prime, factors[f].exponent, m);
                    all_units = all_units && gcd_u64(parts[f], q) == 1;
                }
                if (ring.is_unit(x) != all_units)
                    return fail("unit criterion mismatch at m=" + std::to_string(m) +
                                " x=" + std::to_string(x));
            }
        }
        return std::string{};
    });

    suite.check("fq_nonzero_elements_form_group_q_le_81", [seed] {
        RngStream rng = RngStream(seed).split("verify/rings/fq-group");
        for (std::uint64_t q = 2; q <= 81; ++q) {
            auto pp = prime_power_decompose(q);
            if (pp.exponent == 0) continue;
            // the built-in polynomial table stops at 64; supply x^4 + x + 2
            FqField field = q == 81 ? FqField(3, 4, {2, 1, 0, 0, 1})
                                    : FqField(pp.prime, pp.exponent);
            // closure and inverses, exhaustive
            for (std::uint64_t a = 1; a < q; ++a) {
                if (field.mul(a, field.inv(a)) != 1)
                    return fail("inv failed in F_" + std::to_string(q));
                for (std::uint64_t b = 1; b < q; ++b) {
                    if (field.mul(a, b) == 0)
                        return fail("zero divisor in F_" + std::to_string(q));
                }
            }
            // associativity spot check
            for (int i = 0; i < 200; ++i) {
                std::uint64_t a = rng.below(q), b = rng.below(q), c = rng.below(q);
                if (field.mul(field.mul(a, b), c) != field.mul(a, field.mul(b, c)))
                    return fail("associativity failed in F_" + std::to_string(q));
            }
        }
        return std::string{};
    });

    suite.check("local_unit_iff_residue_nonzero_size_le_256", [] {
        std::vector<std::shared_ptr<const LocalRing>> rings;
        for (auto [p, r] : {std::pair<std::uint64_t, std::uint32_t>{2, 8}, {3, 5}, {5, 3},
                            {7, 2}, {11, 2}, {13, 2}}) {
            for (std::uint32_t e = 1; e <= r; ++e) rings.push_back(LocalRing::prime_power(p, e));
        }
        for (auto [p, n, kmax] : {std::tuple<std::uint64_t, std::uint32_t, std::uint32_t>{2, 1, 8},
                                  {2, 2, 4}, {2, 3, 2}, {2, 4, 2}, {3, 1, 5}, {3, 2, 2},
                                  {5, 1, 3}, {5, 2, 1}, {7, 1, 2}, {13, 1, 2}}) {
            auto base = make_fq(p, n);
            for (std::uint32_t k = 1; k <= kmax; ++k)
                rings.push_back(LocalRing::truncated_poly(base, k));
        }
        for (const auto& ring : rings) {
            if (ring->size() > 256) continue;
            for (std::uint64_t a = 0; a < ring->size(); ++a) {
                bool has_inverse_in_units = ring->residue(a) != 0;
                if (ring->is_unit(a) != has_inverse_in_units)
                    return fail("unit criterion mismatch in " + ring->name());
            }
        }
        return std::string{};
    });

    return suite.take();
}

// ---------------------------------------------------------------------------

std::vector<Check> matrices_suite(std::uint64_t seed) {
    Suite suite("matrices");

    auto test_rings = [] {
        return std::vector<RingPtr>{make_zm(2),
                                    make_zm(4),
                                    make_zm(6),
                                    make_zm(12),
                                    make_fq(2, 2),
                                    LocalRing::truncated_poly(make_fq(2, 1), 2)};
    };

    suite.check("det_is_multiplicative", [seed, test_rings] {
        RngStream rng = RngStream(seed).split("verify/matrices/det-mult");
        for (const auto& ring : test_rings()) {
            for (int trial = 0; trial < 10000; ++trial) {
                std::uint32_t n = 1 + static_cast<std::uint32_t>(rng.below(5));
                Matrix a = sample_uniform_matrix(ring, n, n, rng);
                Matrix b = sample_uniform_matrix(ring, n, n, rng);
                if (determinant(mul(a, b)) != ring->mul(determinant(a), determinant(b)))
                    return fail("det(AB) != det(A)det(B) over " + ring->name());
            }
        }
        return std::string{};
    });

    suite.check("invertible_iff_right_inverse_exists_n2", [] {
        for (std::uint64_t m : {4ull, 6ull}) {
            auto ring = make_zm(m);
            const Matrix id = Matrix::identity(ring, 2);
            std::uint64_t total = m * m * m * m;
            for (std::uint64_t ia = 0; ia < total; ++ia) {
                std::uint64_t v = ia;
                std::vector<std::uint64_t> ea(4);
                for (auto& e : ea) {
                    e = v % m;
                    v /= m;
                }
                Matrix a(ring, 2, 2, ea);
                bool found = false;
                for (std::uint64_t ib = 0; ib < total && !found; ++ib) {
                    std::uint64_t w = ib;
                    std::vector<std::uint64_t> eb(4);
                    for (auto& e : eb) {
                        e = w % m;
                        w /= m;
                    }
                    found = mul(a, Matrix(ring, 2, 2, eb)) == id;
                }
                if (found != is_invertible(a))
                    return fail("inverse-search mismatch over Z_" + std::to_string(m));
            }
        }
        return std::string{};
    });

    suite.check("residue_criterion_agrees_with_unit_det", [] {
        for (auto [p, r] : {std::pair<std::uint64_t, std::uint32_t>{2, 2}, {2, 3}, {3, 2}}) {
            auto ring = make_zm(pow_u64_checked(p, r, kMaxRingSize - 1));
            for (std::uint32_t n = 1; n <= 2; ++n) {
                std::uint64_t total = 1;
                for (std::uint32_t i = 0; i < n * n; ++i) total *= ring->size();
                for (std::uint64_t idx = 0; idx < total; ++idx) {
                    std::uint64_t v = idx;
                    std::vector<std::uint64_t> entries(std::size_t{n} * n);
                    for (auto& e : entries) {
                        e = v % ring->size();
                        v /= ring->size();
                    }
                    Matrix a(ring, n, n, entries);
                    if (is_invertible(a) != is_invertible_via_det(a))
                        return fail("criterion mismatch over " + ring->name());
                }
            }
        }
        return std::string{};
    });

    suite.check("truncate_commutes_with_crt_combine", [seed] {
        RngStream rng = RngStream(seed).split("verify/matrices/truncate-crt");
        for (std::uint64_t m : {12ull, 60ull}) {
            auto ring = make_zm(m);
            for (int trial = 0; trial < 500; ++trial) {
                Matrix a = sample_uniform_matrix(ring, 4, 4, rng);
                auto parts = crt_split_matrix(a);
                for (std::uint32_t s = 1; s <= 4; ++s) {
                    std::vector<Matrix> truncated;
                    for (const auto& part : parts) truncated.push_back(truncate(part, s));
                    if (!(truncate(crt_combine_matrix(parts, ring), s) ==
                          crt_combine_matrix(truncated, ring)))
                        return fail("corner/CRT commutation failed at m=" + std::to_string(m));
                }
            }
        }
        return std::string{};
    });

    return suite.take();
}

// ---------------------------------------------------------------------------

std::vector<Check> sampling_suite(std::uint64_t seed) {
    Suite suite("sampling");

    suite.check("chain_sampler_uniform_on_full_group", [seed] {
        struct Case {
            std::uint64_t q;
            std::uint32_t n;
            std::uint64_t draws;
        };
        for (auto [q, n, draws] : {Case{2, 2, 20000}, Case{3, 2, 20000}, Case{2, 3, 40000}}) {
            auto field = make_fq(q, 1);
            ExactDist law = exact_corner_dist(field, n, n, DistMethod::Enumerate);
            RngStream rng = RngStream(seed).split("verify/sampling/chain/q=" + std::to_string(q) +
                                                  "/n=" + std::to_string(n));
            std::vector<Matrix> draws_v;
            draws_v.reserve(draws);
            for (std::uint64_t i = 0; i < draws; ++i)
                draws_v.push_back(sample_gl_field_chain(field, n, rng));
            auto emp = empirical_dist(batch_of_matrices(field, n, seed, std::move(draws_v)));
            auto result = chi_squared_test(emp, law);
            if (result.p_value <= 0.001) {
                std::ostringstream os;
                os << "chain sampler rejected at q=" << q << " n=" << n
                   << " (p=" << result.p_value << ")";
                return fail(os.str());
            }
        }
        return std::string{};
    });

    suite.check("lift_fiber_parts_uniform_given_residue", [seed] {
        // (p, r, n) = (2, 2, 2): for every residue class, the 16 possible
        // ideal parts must be uniform.
        auto field = make_zm(2);
        RngStream rng = RngStream(seed).split("verify/sampling/lift-fiber");
        std::map<std::vector<std::uint64_t>, std::map<std::uint64_t, std::uint64_t>> by_residue;
        const int draws = 100000;
        for (int i = 0; i < draws; ++i) {
            Matrix residue = sample_gl_field_chain(field, 2, rng);
            Matrix lifted = lift_to_prime_power(residue, 2, rng);
            std::uint64_t part_code = 0;
            for (std::size_t c = 0; c < 4; ++c) {
                part_code = part_code * 2 + (lifted.entries()[c] - residue.entries()[c]) / 2;
            }
            by_residue[residue.entries()][part_code] += 1;
        }
        for (const auto& [residue, parts] : by_residue) {
            double total = 0;
            for (const auto& [code, count] : parts) total += static_cast<double>(count);
            double expected = total / 16.0;
            if (expected < 5) return fail("too few draws per residue class");
            double stat = 0;
            for (std::uint64_t code = 0; code < 16; ++code) {
                auto it = parts.find(code);
                double obs = it == parts.end() ? 0.0 : static_cast<double>(it->second);
                stat += (obs - expected) * (obs - expected) / expected;
            }
            double p = chi_squared_p_value(stat, 15);
            if (p <= 0.001) {
                std::ostringstream os;
                os << "ideal parts non-uniform for a residue class (p=" << p << ")";
                return fail(os.str());
            }
        }
        return std::string{};
    });

    suite.check("crt_sampler_marginals_match_components", [seed] {
        auto ring = make_zm(12);
        RngStream rng = RngStream(seed).split("verify/sampling/crt-marginals");
        const int draws = 100000;
        std::vector<Matrix> mod4, mod3;
        mod4.reserve(draws);
        mod3.reserve(draws);
        for (int i = 0; i < draws; ++i) {
            Matrix a = sample_gl_zm(ring, 2, rng);
            auto parts = crt_split_matrix(a);
            mod4.push_back(parts[0]);
            mod3.push_back(parts[1]);
        }
        auto law4 = exact_corner_dist(make_zm(4), 2, 2, DistMethod::Enumerate);
        auto law3 = exact_corner_dist(make_zm(3), 2, 2, DistMethod::Enumerate);
        auto emp4 = empirical_dist(batch_of_matrices(make_zm(4), 2, seed, std::move(mod4)));
        auto emp3 = empirical_dist(batch_of_matrices(make_zm(3), 2, seed, std::move(mod3)));
        auto r4 = chi_squared_test(emp4, law4);
        auto r3 = chi_squared_test(emp3, law3);
        if (r4.p_value <= 0.001 || r3.p_value <= 0.001) {
            std::ostringstream os;
            os << "marginal mismatch (p mod4=" << r4.p_value << ", p mod3=" << r3.p_value << ")";
            return fail(os.str());
        }
        return std::string{};
    });

    suite.check("chain_and_reject_samplers_agree", [seed] {
        auto field = make_zm(3);
        RngStream rng1 = RngStream(seed).split("verify/sampling/chain-vs-reject/chain");
        RngStream rng2 = RngStream(seed).split("verify/sampling/chain-vs-reject/reject");
        const int draws = 20000;
        std::vector<Matrix> chain, reject;
        for (int i = 0; i < draws; ++i) chain.push_back(sample_gl_field_chain(field, 2, rng1));
        for (int i = 0; i < draws; ++i) reject.push_back(sample_gl_field_reject(field, 2, rng2));
        auto ec = empirical_dist(batch_of_matrices(field, 2, seed, std::move(chain)));
        auto er = empirical_dist(batch_of_matrices(field, 2, seed, std::move(reject)));
        auto result = chi_squared_two_sample(ec, er);
        if (result.p_value <= 0.001) {
            std::ostringstream os;
            os << "chain and reject samplers differ (p=" << result.p_value << ")";
            return fail(os.str());
        }
        return std::string{};
    });

    suite.check("equal_seeds_give_identical_batches", [seed] {
        auto ring = make_zm(12);
        RngStream a(seed + 42), b(seed + 42);
        SampleBatch ba = sample_truncated(ring, 4, 2, 1000, a);
        SampleBatch bb = sample_truncated(ring, 4, 2, 1000, b);
        std::ostringstream sa, sb;
        write_sample_batch(sa, ba);
        write_sample_batch(sb, bb);
        if (sa.str() != sb.str()) return fail("equal-seed batches serialize differently");
        return std::string{};
    });

    return suite.take();
}

// ---------------------------------------------------------------------------

std::vector<Check> counting_suite(std::uint64_t seed) {
    Suite suite("counting");
    (void)seed;

    suite.check("enumeration_matches_closed_forms", [] {
        std::vector<std::pair<RingPtr, std::uint32_t>> cases = {
            {make_zm(2), 1},  {make_zm(2), 2},  {make_zm(2), 3}, {make_zm(3), 2},
            {make_zm(4), 2},  {make_zm(6), 2},  {make_fq(2, 2), 2},
            {LocalRing::truncated_poly(make_fq(2, 1), 2), 2},
        };
        for (const auto& [ring, n] : cases) {
            BigCount counted = 0;
            for_each_gl(ring, n, [&](const Matrix&) { counted += 1; });
            if (counted != order_gl(*ring, n))
                return fail("enumeration != closed form over " + ring->name() +
                            " at n=" + std::to_string(n));
        }
        return std::string{};
    });

    suite.check("fiber_counts_match_formula_and_bounds", [] {
        for (std::uint64_t p : {2ull, 3ull}) {
            auto field = make_zm(p);
            for (std::uint32_t n = 1; n <= 3; ++n) {
                for (std::uint32_t s = 1; s <= n; ++s) {
                    std::map<std::vector<std::uint64_t>, BigCount> fibers;
                    for_each_gl(field, n,
                                [&](const Matrix& m) { fibers[truncate(m, s).entries()] += 1; });
                    auto bounds = corner_fiber_bounds(p, n, s);
                    BigCount formula = corner_fiber_count_invertible(p, n, s);
                    // every corner of M_s, including those with no preimage
                    std::uint64_t corners = 1;
                    for (std::uint32_t i = 0; i < s * s; ++i) corners *= p;
                    for (std::uint64_t idx = 0; idx < corners; ++idx) {
                        std::uint64_t v = idx;
                        std::vector<std::uint64_t> key(std::size_t{s} * s);
                        for (auto& e : key) {
                            e = v % p;
                            v /= p;
                        }
                        auto it = fibers.find(key);
                        BigCount count = it == fibers.end() ? BigCount(0) : it->second;
                        if (count < bounds.lower || count > bounds.upper)
                            return fail("fiber count outside bounds at p=" + std::to_string(p) +
                                        " n=" + std::to_string(n) + " s=" + std::to_string(s));
                        Matrix w(field, s, s, key);
                        if (is_invertible(w) && count != formula)
                            return fail("invertible fiber != formula at p=" + std::to_string(p) +
                                        " n=" + std::to_string(n) + " s=" + std::to_string(s));
                    }
                }
            }
        }
        return std::string{};
    });

    suite.check("probability_ratios_within_estimate_bounds", [] {
        struct Case {
            std::uint32_t n, s;
        };
        for (auto [n, s] : {Case{2, 1}, Case{3, 1}, Case{4, 1}, Case{3, 2}}) {
            auto field = make_zm(2);
            ExactDist dist = exact_corner_dist(field, n, s, DistMethod::Enumerate);
            auto bounds = corner_fiber_bounds(2, n, s);
            for (const auto& [k1, p1] : dist.mass) {
                for (const auto& [k2, p2] : dist.mass) {
                    BigRational ratio = p1 / p2;
                    ratio.canonicalize();
                    if (ratio < bounds.ratio_lower)
                        return fail("ratio below bound at n=" + std::to_string(n) +
                                    " s=" + std::to_string(s));
                    if (bounds.ratio_upper && ratio > *bounds.ratio_upper)
                        return fail("ratio above bound at n=" + std::to_string(n) +
                                    " s=" + std::to_string(s));
                }
            }
        }
        return std::string{};
    });

    suite.check("tv_closed_form_m2_s1_decreasing_to_zero", [] {
        auto ring = make_zm(2);
        BigRational prev;
        bool have_prev = false;
        for (std::uint32_t n = 2; n <= 10; ++n) {
            BigRational tv = tv_to_uniform(exact_corner_dist(ring, n, 1, DistMethod::Formula));
            BigCount denom = (BigCount(1) << n) - 1;
            denom *= 2;
            BigRational expected(BigCount(1), denom);
            expected.canonicalize();
            if (tv != expected) return fail("tv != 1/(2(2^n-1)) at n=" + std::to_string(n));
            if (have_prev && tv >= prev) return fail("tv not strictly decreasing");
            prev = tv;
            have_prev = true;
        }
        if (prev >= BigRational(1, 1000)) return fail("final tv not below 1e-3");
        return std::string{};
    });

    suite.check("exact_dist_masses_sum_to_one", [] {
        std::vector<ExactDist> dists;
        dists.push_back(exact_corner_dist(make_zm(2), 2, 1, DistMethod::Enumerate));
        dists.push_back(exact_corner_dist(make_zm(4), 2, 1, DistMethod::Enumerate));
        dists.push_back(exact_corner_dist(make_zm(6), 2, 2, DistMethod::Enumerate));
        dists.push_back(exact_corner_dist(make_fq(2, 2), 2, 1, DistMethod::Formula));
        dists.push_back(exact_corner_dist(make_zm(3), 3, 2, DistMethod::Formula));
        for (auto& d : dists) d.validate();
        return std::string{};
    });

    return suite.take();
}

// ---------------------------------------------------------------------------

std::vector<Check> stats_suite(std::uint64_t seed) {
    Suite suite("stats");

    suite.check("tv_of_batch_against_own_frequencies_is_zero", [seed] {
        auto ring = make_zm(6);
        RngStream rng = RngStream(seed).split("verify/stats/tv-self");
        SampleBatch batch = sample_truncated(ring, 3, 1, 5000, rng);
        EmpiricalDist emp = empirical_dist(batch);
        ExactDist self;
        self.ring = emp.ring;
        self.s = emp.s;
        for (const auto& [key, count] : emp.counts) {
            BigRational f(BigCount(static_cast<unsigned long>(count)),
                          BigCount(static_cast<unsigned long>(emp.total)));
            f.canonicalize();
            self.mass.emplace(key, f);
        }
        if (tv_estimate(emp, self) != 0.0) return fail("tv against own frequencies nonzero");
        return std::string{};
    });

    suite.check("sweep_output_independent_of_threads_and_rerun", [seed] {
        auto ring = make_zm(6);
        auto a = convergence_sweep(ring, 1, {2, 3, 4}, SweepMode::MonteCarlo, 10000, seed, 1);
        auto b = convergence_sweep(ring, 1, {2, 3, 4}, SweepMode::MonteCarlo, 10000, seed, 3);
        auto c = convergence_sweep(ring, 1, {2, 3, 4}, SweepMode::MonteCarlo, 10000, seed, 1);
        if (sweep_to_csv(a) != sweep_to_csv(b)) return fail("sweep differs across thread counts");
        if (sweep_to_csv(a) != sweep_to_csv(c)) return fail("sweep differs across reruns");
        return std::string{};
    });

    suite.check("wrong_determinant_criterion_sampler_rejected", [seed] {
        auto ring = make_zm(4);
        ExactDist law = exact_corner_dist(ring, 2, 2, DistMethod::Enumerate);
        RngStream rng = RngStream(seed).split("verify/stats/negative-control");
        std::vector<Matrix> draws;
        draws.reserve(100000);
        for (int i = 0; i < 100000; ++i)
            draws.push_back(sample_gl_nonzero_det(ring, 2, rng));
        auto emp = empirical_dist(batch_of_matrices(ring, 2, seed, std::move(draws)));
        auto result = chi_squared_test(emp, law);
        if (!(result.p_value < 1e-6)) {
            std::ostringstream os;
            os << "negative control not rejected (p=" << result.p_value << ")";
            return fail(os.str());
        }
        return std::string{};
    });

    suite.check("p_values_match_published_tables", [] {
        struct Row {
            std::uint64_t df;
            double x;
            double q;
        };
        // chi-squared upper tail reference values
        const Row rows[] = {
            {1, 3.841, 0.0500136838}, {5, 11.070, 0.0500096186}, {15, 24.996, 0.0499971788},
            {1, 1.0, 0.3173105079},   {5, 5.0, 0.4158801870},    {15, 15.0, 0.4514172112},
        };
        for (const Row& row : rows) {
            double got = chi_squared_p_value(row.x, row.df);
            if (std::fabs(got - row.q) > 1e-3) {
                std::ostringstream os;
                os << "p-value off at df=" << row.df << " x=" << row.x << ": got " << got;
                return fail(os.str());
            }
        }
        return std::string{};
    });

    return suite.take();
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"rings", "matrices", "sampling", "counting", "stats", "all"};
}

std::vector<Check> run_suite(const std::string& suite, std::uint64_t seed) {
    if (suite == "rings") return rings_suite(seed);
    if (suite == "matrices") return matrices_suite(seed);
    if (suite == "sampling") return sampling_suite(seed);
    if (suite == "counting") return counting_suite(seed);
    if (suite == "stats") return stats_suite(seed);
    if (suite == "all") {
        std::vector<Check> all;
        for (const auto& name : {"rings", "matrices", "sampling", "counting", "stats"}) {
            auto checks = run_suite(name, seed);
            all.insert(all.end(), checks.begin(), checks.end());
        }
        return all;
    }
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
}

}  // namespace haarmod::verify
