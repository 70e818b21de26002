#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "haarmod/matrix.hpp"

namespace haarmod {

/// Exact non-negative integer count; never floating point.
using BigCount = mpz_class;
/// Exact probability; num/den in lowest terms.
using BigRational = mpq_class;

/// |GL_n(F_q)| = prod_{j<n} (q^n - q^j). q must be a prime power.
BigCount order_gl_field(std::uint64_t q, std::uint32_t n);

/// |GL_n(Z_{p^r})| = p^{(r-1) n^2} |GL_n(F_p)|: each invertible residue
/// matrix has the same number of lifts.
BigCount order_gl_prime_power(std::uint64_t p, std::uint32_t r, std::uint32_t n);

/// |GL_n(Z_m)| as a product over the prime-power components.
BigCount order_gl_zm(std::uint64_t m, std::uint32_t n);

/// |GL_n| over any supported ring.
BigCount order_gl(const Ring& ring, std::uint32_t n);

/// |M_{rows x cols}(ring)| = |ring|^(rows cols).
BigCount order_m(const Ring& ring, std::uint32_t rows, std::uint32_t cols);

/// Number of X in GL_n(F_q) whose upper-left s x s corner equals the given
/// invertible corner: q^{s(n-s)} prod_{j<n-s} (q^n - q^{s+j}). The count is
/// the same for every invertible corner; the corner argument is checked for
/// invertibility (the formula does not cover singular corners).
BigCount corner_fiber_count_invertible(std::uint64_t q, std::uint32_t n, std::uint32_t s,
                                       const Matrix& corner);
/// Formula-only variant, no corner check.
BigCount corner_fiber_count_invertible(std::uint64_t q, std::uint32_t n, std::uint32_t s);

/// Two-sided fiber bounds over Z_{p^r} and the probability-ratio bounds
/// they imply. For any two corners W1, W2 of nonzero probability,
/// P(corner = W1) / P(corner = W2) lies in [ratio_lower, ratio_upper].
/// ratio_upper is absent (unbounded) exactly when ratio_lower is 0, which
/// happens when 2s > n; otherwise ratio_upper = 1 / ratio_lower.
struct BoundsReport {
    std::uint64_t p = 0;
    std::uint32_t r = 1;
    std::uint32_t n = 0;
    std::uint32_t s = 0;
    BigCount lower;
    BigCount upper;
    BigRational ratio_lower;
    std::optional<BigRational> ratio_upper;
};

BoundsReport corner_fiber_bounds(std::uint64_t p, std::uint32_t n, std::uint32_t s,
                                 std::uint32_t r = 1);

/// Hard cap on enumeration workloads, in ring-element tuples.
inline constexpr std::uint64_t kEnumerationCap = 100'000'000;

/// Visit every invertible n x n matrix over the ring exactly once, in
/// increasing order of the row-major entry encoding. Throws TooLargeError
/// when |ring|^(n^2) exceeds kEnumerationCap. The optional progress
/// callback receives a fraction in [0, 1].
void for_each_gl(const RingPtr& ring, std::uint32_t n,
                 const std::function<void(const Matrix&)>& fn,
                 const std::function<void(double)>& progress = {});

/// Materialized enumeration for small cases.
std::vector<Matrix> enumerate_gl(const RingPtr& ring, std::uint32_t n);

enum class DistMethod { Enumerate, Formula };

/// Exact law of the s x s corner of a Haar draw from GL_n(ring).
///
/// `mass` holds per-corner probabilities (row-major entry keys). The
/// Formula method lists every invertible corner individually and reports
/// the remaining mass as one aggregated class of `residual_corners`
/// corners (no per-corner formula exists for singular corners); the
/// Enumerate method always has an empty residual.
struct ExactDist {
    RingPtr ring;
    std::uint32_t s = 0;
    std::map<std::vector<std::uint64_t>, BigRational> mass;
    BigRational residual_mass = 0;
    BigCount residual_corners = 0;

    BigCount corner_space() const;  // |M_s(ring)|
    /// Checks that all masses plus the residual sum to exactly 1.
    void validate() const;
};

ExactDist exact_corner_dist(const RingPtr& ring, std::uint32_t n, std::uint32_t s,
                            DistMethod method,
                            const std::function<void(double)>& progress = {});

/// Exact total variation distance to the uniform law on M_s(ring):
/// (1/2) sum_W |P(W) - 1/|M_s||. Requires per-corner masses, so the
/// residual class may cover at most one corner.
BigRational tv_to_uniform(const ExactDist& dist);

}  // namespace haarmod
