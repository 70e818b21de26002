#include "haarmod/counting.hpp"

#include <stdexcept>

#include "haarmod/errors.hpp"

namespace haarmod {

namespace {

BigCount pow_big(std::uint64_t base, unsigned long exp) {
    BigCount out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), exp);
    return out;
}

}  // namespace

BigCount order_gl_field(std::uint64_t q, std::uint32_t n) {
    if (prime_power_decompose(q).exponent == 0)
        throw std::domain_error("order_gl_field: q must be a prime power");
    if (n < 1) throw std::invalid_argument("order_gl_field: n must be positive");
    BigCount qn = pow_big(q, n);
    BigCount result = 1;
    BigCount qj = 1;
    for (std::uint32_t j = 0; j < n; ++j) {
        result *= qn - qj;
        qj *= static_cast<unsigned long>(q);
    }
    return result;
}

BigCount order_gl_prime_power(std::uint64_t p, std::uint32_t r, std::uint32_t n) {
    if (!is_prime(p)) throw std::invalid_argument("order_gl_prime_power: p must be prime");
    if (r < 1) throw std::invalid_argument("order_gl_prime_power: r must be at least 1");
    return pow_big(p, static_cast<unsigned long>(r - 1) * n * n) * order_gl_field(p, n);
}

BigCount order_gl_zm(std::uint64_t m, std::uint32_t n) {
    Factorization f = factorize(m);
    BigCount result = 1;
    for (const auto& [p, r] : f.factors) result *= order_gl_prime_power(p, r, n);
    return result;
}

BigCount order_gl(const Ring& ring, std::uint32_t n) {
    switch (ring.kind()) {
        case RingKind::Zm:
            return order_gl_zm(static_cast<const ZmRing&>(ring).modulus(), n);
        case RingKind::Fq:
            return order_gl_field(static_cast<const FqField&>(ring).q(), n);
        case RingKind::LocalPrimePower:
        case RingKind::LocalTruncatedPoly: {
            const auto& lr = static_cast<const LocalRing&>(ring);
            std::uint64_t q = lr.residue_field().q();
            return pow_big(q, static_cast<unsigned long>(lr.depth() - 1) * n * n) *
                   order_gl_field(q, n);
        }
    }
    throw std::domain_error("order_gl: unsupported ring kind");
}

BigCount order_m(const Ring& ring, std::uint32_t rows, std::uint32_t cols) {
    return pow_big(ring.size(), static_cast<unsigned long>(rows) * cols);
}

BigCount corner_fiber_count_invertible(std::uint64_t q, std::uint32_t n, std::uint32_t s) {
    if (prime_power_decompose(q).exponent == 0)
        throw std::domain_error("corner_fiber_count_invertible: q must be a prime power");
    if (s < 1 || s > n)
        throw std::invalid_argument("corner_fiber_count_invertible: need 1 <= s <= n");
    // q^{s(n-s)} choices for the right block of the first s rows, times the
    // choices of the remaining n-s rows outside the span of the previous ones
    BigCount result = pow_big(q, static_cast<unsigned long>(s) * (n - s));
    BigCount qn = pow_big(q, n);
    for (std::uint32_t j = 0; j < n - s; ++j) result *= qn - pow_big(q, s + j);
    return result;
}

BigCount corner_fiber_count_invertible(std::uint64_t q, std::uint32_t n, std::uint32_t s,
                                       const Matrix& corner) {
    if (!corner.is_square() || corner.rows() != s)
        throw std::invalid_argument("corner_fiber_count_invertible: corner must be s x s");
    if (corner.ring().size() != q)
        throw std::invalid_argument("corner_fiber_count_invertible: corner ring size != q");
    if (!is_invertible(corner))
        throw std::invalid_argument(
            "corner_fiber_count_invertible: corner must be invertible (no closed form "
            "exists for singular corners, only bounds)");
    return corner_fiber_count_invertible(q, n, s);
}

BoundsReport corner_fiber_bounds(std::uint64_t p, std::uint32_t n, std::uint32_t s,
                                 std::uint32_t r) {
    if (!is_prime(p)) throw std::invalid_argument("corner_fiber_bounds: p must be prime");
    if (s < 1 || s > n) throw std::invalid_argument("corner_fiber_bounds: need 1 <= s <= n");
    if (r < 1) throw std::invalid_argument("corner_fiber_bounds: need r >= 1");
    BoundsReport rep;
    rep.p = p;
    rep.r = r;
    rep.n = n;
    rep.s = s;

    // shared tail: choices of the last n-s rows
    BigCount tail = 1;
    BigCount pn = pow_big(p, n);
    for (std::uint32_t j = 0; j < n - s; ++j) tail *= pn - pow_big(p, s + j);

    BigCount block_all = pow_big(p, static_cast<unsigned long>(s) * (n - s));
    BigCount block_full_rank = 1;  // s x (n-s) blocks of rank s
    BigCount pns = pow_big(p, n - s);
    for (std::uint32_t i = 0; i < s; ++i) block_full_rank *= pns - pow_big(p, i);

    BigCount lift = pow_big(p, static_cast<unsigned long>(r - 1) *
                                   (static_cast<unsigned long>(n) * n -
                                    static_cast<unsigned long>(s) * s));
    rep.lower = block_full_rank * tail * lift;
    rep.upper = block_all * tail * lift;

    rep.ratio_lower = BigRational(block_full_rank, block_all);
    rep.ratio_lower.canonicalize();
    if (rep.ratio_lower != 0) {
        rep.ratio_upper = BigRational(block_all, block_full_rank);
        rep.ratio_upper->canonicalize();
    }
    return rep;
}

void for_each_gl(const RingPtr& ring, std::uint32_t n,
                 const std::function<void(const Matrix&)>& fn,
                 const std::function<void(double)>& progress) {
    if (n < 1) throw std::invalid_argument("for_each_gl: n must be positive");
    const std::uint64_t size = ring->size();
    const std::uint64_t cells = std::uint64_t{n} * n;
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < cells; ++i) {
        if (total > kEnumerationCap / size)
            throw TooLargeError("for_each_gl: |ring|^(n^2) exceeds the enumeration cap");
        total *= size;
    }
    Matrix m(ring, n, n);
    std::vector<std::uint64_t> digits(cells, 0);
    const std::uint64_t report_every = total >= 100 ? total / 100 : 1;
    for (std::uint64_t index = 0; index < total; ++index) {
        if (progress && index % report_every == 0)
            progress(static_cast<double>(index) / static_cast<double>(total));
        if (is_invertible(m)) fn(m);
        // increment the mixed-radix counter in row-major order
        for (std::uint64_t d = cells; d-- > 0;) {
            if (++digits[d] < size) {
                m.set(static_cast<std::uint32_t>(d / n), static_cast<std::uint32_t>(d % n),
                      digits[d]);
                break;
            }
            digits[d] = 0;
            m.set(static_cast<std::uint32_t>(d / n), static_cast<std::uint32_t>(d % n), 0);
        }
    }
    if (progress) progress(1.0);
}

std::vector<Matrix> enumerate_gl(const RingPtr& ring, std::uint32_t n) {
    std::vector<Matrix> out;
    for_each_gl(ring, n, [&](const Matrix& m) { out.push_back(m); });
    return out;
}

BigCount ExactDist::corner_space() const {
    return order_m(*ring, s, s);
}

void ExactDist::validate() const {
    BigRational total = residual_mass;
    for (const auto& [key, value] : mass) total += value;
    if (total != 1) throw std::logic_error("ExactDist: masses do not sum to 1");
    if (residual_corners < 0 || residual_mass < 0)
        throw std::logic_error("ExactDist: negative residual");
}

ExactDist exact_corner_dist(const RingPtr& ring, std::uint32_t n, std::uint32_t s,
                            DistMethod method, const std::function<void(double)>& progress) {
    if (s < 1 || s > n) throw std::invalid_argument("exact_corner_dist: need 1 <= s <= n");
    ExactDist dist;
    dist.ring = ring;
    dist.s = s;
    if (method == DistMethod::Enumerate) {
        std::map<std::vector<std::uint64_t>, BigCount> counts;
        BigCount total = 0;
        for_each_gl(
            ring, n,
            [&](const Matrix& m) {
                counts[truncate(m, s).entries()] += 1;
                total += 1;
            },
            progress);
        for (const auto& [key, count] : counts) {
            BigRational mass(count, total);
            mass.canonicalize();
            dist.mass.emplace(key, std::move(mass));
        }
        return dist;
    }
    if (!ring->is_field())
        throw std::domain_error(
            "exact_corner_dist: the formula method needs a field ring (corner fiber "
            "counts over non-fields come from enumeration)");
    const std::uint64_t q = ring->size();
    BigCount fiber = corner_fiber_count_invertible(q, n, s);
    BigCount group = order_gl_field(q, n);
    BigCount invertible_corners = 0;
    for_each_gl(ring, s, [&](const Matrix& w) {
        BigRational mass(fiber, group);
        mass.canonicalize();
        dist.mass.emplace(w.entries(), std::move(mass));
        invertible_corners += 1;
    });
    BigRational covered(BigCount(fiber * invertible_corners), group);
    covered.canonicalize();
    dist.residual_mass = 1 - covered;
    dist.residual_corners = dist.corner_space() - invertible_corners;
    return dist;
}

BigRational tv_to_uniform(const ExactDist& dist) {
    if (dist.residual_corners > 1)
        throw std::domain_error(
            "tv_to_uniform: aggregated residual class spans several corners; use the "
            "enumerate method for per-corner masses");
    BigCount space = dist.corner_space();
    BigRational u(1, space);
    u.canonicalize();
    BigRational acc = 0;
    for (const auto& [key, mass] : dist.mass) acc += abs(mass - u);
    BigCount zero_corners = space - BigCount(static_cast<unsigned long>(dist.mass.size())) -
                            dist.residual_corners;
    acc += BigRational(zero_corners) * u;
    if (dist.residual_corners == 1) acc += abs(dist.residual_mass - u);
    BigRational tv = acc / 2;
    tv.canonicalize();
    return tv;
}

}  // namespace haarmod
