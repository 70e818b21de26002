#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace haarmod {

struct PrimePower {
    std::uint64_t prime = 0;
    std::uint32_t exponent = 0;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime factorization m = p_1^{r_1} ... p_s^{r_s}, primes strictly
/// increasing, every prime certified by trial division.
struct Factorization {
    std::uint64_t m = 0;
    std::vector<PrimePower> factors;
};

/// Deterministic trial-division factorization. Accepts 2 <= m < 2^63.
/// Throws std::invalid_argument otherwise.
Factorization factorize(std::uint64_t m);

bool is_prime(std::uint64_t n);

/// If q = p^n for a prime p, returns the pair; exponent 0 signals "not a
/// prime power".
PrimePower prime_power_decompose(std::uint64_t q);

/// The reduction Z_v -> Z_u for u | v. Every element of Z_u has exactly
/// v/u preimages. Throws std::invalid_argument when u does not divide v
/// or x is out of range.
std::uint64_t reduce_mod(std::uint64_t x, std::uint64_t v, std::uint64_t u);

enum class RingKind { Zm, Fq, LocalPrimePower, LocalTruncatedPoly };

/// A finite commutative ring with identity.
///
/// Elements are canonical integer indices in [0, size()):
///   Zm                  the residue itself
///   Fq                  sum c_i p^i over the coefficient vector, constant
///                       term least significant
///   LocalPrimePower     the residue in [0, p^r)
///   LocalTruncatedPoly  sum_j idx(c_j) q^j over the F_q digits of the
///                       polynomial in t, constant digit least significant
///
/// All operations are pure; a constructed ring is immutable and safe to
/// share across threads.
class Ring {
public:
    virtual ~Ring() = default;

    virtual RingKind kind() const = 0;
    virtual std::uint64_t size() const = 0;
    virtual std::uint64_t add(std::uint64_t a, std::uint64_t b) const = 0;
    virtual std::uint64_t mul(std::uint64_t a, std::uint64_t b) const = 0;
    virtual std::uint64_t neg(std::uint64_t a) const = 0;
    virtual std::uint64_t one() const = 0;
    virtual bool is_unit(std::uint64_t a) const = 0;
    virtual bool is_field() const = 0;

    /// Multiplicative inverse. Only defined on fields; throws
    /// std::domain_error for 0 or on a non-field ring.
    virtual std::uint64_t inv(std::uint64_t a) const = 0;

    virtual std::string name() const = 0;

    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return add(a, neg(b)); }

protected:
    /// Throws std::invalid_argument for an out-of-range element.
    void check_element(std::uint64_t a) const;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Structural equality of ring descriptors.
bool same_ring(const Ring& a, const Ring& b);

/// Moduli are capped so that products of two canonical elements fit in
/// 64 bits without overflow.
inline constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 31;

/// Z/mZ with its factorization attached. 2 <= m < 2^31.
class ZmRing final : public Ring {
public:
    explicit ZmRing(std::uint64_t m);

    std::uint64_t modulus() const { return m_; }
    const Factorization& factorization() const { return fact_; }

    RingKind kind() const override { return RingKind::Zm; }
    std::uint64_t size() const override { return m_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t neg(std::uint64_t a) const override;
    std::uint64_t one() const override { return 1 % m_; }
    bool is_unit(std::uint64_t a) const override;
    bool is_field() const override;
    std::uint64_t inv(std::uint64_t a) const override;
    std::string name() const override;

    /// Component i is x mod p_i^{r_i}.
    std::vector<std::uint64_t> crt_split(std::uint64_t x) const;
    /// Unique x in [0, m) reducing to every component; inverse of crt_split.
    std::uint64_t crt_combine(const std::vector<std::uint64_t>& components) const;

private:
    std::uint64_t m_;
    Factorization fact_;
    std::vector<std::uint64_t> crt_basis_;  // e_i = (m/q_i) * ((m/q_i)^{-1} mod q_i)
};

/// The canonical modulus polynomial for F_{p^n}: the first monic
/// irreducible polynomial in increasing order of its coefficient encoding
/// sum c_i p^i. Tabulated for q <= 64; degree 1 is always x.
std::vector<std::uint64_t> canonical_modulus_poly(std::uint64_t p, std::uint32_t n);

/// Irreducibility over F_p: no root check alone — f must have no factor of
/// degree <= n/2, tested via gcd(f, x^{p^k} - x).
bool is_irreducible_poly(const std::vector<std::uint64_t>& poly, std::uint64_t p);

/// F_{p^n} as F_p[x]/(modulus_poly). Elements are coefficient vectors of
/// length n, stored as the index sum c_i p^i.
class FqField final : public Ring {
public:
    /// Canonical modulus polynomial; requires q <= 64 when n >= 2.
    FqField(std::uint64_t p, std::uint32_t n);
    /// User-supplied monic polynomial, constant term first, length n + 1.
    /// Rejected with std::invalid_argument when reducible.
    FqField(std::uint64_t p, std::uint32_t n, std::vector<std::uint64_t> modulus_poly);

    std::uint64_t p() const { return p_; }
    std::uint32_t degree() const { return n_; }
    std::uint64_t q() const { return q_; }
    const std::vector<std::uint64_t>& modulus_poly() const { return poly_; }

    std::vector<std::uint64_t> decode(std::uint64_t a) const;
    std::uint64_t encode(const std::vector<std::uint64_t>& coeffs) const;

    RingKind kind() const override { return RingKind::Fq; }
    std::uint64_t size() const override { return q_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t neg(std::uint64_t a) const override;
    std::uint64_t one() const override { return 1; }
    bool is_unit(std::uint64_t a) const override { check_element(a); return a != 0; }
    bool is_field() const override { return true; }
    std::uint64_t inv(std::uint64_t a) const override;
    std::string name() const override;

    /// Plain polynomial multiplication with reduction; always available.
    /// The log/antilog fast path must agree with it.
    std::uint64_t mul_direct(std::uint64_t a, std::uint64_t b) const;
    bool uses_log_tables() const { return !log_.empty(); }

private:
    void build_log_tables();

    std::uint64_t p_ = 0;
    std::uint32_t n_ = 0;
    std::uint64_t q_ = 0;
    std::vector<std::uint64_t> poly_;
    std::vector<std::uint32_t> log_;   // index -> discrete log, defined for nonzero
    std::vector<std::uint32_t> exp_;   // discrete log -> index, length q - 1
};

/// A finite commutative local ring: Z_{p^r} or F_q[t]/(t^k). The maximal
/// ideal is the set of non-units; the quotient by it is residue_field().
/// Residue representatives are the canonical lifts {0, 1, ..., q-1}; the
/// representative of 0 is 0.
class LocalRing final : public Ring {
public:
    static std::shared_ptr<const LocalRing> prime_power(std::uint64_t p, std::uint32_t r);
    static std::shared_ptr<const LocalRing> truncated_poly(std::shared_ptr<const FqField> base,
                                                           std::uint32_t k);

    const FqField& residue_field() const { return *residue_; }
    std::shared_ptr<const FqField> residue_field_ptr() const { return residue_; }
    /// Nilpotency depth of the maximal ideal: r for Z_{p^r}, k for
    /// F_q[t]/(t^k). Depth 1 means the ring is its residue field.
    std::uint32_t depth() const { return depth_; }
    bool is_prime_power_kind() const { return kind_ == RingKind::LocalPrimePower; }

    /// Image of a in the residue field.
    std::uint64_t residue(std::uint64_t a) const;
    /// Canonical representative of a residue class; representative(0) == 0.
    std::uint64_t representative(std::uint64_t residue_idx) const;
    /// |maximal ideal| = size() / q.
    std::uint64_t ideal_size() const { return size_ / residue_->q(); }
    /// The i-th element of the maximal ideal, i in [0, ideal_size()).
    std::uint64_t ideal_element(std::uint64_t i) const;

    RingKind kind() const override { return kind_; }
    std::uint64_t size() const override { return size_; }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const override;
    std::uint64_t neg(std::uint64_t a) const override;
    std::uint64_t one() const override { return 1; }
    bool is_unit(std::uint64_t a) const override { return residue(a) != 0; }
    bool is_field() const override { return depth_ == 1; }
    std::uint64_t inv(std::uint64_t a) const override;
    std::string name() const override;

private:
    LocalRing(RingKind kind, std::shared_ptr<const FqField> residue, std::uint32_t depth,
              std::uint64_t size);

    RingKind kind_;
    std::shared_ptr<const FqField> residue_;
    std::uint32_t depth_;
    std::uint64_t size_;
};

std::shared_ptr<const ZmRing> make_zm(std::uint64_t m);
std::shared_ptr<const FqField> make_fq(std::uint64_t p, std::uint32_t n);
std::shared_ptr<const FqField> make_fq(std::uint64_t p, std::uint32_t n,
                                       std::vector<std::uint64_t> modulus_poly);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m);  // gcd(a, m) must be 1
std::uint64_t pow_u64_checked(std::uint64_t base, std::uint32_t exp, std::uint64_t cap);

}  // namespace haarmod
