#include "haarmod/rings.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace haarmod {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b != 0) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t m) {
    // extended Euclid on signed 128-bit intermediates
    __int128 t = 0, new_t = 1;
    __int128 r = m, new_r = a % m;
    while (new_r != 0) {
        __int128 quot = r / new_r;
        __int128 tmp = t - quot * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - quot * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: element is not a unit");
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t pow_u64_checked(std::uint64_t base, std::uint32_t exp, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::uint32_t i = 0; i < exp; ++i) {
        if (base != 0 && result > cap / base)
            throw std::invalid_argument("pow_u64_checked: overflow past cap");
        result *= base;
    }
    return result;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d <= n / d; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

Factorization factorize(std::uint64_t m) {
    require(m >= 2, "factorize: modulus must be at least 2");
    require(m < (std::uint64_t{1} << 63), "factorize: modulus must be below 2^63");
    Factorization f;
    f.m = m;
    std::uint64_t rest = m;
    for (std::uint64_t d = 2; d <= rest / d; d == 2 ? d = 3 : d += 2) {
        if (rest % d != 0) continue;
        std::uint32_t e = 0;
        while (rest % d == 0) {
            rest /= d;
            ++e;
        }
        f.factors.push_back({d, e});
    }
    if (rest > 1) f.factors.push_back({rest, 1});
    return f;
}

PrimePower prime_power_decompose(std::uint64_t q) {
    if (q < 2) return {0, 0};
    Factorization f = factorize(q);
    if (f.factors.size() != 1) return {0, 0};
    return f.factors[0];
}

std::uint64_t reduce_mod(std::uint64_t x, std::uint64_t v, std::uint64_t u) {
    require(u >= 1 && v >= 1, "reduce_mod: moduli must be positive");
    require(v % u == 0, "reduce_mod: u must divide v");
    require(x < v, "reduce_mod: element out of range");
    return x % u;
}

void Ring::check_element(std::uint64_t a) const {
    if (a >= size()) {
        std::ostringstream os;
        os << "element " << a << " out of range for " << name();
        throw std::invalid_argument(os.str());
    }
}

// ---------------------------------------------------------------------------
// ZmRing

ZmRing::ZmRing(std::uint64_t m) : m_(m) {
    require(m >= 2, "ZmRing: modulus must be at least 2");
    require(m < kMaxRingSize, "ZmRing: modulus must be below 2^31");
    fact_ = factorize(m);
    crt_basis_.reserve(fact_.factors.size());
    for (const auto& [p, r] : fact_.factors) {
        std::uint64_t q = pow_u64_checked(p, r, m);
        std::uint64_t cofactor = m / q;
        crt_basis_.push_back(cofactor % m * (mod_inverse(cofactor % q, q)) % m);
    }
}

std::uint64_t ZmRing::add(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    return (a + b) % m_;
}

std::uint64_t ZmRing::mul(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    return a * b % m_;
}

std::uint64_t ZmRing::neg(std::uint64_t a) const {
    check_element(a);
    return a == 0 ? 0 : m_ - a;
}

bool ZmRing::is_unit(std::uint64_t a) const {
    check_element(a);
    return gcd_u64(a, m_) == 1;
}

bool ZmRing::is_field() const {
    return fact_.factors.size() == 1 && fact_.factors[0].exponent == 1;
}

std::uint64_t ZmRing::inv(std::uint64_t a) const {
    check_element(a);
    if (!is_field()) throw std::domain_error("ZmRing::inv: " + name() + " is not a field");
    if (a == 0) throw std::domain_error("ZmRing::inv: division by zero");
    return mod_inverse(a, m_);
}

std::string ZmRing::name() const {
    return "Z_" + std::to_string(m_);
}

std::vector<std::uint64_t> ZmRing::crt_split(std::uint64_t x) const {
    check_element(x);
    std::vector<std::uint64_t> parts;
    parts.reserve(fact_.factors.size());
    for (const auto& [p, r] : fact_.factors) parts.push_back(x % pow_u64_checked(p, r, m_));
    return parts;
}

std::uint64_t ZmRing::crt_combine(const std::vector<std::uint64_t>& components) const {
    require(components.size() == fact_.factors.size(),
            "crt_combine: wrong number of components");
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < components.size(); ++i) {
        const auto& [p, r] = fact_.factors[i];
        std::uint64_t q = pow_u64_checked(p, r, m_);
        require(components[i] < q, "crt_combine: component out of range");
        x = (x + components[i] * crt_basis_[i]) % m_;
    }
    return x;
}

// ---------------------------------------------------------------------------
// polynomial helpers over F_p (coefficients constant-term first)

namespace {

using Poly = std::vector<std::uint64_t>;

void poly_trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b, b nonzero; leading coefficient of b must be invertible mod p
Poly poly_mod(Poly a, Poly b, std::uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    std::uint64_t lead_inv = mod_inverse(b.back(), p);
    while (a.size() >= b.size()) {
        std::uint64_t f = a.back() * lead_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            a[shift + j] = (a[shift + j] + p - f * b[j] % p) % p;
        }
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// product of two residues mod (p, modulus); both inputs already reduced
Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& modulus, std::uint64_t p) {
    std::size_t n = modulus.size() - 1;
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        }
    }
    for (std::size_t d = prod.size(); d-- > n;) {
        std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::size_t j = 0; j <= n; ++j) {
            prod[d - n + j] = (prod[d - n + j] + p - c * modulus[j] % p) % p;
        }
    }
    prod.resize(n, 0);
    return prod;
}

// x^e mod (p, modulus)
Poly poly_x_pow_mod(std::uint64_t e, const Poly& modulus, std::uint64_t p) {
    Poly result{1};
    result.resize(modulus.size() - 1, 0);
    Poly base{0, 1};
    base.resize(modulus.size() - 1, 0);
    if (modulus.size() == 2) {
        // degree-1 modulus: x == -c0
        base.assign(1, (p - modulus[0] % p) % p);
        base.resize(1);
        result.assign(1, 1);
    }
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, modulus, p);
        base = poly_mul_mod(base, base, modulus, p);
        e >>= 1;
    }
    return result;
}

}  // namespace

bool is_irreducible_poly(const std::vector<std::uint64_t>& poly, std::uint64_t p) {
    require(is_prime(p), "is_irreducible_poly: characteristic must be prime");
    require(poly.size() >= 2, "is_irreducible_poly: degree must be at least 1");
    require(poly.back() == 1, "is_irreducible_poly: polynomial must be monic");
    for (std::uint64_t c : poly) require(c < p, "is_irreducible_poly: coefficient out of range");
    std::uint32_t n = static_cast<std::uint32_t>(poly.size() - 1);
    if (n == 1) return true;
    // f has no irreducible factor of degree <= n/2 iff gcd(f, x^{p^k} - x) = 1
    // for every k up to n/2.
    for (std::uint32_t k = 1; k <= n / 2; ++k) {
        std::uint64_t e = 1;
        for (std::uint32_t i = 0; i < k; ++i) {
            if (e > (std::uint64_t{1} << 62) / p)
                throw std::invalid_argument("is_irreducible_poly: p^k too large");
            e *= p;
        }
        Poly xp = poly_x_pow_mod(e, poly, p);
        if (xp.size() < 2) xp.resize(2, 0);
        xp[1] = (xp[1] + p - 1) % p;
        Poly g = poly_gcd(poly, xp, p);
        if (g.size() > 1) return false;
    }
    return true;
}

std::vector<std::uint64_t> canonical_modulus_poly(std::uint64_t p, std::uint32_t n) {
    require(is_prime(p), "canonical_modulus_poly: p must be prime");
    require(n >= 1, "canonical_modulus_poly: degree must be at least 1");
    if (n == 1) return {0, 1};  // x
    // First monic irreducible in increasing order of sum c_i p^i.
    static const std::map<std::pair<std::uint64_t, std::uint32_t>, std::vector<std::uint64_t>>
        table = {
            {{2, 2}, {1, 1, 1}},              // x^2 + x + 1
            {{2, 3}, {1, 1, 0, 1}},           // x^3 + x + 1
            {{2, 4}, {1, 1, 0, 0, 1}},        // x^4 + x + 1
            {{2, 5}, {1, 0, 1, 0, 0, 1}},     // x^5 + x^2 + 1
            {{2, 6}, {1, 1, 0, 0, 0, 0, 1}},  // x^6 + x + 1
            {{3, 2}, {1, 0, 1}},              // x^2 + 1
            {{3, 3}, {1, 2, 0, 1}},           // x^3 + 2x + 1
            {{5, 2}, {2, 0, 1}},              // x^2 + 2
            {{7, 2}, {1, 0, 1}},              // x^2 + 1
        };
    auto it = table.find({p, n});
    if (it == table.end()) {
        throw std::invalid_argument(
            "canonical_modulus_poly: no built-in modulus polynomial for q > 64; "
            "supply one explicitly");
    }
    return it->second;
}

// ---------------------------------------------------------------------------
// FqField

FqField::FqField(std::uint64_t p, std::uint32_t n) : FqField(p, n, canonical_modulus_poly(p, n)) {}

FqField::FqField(std::uint64_t p, std::uint32_t n, std::vector<std::uint64_t> modulus_poly)
    : p_(p), n_(n), poly_(std::move(modulus_poly)) {
    require(is_prime(p_), "FqField: characteristic must be prime");
    require(n_ >= 1, "FqField: extension degree must be at least 1");
    q_ = pow_u64_checked(p_, n_, kMaxRingSize - 1);
    require(poly_.size() == n_ + 1, "FqField: modulus polynomial must have degree n");
    if (!is_irreducible_poly(poly_, p_))
        throw std::invalid_argument("FqField: modulus polynomial is reducible over F_p");
    if (n_ >= 2 && q_ <= (std::uint64_t{1} << 16)) build_log_tables();
}

std::vector<std::uint64_t> FqField::decode(std::uint64_t a) const {
    check_element(a);
    std::vector<std::uint64_t> coeffs(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
        coeffs[i] = a % p_;
        a /= p_;
    }
    return coeffs;
}

std::uint64_t FqField::encode(const std::vector<std::uint64_t>& coeffs) const {
    require(coeffs.size() == n_, "FqField::encode: wrong coefficient count");
    std::uint64_t a = 0;
    for (std::uint32_t i = n_; i-- > 0;) {
        require(coeffs[i] < p_, "FqField::encode: coefficient out of range");
        a = a * p_ + coeffs[i];
    }
    return a;
}

std::uint64_t FqField::add(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    if (n_ == 1) return (a + b) % p_;
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        out += (a % p_ + b % p_) % p_ * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return out;
}

std::uint64_t FqField::neg(std::uint64_t a) const {
    check_element(a);
    if (n_ == 1) return a == 0 ? 0 : p_ - a;
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        std::uint64_t c = a % p_;
        out += (c == 0 ? 0 : p_ - c) * scale;
        a /= p_;
        scale *= p_;
    }
    return out;
}

std::uint64_t FqField::mul_direct(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    if (n_ == 1) return a * b % p_;
    Poly pa = decode(a), pb = decode(b);
    return encode(poly_mul_mod(pa, pb, poly_, p_));
}

std::uint64_t FqField::mul(std::uint64_t a, std::uint64_t b) const {
    if (!log_.empty()) {
        check_element(a);
        check_element(b);
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (q_ - 1)];
    }
    return mul_direct(a, b);
}

std::uint64_t FqField::inv(std::uint64_t a) const {
    check_element(a);
    if (a == 0) throw std::domain_error("FqField::inv: division by zero");
    if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    // a^(q-2)
    std::uint64_t result = 1, base = a, e = q_ - 2;
    while (e > 0) {
        if (e & 1) result = mul_direct(result, base);
        base = mul_direct(base, base);
        e >>= 1;
    }
    return result;
}

void FqField::build_log_tables() {
    // smallest multiplicative generator by element index
    std::uint64_t g = 0;
    for (std::uint64_t cand = 1; cand < q_; ++cand) {
        std::uint64_t x = cand;
        std::uint64_t order = 1;
        while (x != 1) {
            x = mul_direct(x, cand);
            ++order;
        }
        if (order == q_ - 1) {
            g = cand;
            break;
        }
    }
    log_.assign(q_, 0);
    exp_.assign(q_ - 1, 0);
    std::uint64_t x = 1;
    for (std::uint64_t k = 0; k < q_ - 1; ++k) {
        exp_[k] = static_cast<std::uint32_t>(x);
        log_[x] = static_cast<std::uint32_t>(k);
        x = mul_direct(x, g);
    }
}

std::string FqField::name() const {
    return "F_" + std::to_string(q_);
}

// ---------------------------------------------------------------------------
// LocalRing

LocalRing::LocalRing(RingKind kind, std::shared_ptr<const FqField> residue, std::uint32_t depth,
                     std::uint64_t size)
    : kind_(kind), residue_(std::move(residue)), depth_(depth), size_(size) {}

std::shared_ptr<const LocalRing> LocalRing::prime_power(std::uint64_t p, std::uint32_t r) {
    if (!is_prime(p)) {
        throw std::invalid_argument(
            "LocalRing: Z_" + std::to_string(p) +
            " with a composite modulus of several primes is not a local ring");
    }
    require(r >= 1, "LocalRing: exponent must be at least 1");
    std::uint64_t size = pow_u64_checked(p, r, kMaxRingSize - 1);
    auto residue = std::make_shared<const FqField>(p, 1);
    return std::shared_ptr<const LocalRing>(
        new LocalRing(RingKind::LocalPrimePower, std::move(residue), r, size));
}

std::shared_ptr<const LocalRing> LocalRing::truncated_poly(std::shared_ptr<const FqField> base,
                                                           std::uint32_t k) {
    require(base != nullptr, "LocalRing: base field required");
    require(k >= 1, "LocalRing: truncation order must be at least 1");
    std::uint64_t size = pow_u64_checked(base->q(), k, kMaxRingSize - 1);
    return std::shared_ptr<const LocalRing>(
        new LocalRing(RingKind::LocalTruncatedPoly, std::move(base), k, size));
}

std::uint64_t LocalRing::residue(std::uint64_t a) const {
    check_element(a);
    return a % residue_->q();
}

std::uint64_t LocalRing::representative(std::uint64_t residue_idx) const {
    require(residue_idx < residue_->q(), "LocalRing::representative: residue out of range");
    return residue_idx;
}

std::uint64_t LocalRing::ideal_element(std::uint64_t i) const {
    require(i < ideal_size(), "LocalRing::ideal_element: index out of range");
    return i * residue_->q();
}

std::uint64_t LocalRing::add(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    if (kind_ == RingKind::LocalPrimePower) return (a + b) % size_;
    // digitwise F_q addition
    std::uint64_t q = residue_->q();
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < depth_; ++i) {
        out += residue_->add(a % q, b % q) * scale;
        a /= q;
        b /= q;
        scale *= q;
    }
    return out;
}

std::uint64_t LocalRing::neg(std::uint64_t a) const {
    check_element(a);
    if (kind_ == RingKind::LocalPrimePower) return a == 0 ? 0 : size_ - a;
    std::uint64_t q = residue_->q();
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t i = 0; i < depth_; ++i) {
        out += residue_->neg(a % q) * scale;
        a /= q;
        scale *= q;
    }
    return out;
}

std::uint64_t LocalRing::mul(std::uint64_t a, std::uint64_t b) const {
    check_element(a);
    check_element(b);
    if (kind_ == RingKind::LocalPrimePower) return a * b % size_;
    // truncated convolution of the t-adic digits
    std::uint64_t q = residue_->q();
    std::vector<std::uint64_t> da(depth_), db(depth_);
    for (std::uint32_t i = 0; i < depth_; ++i) {
        da[i] = a % q;
        a /= q;
        db[i] = b % q;
        b /= q;
    }
    std::uint64_t out = 0, scale = 1;
    for (std::uint32_t j = 0; j < depth_; ++j) {
        std::uint64_t digit = 0;
        for (std::uint32_t i = 0; i <= j; ++i) {
            digit = residue_->add(digit, residue_->mul(da[i], db[j - i]));
        }
        out += digit * scale;
        scale *= q;
    }
    return out;
}

std::uint64_t LocalRing::inv(std::uint64_t a) const {
    if (!is_field()) throw std::domain_error("LocalRing::inv: " + name() + " is not a field");
    check_element(a);
    return residue_->inv(a);
}

std::string LocalRing::name() const {
    if (kind_ == RingKind::LocalPrimePower) return "Z_" + std::to_string(size_) + " (local)";
    return residue_->name() + "[t]/(t^" + std::to_string(depth_) + ")";
}

// ---------------------------------------------------------------------------

bool same_ring(const Ring& a, const Ring& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case RingKind::Zm:
            return static_cast<const ZmRing&>(a).modulus() == static_cast<const ZmRing&>(b).modulus();
        case RingKind::Fq: {
            const auto& fa = static_cast<const FqField&>(a);
            const auto& fb = static_cast<const FqField&>(b);
            return fa.p() == fb.p() && fa.degree() == fb.degree() &&
                   fa.modulus_poly() == fb.modulus_poly();
        }
        case RingKind::LocalPrimePower:
        case RingKind::LocalTruncatedPoly: {
            const auto& la = static_cast<const LocalRing&>(a);
            const auto& lb = static_cast<const LocalRing&>(b);
            return la.depth() == lb.depth() && la.size() == lb.size() &&
                   same_ring(la.residue_field(), lb.residue_field());
        }
    }
    return false;
}

std::shared_ptr<const ZmRing> make_zm(std::uint64_t m) {
    return std::make_shared<const ZmRing>(m);
}

std::shared_ptr<const FqField> make_fq(std::uint64_t p, std::uint32_t n) {
    return std::make_shared<const FqField>(p, n);
}

std::shared_ptr<const FqField> make_fq(std::uint64_t p, std::uint32_t n,
                                       std::vector<std::uint64_t> modulus_poly) {
    return std::make_shared<const FqField>(p, n, std::move(modulus_poly));
}

}  // namespace haarmod
