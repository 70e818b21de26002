#include "haarmod/sampling.hpp"

#include <stdexcept>

#include "haarmod/errors.hpp"

namespace haarmod {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Echelon basis of the rows accepted so far; membership test is O(k n).
class EchelonBasis {
public:
    EchelonBasis(const Ring& field, std::uint32_t dim) : field_(field), dim_(dim) {}

    // Reduces a copy of v against the basis; if independent, normalizes it
    // and stores it. Returns false when v lies in the current span.
    bool try_insert(std::vector<std::uint64_t> v) {
        for (std::size_t b = 0; b < rows_.size(); ++b) {
            std::uint64_t c = v[pivots_[b]];
            if (c == 0) continue;
            for (std::uint32_t j = 0; j < dim_; ++j) {
                v[j] = field_.sub(v[j], field_.mul(c, rows_[b][j]));
            }
        }
        std::uint32_t pivot = dim_;
        for (std::uint32_t j = 0; j < dim_; ++j) {
            if (v[j] != 0) {
                pivot = j;
                break;
            }
        }
        if (pivot == dim_) return false;
        std::uint64_t scale = field_.inv(v[pivot]);
        for (std::uint32_t j = 0; j < dim_; ++j) v[j] = field_.mul(v[j], scale);
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }

private:
    const Ring& field_;
    std::uint32_t dim_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::uint32_t> pivots_;
};

// First `rows` rows of a Haar draw from GL_n(field): each row uniform
// outside the span of its predecessors. Entries drawn left to right,
// whole candidate rows redrawn on rejection.
std::vector<std::vector<std::uint64_t>> chain_rows(const Ring& field, std::uint32_t n,
                                                   std::uint32_t rows, RngStream& rng) {
    if (!field.is_field())
        throw std::domain_error("chain sampler: " + field.name() + " is not a field");
    EchelonBasis basis(field, n);
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(rows);
    const std::uint64_t q = field.size();
    for (std::uint32_t k = 0; k < rows; ++k) {
        std::vector<std::uint64_t> candidate(n);
        for (;;) {
            for (std::uint32_t j = 0; j < n; ++j) candidate[j] = rng.below(q);
            if (basis.try_insert(candidate)) break;
        }
        out.push_back(std::move(candidate));
    }
    return out;
}

std::uint64_t lift_entry_prime_power(std::uint64_t residue, std::uint64_t p,
                                     std::uint64_t ideal_card, RngStream& rng) {
    return residue + p * rng.below(ideal_card);
}

}  // namespace

Matrix sample_uniform_matrix(const RingPtr& ring, std::uint32_t rows, std::uint32_t cols,
                             RngStream& rng) {
    require(ring != nullptr, "sample_uniform_matrix: ring required");
    Matrix out(ring, rows, cols);
    for (std::uint32_t i = 0; i < rows; ++i) {
        for (std::uint32_t j = 0; j < cols; ++j) out.set(i, j, rng.below(ring->size()));
    }
    return out;
}

Matrix sample_ideal_matrix(const std::shared_ptr<const LocalRing>& ring, std::uint32_t rows,
                           std::uint32_t cols, RngStream& rng) {
    require(ring != nullptr, "sample_ideal_matrix: ring required");
    Matrix out(ring, rows, cols);
    const std::uint64_t card = ring->ideal_size();
    for (std::uint32_t i = 0; i < rows; ++i) {
        for (std::uint32_t j = 0; j < cols; ++j) out.set(i, j, ring->ideal_element(rng.below(card)));
    }
    return out;
}

Matrix sample_gl_field_chain(const RingPtr& field, std::uint32_t n, RngStream& rng) {
    require(field != nullptr && n >= 1, "sample_gl_field_chain: bad arguments");
    auto rows = chain_rows(*field, n, n, rng);
    std::vector<std::uint64_t> entries;
    entries.reserve(std::size_t{n} * n);
    for (const auto& row : rows) entries.insert(entries.end(), row.begin(), row.end());
    return Matrix(field, n, n, std::move(entries));
}

Matrix sample_gl_field_reject(const RingPtr& field, std::uint32_t n, RngStream& rng,
                              std::uint64_t max_attempts) {
    require(field != nullptr && n >= 1, "sample_gl_field_reject: bad arguments");
    if (!field->is_field())
        throw std::domain_error("sample_gl_field_reject: " + field->name() + " is not a field");
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Matrix m = sample_uniform_matrix(field, n, n, rng);
        if (rank_over_field(m) == n) return m;
    }
    throw SamplingError("sample_gl_field_reject: retry cap exceeded");
}

Matrix lift_to_prime_power(const Matrix& residue, std::uint32_t r, RngStream& rng) {
    require(residue.is_square(), "lift_to_prime_power: residue must be square");
    require(r >= 1, "lift_to_prime_power: r must be at least 1");
    const std::uint64_t p = residue.ring().size();
    if (!residue.ring().is_field() || !is_prime(p))
        throw std::invalid_argument("lift_to_prime_power: residue ring must be F_p, p prime");
    if (!is_invertible(residue))
        throw std::invalid_argument("lift_to_prime_power: residue must be invertible");
    auto target = make_zm(pow_u64_checked(p, r, kMaxRingSize - 1));
    const std::uint64_t ideal_card = target->modulus() / p;  // p^{r-1}
    const std::uint32_t n = residue.rows();
    Matrix out(target, n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            out.set(i, j, lift_entry_prime_power(residue.at(i, j), p, ideal_card, rng));
        }
    }
    return out;
}

Matrix sample_gl_zm(const std::shared_ptr<const ZmRing>& ring, std::uint32_t n, RngStream& rng) {
    require(ring != nullptr && n >= 1, "sample_gl_zm: bad arguments");
    std::vector<Matrix> parts;
    parts.reserve(ring->factorization().factors.size());
    for (const auto& [p, r] : ring->factorization().factors) {
        Matrix residue = sample_gl_field_chain(make_zm(p), n, rng);
        parts.push_back(lift_to_prime_power(residue, r, rng));
    }
    if (parts.size() == 1 && parts[0].ring().size() == ring->modulus()) {
        return Matrix(ring, n, n, parts[0].entries());
    }
    return crt_combine_matrix(parts, ring);
}

Matrix sample_gl_local(const std::shared_ptr<const LocalRing>& ring, std::uint32_t n,
                       RngStream& rng) {
    require(ring != nullptr && n >= 1, "sample_gl_local: bad arguments");
    // Z: invertible matrix with representative entries; U: ideal-uniform.
    auto rows = chain_rows(ring->residue_field(), n, n, rng);
    const std::uint64_t ideal_card = ring->ideal_size();
    Matrix out(ring, n, n);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            std::uint64_t z = ring->representative(rows[i][j]);
            std::uint64_t u = ring->ideal_element(rng.below(ideal_card));
            out.set(i, j, ring->add(z, u));
        }
    }
    return out;
}

Matrix sample_gl(const RingPtr& ring, std::uint32_t n, RngStream& rng) {
    require(ring != nullptr, "sample_gl: ring required");
    switch (ring->kind()) {
        case RingKind::Zm:
            return sample_gl_zm(std::static_pointer_cast<const ZmRing>(ring), n, rng);
        case RingKind::Fq:
            return sample_gl_field_chain(ring, n, rng);
        case RingKind::LocalPrimePower:
        case RingKind::LocalTruncatedPoly:
            return sample_gl_local(std::static_pointer_cast<const LocalRing>(ring), n, rng);
    }
    throw std::domain_error("sample_gl: unsupported ring kind");
}

namespace {

// Streaming corner sampler: per-factor state built once per batch. Draw
// order per sample: for each CRT factor in order, the s chain rows (full
// length n), then the s*s lift digits row-major; local rings draw s
// residue rows then the ideal part row-major.
class CornerSampler {
public:
    CornerSampler(const RingPtr& ring, std::uint32_t n, std::uint32_t s)
        : ring_(ring), n_(n), s_(s) {
        if (ring_->kind() == RingKind::Zm) {
            const auto& zm = static_cast<const ZmRing&>(*ring_);
            for (const auto& [p, r] : zm.factorization().factors) {
                factor_fields_.push_back(make_zm(p));
                factor_ideal_cards_.push_back(pow_u64_checked(p, r - 1, kMaxRingSize - 1));
            }
        }
    }

    std::vector<std::uint64_t> draw(RngStream& rng) const {
        switch (ring_->kind()) {
            case RingKind::Fq: {
                auto rows = chain_rows(*ring_, n_, s_, rng);
                return corner_of(rows);
            }
            case RingKind::Zm: {
                const auto& zm = static_cast<const ZmRing&>(*ring_);
                const auto& factors = zm.factorization().factors;
                std::vector<std::vector<std::uint64_t>> parts;
                parts.reserve(factors.size());
                for (std::size_t f = 0; f < factors.size(); ++f) {
                    auto rows = chain_rows(*factor_fields_[f], n_, s_, rng);
                    std::vector<std::uint64_t> corner(std::size_t{s_} * s_);
                    for (std::uint32_t i = 0; i < s_; ++i) {
                        for (std::uint32_t j = 0; j < s_; ++j) {
                            corner[std::size_t{i} * s_ + j] = lift_entry_prime_power(
                                rows[i][j], factors[f].prime, factor_ideal_cards_[f], rng);
                        }
                    }
                    parts.push_back(std::move(corner));
                }
                std::vector<std::uint64_t> corner(std::size_t{s_} * s_);
                std::vector<std::uint64_t> comp(parts.size());
                for (std::size_t c = 0; c < corner.size(); ++c) {
                    for (std::size_t f = 0; f < parts.size(); ++f) comp[f] = parts[f][c];
                    corner[c] = zm.crt_combine(comp);
                }
                return corner;
            }
            case RingKind::LocalPrimePower:
            case RingKind::LocalTruncatedPoly: {
                const auto& lr = static_cast<const LocalRing&>(*ring_);
                auto rows = chain_rows(lr.residue_field(), n_, s_, rng);
                const std::uint64_t ideal_card = lr.ideal_size();
                std::vector<std::uint64_t> corner(std::size_t{s_} * s_);
                for (std::uint32_t i = 0; i < s_; ++i) {
                    for (std::uint32_t j = 0; j < s_; ++j) {
                        std::uint64_t z = lr.representative(rows[i][j]);
                        std::uint64_t u = lr.ideal_element(rng.below(ideal_card));
                        corner[std::size_t{i} * s_ + j] = lr.add(z, u);
                    }
                }
                return corner;
            }
        }
        throw std::domain_error("CornerSampler: unsupported ring kind");
    }

private:
    std::vector<std::uint64_t> corner_of(const std::vector<std::vector<std::uint64_t>>& rows) const {
        std::vector<std::uint64_t> corner(std::size_t{s_} * s_);
        for (std::uint32_t i = 0; i < s_; ++i) {
            for (std::uint32_t j = 0; j < s_; ++j) corner[std::size_t{i} * s_ + j] = rows[i][j];
        }
        return corner;
    }

    RingPtr ring_;
    std::uint32_t n_, s_;
    std::vector<std::shared_ptr<const ZmRing>> factor_fields_;
    std::vector<std::uint64_t> factor_ideal_cards_;
};

}  // namespace

SampleBatch sample_truncated(const RingPtr& ring, std::uint32_t n, std::uint32_t s,
                             std::uint64_t count, RngStream& rng) {
    require(ring != nullptr, "sample_truncated: ring required");
    require(n >= 1, "sample_truncated: n must be positive");
    if (s < 1 || s > n) throw std::invalid_argument("sample_truncated: need 1 <= s <= n");
    require(count >= 1, "sample_truncated: count must be positive");
    SampleBatch batch;
    batch.ring = ring;
    batch.n = n;
    batch.s = s;
    batch.seed = rng.seed();
    batch.rng_version = RngStream::version();
    batch.corners.reserve(count);
    CornerSampler sampler(ring, n, s);
    for (std::uint64_t i = 0; i < count; ++i) batch.corners.push_back(sampler.draw(rng));
    return batch;
}

Matrix sample_gl_nonzero_det(const RingPtr& ring, std::uint32_t n, RngStream& rng,
                             std::uint64_t max_attempts) {
    require(ring != nullptr && n >= 1, "sample_gl_nonzero_det: bad arguments");
    for (std::uint64_t attempt = 0; attempt < max_attempts; ++attempt) {
        Matrix m = sample_uniform_matrix(ring, n, n, rng);
        if (determinant(m) != 0) return m;
    }
    throw SamplingError("sample_gl_nonzero_det: retry cap exceeded");
}

}  // namespace haarmod
