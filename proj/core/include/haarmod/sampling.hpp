#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "haarmod/matrix.hpp"
#include "haarmod/rng.hpp"

namespace haarmod {

/// Corners of independent Haar draws, with the metadata needed to
/// reproduce them byte for byte.
struct SampleBatch {
    RingPtr ring;
    std::uint32_t n = 0;
    std::uint32_t s = 0;
    std::uint64_t seed = 0;
    std::string rng_version;
    std::vector<std::vector<std::uint64_t>> corners;  // each s*s, row-major
};

/// Entrywise uniform over the whole ring.
Matrix sample_uniform_matrix(const RingPtr& ring, std::uint32_t rows, std::uint32_t cols,
                             RngStream& rng);

/// Entrywise uniform over the maximal ideal of a local ring.
Matrix sample_ideal_matrix(const std::shared_ptr<const LocalRing>& ring, std::uint32_t rows,
                           std::uint32_t cols, RngStream& rng);

/// Exactly uniform over GL_n of a field: row k+1 is drawn uniformly from
/// the q^n - q^k vectors outside the span of rows 1..k, by rejection
/// against an incremental echelon basis. Expected attempts per row < 2.
Matrix sample_gl_field_chain(const RingPtr& field, std::uint32_t n, RngStream& rng);

/// Distributional oracle for the chain sampler: uniform over all of M_n,
/// retried until invertible. Throws SamplingError past max_attempts.
Matrix sample_gl_field_reject(const RingPtr& field, std::uint32_t n, RngStream& rng,
                              std::uint64_t max_attempts = 1'000'000);

/// Haar lift from GL_n(F_p) to GL_n(Z_{p^r}): keeps the residue and adds
/// an entrywise uniform multiple-of-p part, so the output is uniform on
/// the fiber (size p^{(r-1) n^2}) over the residue. Composed with a
/// uniform GL_n(F_p) draw this is exactly Haar on GL_n(Z_{p^r}).
/// The residue matrix must be invertible over a field of prime size p.
Matrix lift_to_prime_power(const Matrix& residue, std::uint32_t r, RngStream& rng);

/// Exactly Haar on GL_n(Z_m): independent prime-power draws (chain sampler
/// plus lift) recombined entrywise through the CRT isomorphism.
Matrix sample_gl_zm(const std::shared_ptr<const ZmRing>& ring, std::uint32_t n, RngStream& rng);

/// Exactly Haar on GL_n of a local ring: an invertible matrix Z with
/// entries in the canonical residue representatives plus an independent
/// entrywise-uniform matrix U over the maximal ideal.
Matrix sample_gl_local(const std::shared_ptr<const LocalRing>& ring, std::uint32_t n,
                       RngStream& rng);

/// Haar draw over any supported ring (dispatches on the ring kind).
Matrix sample_gl(const RingPtr& ring, std::uint32_t n, RngStream& rng);

/// count upper-left s x s corners of independent Haar draws from
/// GL_n(ring). Corners are generated by streaming: only the first s rows
/// of the row-chain construction are ever drawn, so working memory is
/// O(s n) and the full n x n matrices never exist.
SampleBatch sample_truncated(const RingPtr& ring, std::uint32_t n, std::uint32_t s,
                             std::uint64_t count, RngStream& rng);

/// Deliberately wrong sampler for negative controls: uniform over M_n
/// conditioned on det != 0 rather than det a unit. Over a non-field ring
/// this is NOT the Haar law on GL_n (it also emits non-invertible
/// matrices whose determinant is a nonzero non-unit).
Matrix sample_gl_nonzero_det(const RingPtr& ring, std::uint32_t n, RngStream& rng,
                             std::uint64_t max_attempts = 1'000'000);

}  // namespace haarmod
