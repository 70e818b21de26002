#pragma once

#include <cstdint>
#include <vector>

#include "haarmod/rings.hpp"

namespace haarmod {

/// Dense row-major matrix over a finite ring, entries stored as the ring's
/// canonical integer indices. Value semantics; indices are 0-based here
/// (file formats and CLI documentation speak 1-based).
class Matrix {
public:
    Matrix(RingPtr ring, std::uint32_t rows, std::uint32_t cols);
    Matrix(RingPtr ring, std::uint32_t rows, std::uint32_t cols,
           std::vector<std::uint64_t> entries);

    static Matrix identity(RingPtr ring, std::uint32_t n);

    const Ring& ring() const { return *ring_; }
    const RingPtr& ring_ptr() const { return ring_; }
    std::uint32_t rows() const { return rows_; }
    std::uint32_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    std::uint64_t at(std::uint32_t i, std::uint32_t j) const {
        return entries_[std::size_t{i} * cols_ + j];
    }
    void set(std::uint32_t i, std::uint32_t j, std::uint64_t v);

    const std::vector<std::uint64_t>& entries() const { return entries_; }

    /// Structural equality: same ring descriptor, shape, and entries.
    bool operator==(const Matrix& other) const;

private:
    RingPtr ring_;
    std::uint32_t rows_, cols_;
    std::vector<std::uint64_t> entries_;
};

Matrix add(const Matrix& a, const Matrix& b);
Matrix mul(const Matrix& a, const Matrix& b);

/// Division-free determinant (Berkowitz), valid over every commutative
/// ring; O(n^4) ring operations.
std::uint64_t determinant(const Matrix& a);

/// The defining invertibility test: determinant is a unit.
bool is_invertible_via_det(const Matrix& a);

/// Invertibility via residue-field ranks: over a field, rank n; over a
/// local ring, the residue matrix has rank n; over Z_m, the reduction mod
/// every prime divisor has rank n. Agrees with is_invertible_via_det.
bool is_invertible(const Matrix& a);

/// Upper-left s x s corner.
Matrix truncate(const Matrix& a, std::uint32_t s);

/// Row rank by Gaussian elimination. The ring must be a field.
std::uint32_t rank_over_field(const Matrix& a);

/// Entrywise CRT decomposition of a matrix over Z_m, one component per
/// prime power. Respects products and invertibility.
std::vector<Matrix> crt_split_matrix(const Matrix& a);

/// Inverse of crt_split_matrix.
Matrix crt_combine_matrix(const std::vector<Matrix>& parts,
                          const std::shared_ptr<const ZmRing>& ring);

}  // namespace haarmod
