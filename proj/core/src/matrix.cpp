#include "haarmod/matrix.hpp"

#include <stdexcept>
#include <utility>

namespace haarmod {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

Matrix::Matrix(RingPtr ring, std::uint32_t rows, std::uint32_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      entries_(std::size_t{rows} * cols, 0) {
    require(ring_ != nullptr, "Matrix: ring required");
    require(rows_ >= 1 && cols_ >= 1, "Matrix: dimensions must be positive");
}

Matrix::Matrix(RingPtr ring, std::uint32_t rows, std::uint32_t cols,
               std::vector<std::uint64_t> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(ring_ != nullptr, "Matrix: ring required");
    require(rows_ >= 1 && cols_ >= 1, "Matrix: dimensions must be positive");
    require(entries_.size() == std::size_t{rows_} * cols_, "Matrix: wrong entry count");
    for (std::uint64_t e : entries_) {
        if (e >= ring_->size()) throw std::invalid_argument("Matrix: entry out of ring range");
    }
}

Matrix Matrix::identity(RingPtr ring, std::uint32_t n) {
    Matrix m(std::move(ring), n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, m.ring().one());
    return m;
}

void Matrix::set(std::uint32_t i, std::uint32_t j, std::uint64_t v) {
    require(i < rows_ && j < cols_, "Matrix::set: index out of range");
    if (v >= ring_->size()) throw std::invalid_argument("Matrix::set: entry out of ring range");
    entries_[std::size_t{i} * cols_ + j] = v;
}

bool Matrix::operator==(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           same_ring(*ring_, *other.ring_) && entries_ == other.entries_;
}

Matrix add(const Matrix& a, const Matrix& b) {
    require(same_ring(a.ring(), b.ring()), "add: ring mismatch");
    require(a.rows() == b.rows() && a.cols() == b.cols(), "add: shape mismatch");
    const Ring& r = a.ring();
    std::vector<std::uint64_t> out(a.entries().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.add(a.entries()[i], b.entries()[i]);
    return Matrix(a.ring_ptr(), a.rows(), a.cols(), std::move(out));
}

Matrix mul(const Matrix& a, const Matrix& b) {
    require(same_ring(a.ring(), b.ring()), "mul: ring mismatch");
    require(a.cols() == b.rows(), "mul: shape mismatch");
    const Ring& r = a.ring();
    Matrix out(a.ring_ptr(), a.rows(), b.cols());
    for (std::uint32_t i = 0; i < a.rows(); ++i) {
        for (std::uint32_t j = 0; j < b.cols(); ++j) {
            std::uint64_t acc = 0;
            for (std::uint32_t k = 0; k < a.cols(); ++k) {
                acc = r.add(acc, r.mul(a.at(i, k), b.at(k, j)));
            }
            out.set(i, j, acc);
        }
    }
    return out;
}

std::uint64_t determinant(const Matrix& a) {
    require(a.is_square(), "determinant: matrix must be square");
    const Ring& r = a.ring();
    const std::uint32_t n = a.rows();
    if (n == 1) return a.at(0, 0);

    // Berkowitz: peel leading rows/columns, keeping the characteristic
    // polynomial (leading coefficient first) of the trailing principal
    // block, and multiply by the Toeplitz matrix built from
    // (1, -a_ii, -R C, -R M C, -R M^2 C, ...).
    std::vector<std::uint64_t> chi = {r.one(), r.neg(a.at(n - 1, n - 1))};
    for (std::uint32_t i = n - 1; i-- > 0;) {
        const std::uint32_t m = n - 1 - i;  // trailing block size
        std::vector<std::uint64_t> t(m + 2);
        t[0] = r.one();
        t[1] = r.neg(a.at(i, i));
        std::vector<std::uint64_t> v(m);  // M^k C, starting at k = 0
        for (std::uint32_t j = 0; j < m; ++j) v[j] = a.at(i + 1 + j, i);
        for (std::uint32_t k = 0; k + 2 <= m + 1; ++k) {
            std::uint64_t dot = 0;
            for (std::uint32_t j = 0; j < m; ++j) {
                dot = r.add(dot, r.mul(a.at(i, i + 1 + j), v[j]));
            }
            t[k + 2] = r.neg(dot);
            if (k + 2 <= m) {
                std::vector<std::uint64_t> w(m, 0);
                for (std::uint32_t row = 0; row < m; ++row) {
                    std::uint64_t acc = 0;
                    for (std::uint32_t col = 0; col < m; ++col) {
                        acc = r.add(acc, r.mul(a.at(i + 1 + row, i + 1 + col), v[col]));
                    }
                    w[row] = acc;
                }
                v = std::move(w);
            }
        }
        std::vector<std::uint64_t> next(m + 2, 0);
        for (std::uint32_t row = 0; row < m + 2; ++row) {
            std::uint64_t acc = 0;
            for (std::uint32_t col = 0; col <= row && col < chi.size(); ++col) {
                acc = r.add(acc, r.mul(t[row - col], chi[col]));
            }
            next[row] = acc;
        }
        chi = std::move(next);
    }
    // chi is det(xI - A); its constant term is (-1)^n det(A).
    std::uint64_t d = chi[n];
    return (n % 2 == 1) ? r.neg(d) : d;
}

bool is_invertible_via_det(const Matrix& a) {
    require(a.is_square(), "is_invertible: matrix must be square");
    return a.ring().is_unit(determinant(a));
}

namespace {

// rank of the mod-p reduction of the entries, entries reduced by `mod`
std::uint32_t rank_mod_prime(const Matrix& a, std::uint64_t p) {
    auto field = make_zm(p);
    std::vector<std::uint64_t> reduced(a.entries().size());
    for (std::size_t i = 0; i < reduced.size(); ++i) reduced[i] = a.entries()[i] % p;
    return rank_over_field(Matrix(field, a.rows(), a.cols(), std::move(reduced)));
}

}  // namespace

bool is_invertible(const Matrix& a) {
    require(a.is_square(), "is_invertible: matrix must be square");
    const Ring& r = a.ring();
    const std::uint32_t n = a.rows();
    switch (r.kind()) {
        case RingKind::Fq:
            return rank_over_field(a) == n;
        case RingKind::LocalPrimePower:
        case RingKind::LocalTruncatedPoly: {
            const auto& lr = static_cast<const LocalRing&>(r);
            auto field = lr.residue_field_ptr();
            std::vector<std::uint64_t> res(a.entries().size());
            for (std::size_t i = 0; i < res.size(); ++i) res[i] = lr.residue(a.entries()[i]);
            return rank_over_field(Matrix(field, n, n, std::move(res))) == n;
        }
        case RingKind::Zm: {
            const auto& zm = static_cast<const ZmRing&>(r);
            for (const auto& [p, e] : zm.factorization().factors) {
                if (rank_mod_prime(a, p) != n) return false;
            }
            return true;
        }
    }
    return false;
}

Matrix truncate(const Matrix& a, std::uint32_t s) {
    require(s >= 1 && s <= a.rows() && s <= a.cols(), "truncate: corner size out of range");
    Matrix out(a.ring_ptr(), s, s);
    for (std::uint32_t i = 0; i < s; ++i) {
        for (std::uint32_t j = 0; j < s; ++j) out.set(i, j, a.at(i, j));
    }
    return out;
}

std::uint32_t rank_over_field(const Matrix& a) {
    if (!a.ring().is_field())
        throw std::domain_error("rank_over_field: " + a.ring().name() + " is not a field");
    const Ring& f = a.ring();
    const std::uint32_t rows = a.rows(), cols = a.cols();
    std::vector<std::uint64_t> w = a.entries();
    auto at = [&](std::uint32_t i, std::uint32_t j) -> std::uint64_t& {
        return w[std::size_t{i} * cols + j];
    };
    std::uint32_t rank = 0;
    for (std::uint32_t col = 0; col < cols && rank < rows; ++col) {
        std::uint32_t pivot = rank;
        while (pivot < rows && at(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::uint32_t j = 0; j < cols; ++j) std::swap(at(rank, j), at(pivot, j));
        std::uint64_t scale = f.inv(at(rank, col));
        for (std::uint32_t j = col; j < cols; ++j) at(rank, j) = f.mul(at(rank, j), scale);
        for (std::uint32_t i = rank + 1; i < rows; ++i) {
            std::uint64_t factor = at(i, col);
            if (factor == 0) continue;
            for (std::uint32_t j = col; j < cols; ++j) {
                at(i, j) = f.sub(at(i, j), f.mul(factor, at(rank, j)));
            }
        }
        ++rank;
    }
    return rank;
}

std::vector<Matrix> crt_split_matrix(const Matrix& a) {
    if (a.ring().kind() != RingKind::Zm)
        throw std::domain_error("crt_split_matrix: ring must be Z_m");
    const auto& zm = static_cast<const ZmRing&>(a.ring());
    std::vector<Matrix> parts;
    parts.reserve(zm.factorization().factors.size());
    for (const auto& [p, r] : zm.factorization().factors) {
        std::uint64_t q = pow_u64_checked(p, r, zm.modulus());
        std::vector<std::uint64_t> entries(a.entries().size());
        for (std::size_t i = 0; i < entries.size(); ++i) entries[i] = a.entries()[i] % q;
        parts.emplace_back(make_zm(q), a.rows(), a.cols(), std::move(entries));
    }
    return parts;
}

Matrix crt_combine_matrix(const std::vector<Matrix>& parts,
                          const std::shared_ptr<const ZmRing>& ring) {
    require(ring != nullptr, "crt_combine_matrix: ring required");
    const auto& factors = ring->factorization().factors;
    require(parts.size() == factors.size(), "crt_combine_matrix: component count mismatch");
    for (std::size_t i = 0; i < parts.size(); ++i) {
        std::uint64_t q = pow_u64_checked(factors[i].prime, factors[i].exponent, ring->modulus());
        require(parts[i].ring().size() == q, "crt_combine_matrix: component modulus mismatch");
        require(parts[i].rows() == parts[0].rows() && parts[i].cols() == parts[0].cols(),
                "crt_combine_matrix: component shape mismatch");
    }
    Matrix out(ring, parts[0].rows(), parts[0].cols());
    std::vector<std::uint64_t> comp(parts.size());
    for (std::uint32_t i = 0; i < out.rows(); ++i) {
        for (std::uint32_t j = 0; j < out.cols(); ++j) {
            for (std::size_t c = 0; c < parts.size(); ++c) comp[c] = parts[c].at(i, j);
            out.set(i, j, ring->crt_combine(comp));
        }
    }
    return out;
}

}  // namespace haarmod
