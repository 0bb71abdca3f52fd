#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "ncser/field.hpp"

namespace ncser {

/// A vector of field elements, entries reduced mod p.
using FVec = std::vector<long long>;

/// A matrix over GF(p), stored as a row list. Zero-row matrices are legal
/// (they model constant coding functions with a one-symbol alphabet).
struct Matrix {
    FieldSpec field;
    long long cols = 0;
    std::vector<FVec> rows;

    bool operator==(const Matrix&) const = default;
};

inline Matrix make_matrix(FieldSpec field, long long cols, std::vector<FVec> rows) {
    for (auto& r : rows) {
        if ((long long)r.size() != cols)
            throw std::invalid_argument("matrix row has wrong length");
        for (auto& x : r) x = field.reduce(x);
    }
    return Matrix{field, cols, std::move(rows)};
}

inline Matrix identity_matrix(FieldSpec field, long long n) {
    std::vector<FVec> rows(n, FVec(n, 0));
    for (long long i = 0; i < n; ++i) rows[i][i] = 1;
    return Matrix{field, n, std::move(rows)};
}

/// A linear subspace of GF(p)^ambient in canonical form: the stored basis is
/// the reduced row echelon form of any generating set (leading coefficient 1,
/// pivot columns strictly increasing, zeros above and below each pivot).
/// Two subspaces are equal as sets of vectors iff their bases compare equal.
struct Subspace {
    FieldSpec field;
    long long ambient = 0;
    std::vector<FVec> basis;

    long long dim() const { return (long long)basis.size(); }
    bool operator==(const Subspace&) const = default;
};

/// Canonical row space of the given rows (RREF, zero rows discarded).
inline Subspace rref(std::vector<FVec> rows, long long ambient, FieldSpec field) {
    for (const auto& r : rows)
        if ((long long)r.size() != ambient)
            throw std::invalid_argument("rref: mixed row dimensions");
    std::size_t rank = 0;
    for (long long c = 0; c < ambient && rank < rows.size(); ++c) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] % field.p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        long long scale = field.inv(rows[rank][c]);
        for (auto& x : rows[rank]) x = field.mul(field.reduce(x), scale);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank) continue;
            long long factor = field.reduce(rows[i][c]);
            if (factor == 0) continue;
            for (long long j = 0; j < ambient; ++j)
                rows[i][j] = field.sub(field.reduce(rows[i][j]), field.mul(factor, rows[rank][j]));
        }
        ++rank;
    }
    rows.resize(rank);
    return Subspace{field, ambient, std::move(rows)};
}

inline Subspace row_space(const Matrix& m) { return rref(m.rows, m.cols, m.field); }

inline Subspace zero_subspace(FieldSpec field, long long ambient) {
    return Subspace{field, ambient, {}};
}

inline Subspace full_subspace(FieldSpec field, long long ambient) {
    return row_space(identity_matrix(field, ambient));
}

namespace detail {
inline void require_compatible(const Subspace& a, const Subspace& b) {
    if (a.field != b.field) throw std::invalid_argument("subspace field mismatch");
    if (a.ambient != b.ambient) throw std::invalid_argument("subspace ambient dimension mismatch");
}
}  // namespace detail

/// True iff v reduces to zero against the subspace's RREF basis.
inline bool contains(const Subspace& s, const FVec& v) {
    if ((long long)v.size() != s.ambient)
        throw std::invalid_argument("contains: vector dimension mismatch");
    FVec w(v);
    for (auto& x : w) x = s.field.reduce(x);
    for (const auto& row : s.basis) {
        long long pc = 0;
        while (row[pc] == 0) ++pc;  // basis rows are nonzero
        long long factor = w[pc];
        if (factor == 0) continue;
        for (long long j = 0; j < s.ambient; ++j)
            w[j] = s.field.sub(w[j], s.field.mul(factor, row[j]));
    }
    return std::all_of(w.begin(), w.end(), [](long long x) { return x == 0; });
}

inline bool subspace_contains(const Subspace& outer, const Subspace& inner) {
    detail::require_compatible(outer, inner);
    return std::all_of(inner.basis.begin(), inner.basis.end(),
                       [&](const FVec& v) { return contains(outer, v); });
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b) {
    detail::require_compatible(a, b);
    std::vector<FVec> rows = a.basis;
    rows.insert(rows.end(), b.basis.begin(), b.basis.end());
    return rref(std::move(rows), a.ambient, a.field);
}

/// Orthogonal complement: the kernel of the basis matrix, canonicalized.
inline Subspace complement(const Subspace& s) {
    std::vector<long long> pivot_of_col(s.ambient, -1);
    for (std::size_t i = 0; i < s.basis.size(); ++i) {
        long long pc = 0;
        while (s.basis[i][pc] == 0) ++pc;
        pivot_of_col[pc] = (long long)i;
    }
    std::vector<FVec> rows;
    for (long long c = 0; c < s.ambient; ++c) {
        if (pivot_of_col[c] != -1) continue;
        FVec v(s.ambient, 0);
        v[c] = 1;
        for (long long j = 0; j < s.ambient; ++j)
            if (pivot_of_col[j] != -1) v[j] = s.field.neg(s.basis[pivot_of_col[j]][c]);
        rows.push_back(std::move(v));
    }
    return rref(std::move(rows), s.ambient, s.field);
}

/// Canonical intersection, computed as the complement of the sum of
/// complements. The dimension formula is re-checked on every call.
inline Subspace subspace_intersect(const Subspace& a, const Subspace& b) {
    detail::require_compatible(a, b);
    Subspace result = complement(subspace_sum(complement(a), complement(b)));
    if (result.dim() + subspace_sum(a, b).dim() != a.dim() + b.dim())
        throw std::logic_error("subspace_intersect: dimension formula violated");
    return result;
}

/// Deterministic choice of a vector in b that is not in a; a must be
/// contained in b. Returns the first canonical basis row of b outside a,
/// or nullopt when a == b.
inline std::optional<FVec> pick_outside(const Subspace& b, const Subspace& a) {
    detail::require_compatible(a, b);
    if (!subspace_contains(b, a))
        throw std::invalid_argument("pick_outside: lower subspace not contained in upper");
    for (const auto& row : b.basis)
        if (!contains(a, row)) return row;
    return std::nullopt;
}

/// Standard Kronecker product; entry [(i*rb+k), (j*cb+l)] = A[i][j] * B[k][l].
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
    if (a.field != b.field) throw std::invalid_argument("kronecker: field mismatch");
    long long ra = (long long)a.rows.size(), rb = (long long)b.rows.size();
    std::vector<FVec> rows(ra * rb, FVec(a.cols * b.cols, 0));
    for (long long i = 0; i < ra; ++i)
        for (long long k = 0; k < rb; ++k)
            for (long long j = 0; j < a.cols; ++j)
                for (long long l = 0; l < b.cols; ++l)
                    rows[i * rb + k][j * b.cols + l] = a.field.mul(a.rows[i][j], b.rows[k][l]);
    return Matrix{a.field, a.cols * b.cols, std::move(rows)};
}

/// Kronecker product of a single row with a row vector t (dim q).
inline FVec kronecker_row(const FVec& r, const FVec& t, FieldSpec field) {
    FVec out(r.size() * t.size(), 0);
    for (std::size_t j = 0; j < r.size(); ++j)
        for (std::size_t l = 0; l < t.size(); ++l)
            out[j * t.size() + l] = field.mul(field.reduce(r[j]), field.reduce(t[l]));
    return out;
}

inline long long rank_of(const std::vector<FVec>& rows, long long ambient, FieldSpec field) {
    return rref(rows, ambient, field).dim();
}

}  // namespace ncser
