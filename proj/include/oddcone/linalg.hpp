#pragma once

#include "matrix.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace oddcone {

// Reduced row echelon form with the row operations accumulated:
//   ops * input == rref,  ops invertible.
// Pivots are chosen leftmost-first, pivot rows swapped to the top in order,
// pivot entries normalized to 1 and cleared in every other row.  Fully
// deterministic: the first usable row is always taken.
struct RowReduction {
    Matrix rref;
    Matrix ops;
    std::vector<int> pivot_cols;
};

inline RowReduction row_reduce(const Matrix& input) {
    RowReduction out;
    out.rref = input;
    out.ops = Matrix::identity(input.rows());
    Matrix& m = out.rref;
    Matrix& e = out.ops;
    int cur = 0;
    for (int col = 0; col < m.cols() && cur < m.rows(); ++col) {
        int piv = -1;
        for (int i = cur; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != cur) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(cur, j), m(piv, j));
            for (int j = 0; j < e.cols(); ++j) std::swap(e(cur, j), e(piv, j));
        }
        Rational inv = m(cur, col).inverse();
        for (int j = 0; j < m.cols(); ++j) m(cur, j) *= inv;
        for (int j = 0; j < e.cols(); ++j) e(cur, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == cur || m(i, col).is_zero()) continue;
            Rational f = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(cur, j);
            for (int j = 0; j < e.cols(); ++j) e(i, j) -= f * e(cur, j);
        }
        out.pivot_cols.push_back(col);
        ++cur;
    }
    return out;
}

inline int rank(const Matrix& m) { return static_cast<int>(row_reduce(m).pivot_cols.size()); }

inline Rational det(Matrix m) {
    if (!m.is_square()) throw std::invalid_argument("det: not square");
    Rational d(1);
    for (int col = 0; col < m.cols(); ++col) {
        int piv = -1;
        for (int i = col; i < m.rows(); ++i)
            if (!m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) return Rational(0);
        if (piv != col) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m(col, j), m(piv, j));
            d = -d;
        }
        d *= m(col, col);
        Rational inv = m(col, col).inverse();
        for (int i = col + 1; i < m.rows(); ++i) {
            if (m(i, col).is_zero()) continue;
            Rational f = m(i, col) * inv;
            for (int j = col; j < m.cols(); ++j) m(i, j) -= f * m(col, j);
        }
    }
    return d;
}

// Throws std::invalid_argument on singular (or non-square) input.
inline Matrix inverse(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("inverse: not square");
    RowReduction rr = row_reduce(m);
    if (static_cast<int>(rr.pivot_cols.size()) != m.rows())
        throw std::invalid_argument("inverse: singular matrix");
    return rr.ops;  // rref == I, so ops * m == I
}

inline Matrix mat_pow(Matrix m, int k) {
    if (!m.is_square()) throw std::invalid_argument("mat_pow: not square");
    if (k < 0) throw std::invalid_argument("mat_pow: negative power");
    Matrix r = Matrix::identity(m.rows());
    while (k > 0) {
        if (k & 1) r = r * m;
        m = m * m;
        k >>= 1;
    }
    return r;
}

// inverse(A) * X * B == diag(I_r, 0) with A, B invertible and r == rank(X).
struct RankNormalForm {
    Matrix A;  // rows(X) x rows(X)
    Matrix B;  // cols(X) x cols(X)
    int r = 0;
};

inline RankNormalForm rank_normal_form(const Matrix& x) {
    RowReduction rr = row_reduce(x);
    RankNormalForm out;
    out.r = static_cast<int>(rr.pivot_cols.size());
    out.A = inverse(rr.ops);
    Matrix t = rr.rref;
    Matrix e = Matrix::identity(x.cols());
    // Swap pivot columns into leading position, then clear what remains.
    for (int i = 0; i < out.r; ++i) {
        int pc = rr.pivot_cols[i];
        if (pc != i) {
            for (int k = 0; k < t.rows(); ++k) std::swap(t(k, i), t(k, pc));
            for (int k = 0; k < e.rows(); ++k) std::swap(e(k, i), e(k, pc));
        }
        // pivot_cols is increasing, so earlier swaps never move a later pivot.
    }
    for (int c = out.r; c < t.cols(); ++c)
        for (int i = 0; i < out.r; ++i) {
            Rational f = t(i, c);
            if (f.is_zero()) continue;
            for (int k = 0; k < t.rows(); ++k) t(k, c) -= f * t(k, i);
            for (int k = 0; k < e.rows(); ++k) e(k, c) -= f * e(k, i);
        }
    out.B = e;
    return out;
}

// T == input * E, where T is the reduced column echelon form: unit pivots at
// the top of their columns, each pivot alone in its row, pivot rows strictly
// increasing left to right, zero columns last.
struct ColumnEchelon {
    Matrix T;
    Matrix E;
    std::vector<int> pivot_rows;
};

inline ColumnEchelon column_echelon(const Matrix& m) {
    RowReduction rr = row_reduce(m.transpose());
    return ColumnEchelon{rr.rref.transpose(), rr.ops.transpose(), rr.pivot_cols};
}

// T == E * input, reduced row echelon (same as row_reduce; kept for symmetry).
struct RowEchelon {
    Matrix T;
    Matrix E;
    std::vector<int> pivot_cols;
};

inline RowEchelon row_echelon(const Matrix& m) {
    RowReduction rr = row_reduce(m);
    return RowEchelon{rr.rref, rr.ops, rr.pivot_cols};
}

// Variant used inside the canonical-form reduction: no row swaps, so row
// positions keep their meaning.  For each column (left to right) the first
// unused row with a nonzero entry becomes a pivot; the pivot is normalized
// and its column cleared everywhere else.  ops * input == result.
struct RowReductionNoSort {
    Matrix result;
    Matrix ops;
    std::vector<std::pair<int, int>> pivots;  // (row, col), cols increasing
};

inline RowReductionNoSort row_reduce_nosort(const Matrix& input) {
    RowReductionNoSort out;
    out.result = input;
    out.ops = Matrix::identity(input.rows());
    Matrix& m = out.result;
    Matrix& e = out.ops;
    std::vector<bool> used(m.rows(), false);
    for (int col = 0; col < m.cols(); ++col) {
        int piv = -1;
        for (int i = 0; i < m.rows(); ++i)
            if (!used[i] && !m(i, col).is_zero()) { piv = i; break; }
        if (piv < 0) continue;
        used[piv] = true;
        Rational inv = m(piv, col).inverse();
        for (int j = 0; j < m.cols(); ++j) m(piv, j) *= inv;
        for (int j = 0; j < e.cols(); ++j) e(piv, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == piv || m(i, col).is_zero()) continue;
            Rational f = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(piv, j);
            for (int j = 0; j < e.cols(); ++j) e(i, j) -= f * e(piv, j);
        }
        out.pivots.emplace_back(piv, col);
    }
    return out;
}

// Basis of the right null space, one vector per free column of the rref,
// in increasing free-column order (the standard back-substitution basis).
inline std::vector<std::vector<Rational>> nullspace_basis(const Matrix& m) {
    RowReduction rr = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : rr.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[c]) continue;
        std::vector<Rational> v(m.cols());
        v[c] = 1;
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i) v[rr.pivot_cols[i]] = -rr.rref(static_cast<int>(i), c);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Incremental exact span membership: keeps a reduced generating set.
class SpanReducer {
public:
    // Reduces v against the stored rows; if a nonzero residue remains it is
    // normalized and inserted.  Returns true when the dimension grew.
    bool add(std::vector<Rational> v) {
        if (!reduce(v)) return false;
        int p = first_nonzero(v);
        Rational inv = v[p].inverse();
        for (auto& x : v) x *= inv;
        // Clear the new pivot column in the existing rows to stay reduced.
        for (auto& row : rows_) {
            Rational f = row.second[p];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j) row.second[j] -= f * v[j];
        }
        rows_.emplace_back(p, std::move(v));
        return true;
    }

    bool contains(std::vector<Rational> v) const { return !reduce(v); }

    int dim() const { return static_cast<int>(rows_.size()); }

private:
    // Returns true iff a nonzero residue is left in v.
    bool reduce(std::vector<Rational>& v) const {
        for (const auto& [p, row] : rows_) {
            Rational f = v[p];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] -= f * row[j];
        }
        return first_nonzero(v) >= 0;
    }

    static int first_nonzero(const std::vector<Rational>& v) {
        for (size_t j = 0; j < v.size(); ++j)
            if (!v[j].is_zero()) return static_cast<int>(j);
        return -1;
    }

    std::vector<std::pair<int, std::vector<Rational>>> rows_;  // (pivot, row)
};

inline std::vector<Rational> flatten(const Matrix& m) {
    std::vector<Rational> v;
    v.reserve(static_cast<size_t>(m.rows()) * m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
    return v;
}

// Nilpotent Jordan block matrix with eigenvalue 0 and 1s on the
// superdiagonal inside each block; block sizes given by the partition
// (weakly decreasing, all parts >= 1).
inline Matrix jordan_matrix(const std::vector<int>& partition) {
    int n = 0;
    int prev = 1 << 30;
    for (int k : partition) {
        if (k < 1 || k > prev) throw std::invalid_argument("jordan_matrix: bad partition");
        prev = k;
        n += k;
    }
    Matrix j(n, n);
    int off = 0;
    for (int k : partition) {
        for (int i = 0; i + 1 < k; ++i) j(off + i, off + i + 1) = 1;
        off += k;
    }
    return j;
}

// Jordan normal form of a nilpotent matrix:
//   inverse(P) * M * P == jordan_matrix(partition).
// Throws std::invalid_argument when M is not nilpotent.  Chains are built
// down the kernel filtration with leftmost-first pivot choices, so the
// result is deterministic.
struct NilpotentJordan {
    Matrix P;
    std::vector<int> partition;  // weakly decreasing
};

inline NilpotentJordan nilpotent_jordan(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("nilpotent_jordan: not square");
    const int n = m.rows();
    if (n == 0) return NilpotentJordan{Matrix(0, 0), {}};

    // Nilpotency index d: smallest d with M^d == 0.
    std::vector<Matrix> pw;  // pw[i] == M^i
    pw.push_back(Matrix::identity(n));
    int d = -1;
    for (int i = 1; i <= n; ++i) {
        pw.push_back(pw.back() * m);
        if (pw.back().is_zero()) { d = i; break; }
    }
    if (d < 0) throw std::invalid_argument("nilpotent_jordan: matrix is not nilpotent");

    auto col_of = [](const std::vector<Rational>& v) {
        Matrix c(static_cast<int>(v.size()), 1);
        for (size_t i = 0; i < v.size(); ++i) c(static_cast<int>(i), 0) = v[i];
        return c;
    };

    struct Chain {
        Matrix top;
        int height;
    };
    std::vector<Chain> chains;

    // Walk the kernel filtration K_d >= K_{d-1} >= ... >= K_1 from the top.
    // New chain tops at height i are chosen from ker(M^i) independent of
    // ker(M^{i-1}) together with the one-step images of the taller chains.
    for (int i = d; i >= 1; --i) {
        SpanReducer u;
        if (i > 1)
            for (auto& v : nullspace_basis(pw[i - 1])) u.add(std::move(v));
        for (const Chain& ch : chains) u.add(flatten(pw[ch.height - i] * ch.top));
        for (auto& v : nullspace_basis(pw[i])) {
            if (u.contains(v)) continue;
            Matrix top = col_of(v);
            u.add(std::move(v));
            chains.push_back(Chain{std::move(top), i});
        }
    }

    NilpotentJordan out;
    out.P = Matrix(n, n);
    int col = 0;
    for (const Chain& ch : chains) {
        out.partition.push_back(ch.height);
        // Columns M^{h-1}v, ..., Mv, v: upper Jordan block convention.
        for (int e = ch.height - 1; e >= 0; --e) out.P.set_block(0, col++, pw[e] * ch.top);
    }
    if (col != n) throw std::logic_error("nilpotent_jordan: chain basis is not a basis");
    if (inverse(out.P) * m * out.P != jordan_matrix(out.partition))
        throw std::logic_error("nilpotent_jordan: verification failed");
    return out;
}

}  // namespace oddcone
