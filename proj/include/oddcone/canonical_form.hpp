#pragma once

#include "linalg.hpp"
#include "nilcone.hpp"
#include "orbit_census.hpp"
#include "superalgebra.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oddcone {

// ---------------------------------------------------------------------------
// Canonical form of an element of the odd nilpotent cone of gl(m|n).
//
// The reduction first normalizes X+ to diag(I_r, 0) and afterwards only acts
// by the stabilizer of that matrix, i.e. pairs
//     A = [A11 A12; 0 A22],   B = [A11 0; B21 B22]
// with shared invertible corner A11.  Writing the blocks of X- against the
// splitting r + (n - r) rows, r + (m - r) columns as
//     X- = [Y11 Y12; Y21 Y22],
// such a pair transforms them to
//     Y11' = A11^-1 Y11 A11
//     Y12' = A11^-1 (Y11 A12 + Y12 A22)
//     Y21' = B22^-1 (Y21 - B21 A11^-1 Y11) A11
//     Y22' = B22^-1 (Y21 A12 + Y22 A22) - B22^-1 B21 A11^-1 (Y11 A12 + Y12 A22).
//
// Y11 is brought to a nilpotent Jordan matrix J and from then on A11 runs
// through centralizer(J).  The blocks of that centralizer against the Jordan
// chains are one-sided-justified upper triangular Toeplitz matrices; acting
// on matrices supported on chain-end rows (resp. chain-start columns), only
// a single scalar per block pair survives.  The reduction drives Y12 to unit
// columns at chain ends, Y21 to unit rows at chain starts, and the remaining
// corner of Y22 to diag(I_s, 0).
//
// Equal-size Jordan blocks are the delicate part: the surviving scalars form
// one shared GL(class size) acting simultaneously on the chain-end rows and
// chain-start columns of the class, plus independent one-sided corrections
// across classes of different sizes.  Classes are processed largest size
// first; within a class the column-pivot set is echelonized first, then the
// row-pivot set is aligned against it, which places shared pivots on the
// leading blocks of the class.  Cross-class corrections towards earlier
// (larger) classes only spill into rows that are not chain ends and columns
// that are not chain starts, and such spill is removable by A12/B21 moves
// that touch nothing but Y22.
// ---------------------------------------------------------------------------

struct StageRecord {
    std::string stage;
    GroupElement g;  // cumulative: act(g, input) == y
    OddElement y;
};

struct CanonicalResult {
    GroupElement g;  // act(g, input) == y
    OrbitParams params;
    OddElement y;
    std::vector<StageRecord> trace;
};

// Centralizer generator L(j, i, coeff), 1 <= i < j <= #blocks: identity plus
// the (j, i) block pattern coeff * (0 | I), a right-justified identity (block
// j is not longer than block i).  Commutes with jordan_matrix(partition);
// left multiplication adds coeff * (row f_i) to row f_j on any matrix whose
// nonzero rows are chain ends f_1, ..., f_t.
inline Matrix build_L(const std::vector<int>& partition, int j, int i, const Rational& coeff) {
    int t = static_cast<int>(partition.size());
    if (!(1 <= i && i < j && j <= t)) throw std::invalid_argument("build_L: need 1 <= i < j <= t");
    std::vector<int> g = chain_start_cols(partition);
    int r = 0;
    for (int k : partition) r += k;
    Matrix l = Matrix::identity(r);
    int kj = partition[j - 1], ki = partition[i - 1];
    for (int a = 0; a < kj; ++a) l(g[j - 1] - 1 + a, g[i - 1] - 1 + (ki - kj) + a) += coeff;
    return l;
}

// Centralizer generator M(j, alpha), alpha != 0: scales the j-th block.
inline Matrix build_M(const std::vector<int>& partition, int j, const Rational& alpha) {
    int t = static_cast<int>(partition.size());
    if (!(1 <= j && j <= t)) throw std::invalid_argument("build_M: block index out of range");
    if (alpha.is_zero()) throw std::invalid_argument("build_M: alpha must be nonzero");
    std::vector<int> g = chain_start_cols(partition);
    int r = 0;
    for (int k : partition) r += k;
    Matrix m = Matrix::identity(r);
    for (int a = 0; a < partition[j - 1]; ++a) m(g[j - 1] - 1 + a, g[j - 1] - 1 + a) = alpha;
    return m;
}

// Recognizes exactly the canonical shapes: X+ = diag(I_r, 0); X- made of a
// Jordan matrix, strictly increasing unit columns at chain ends, strictly
// increasing unit rows at chain starts, and diag(I_s, 0) in the remaining
// corner.  Returns the parameters when everything matches.
inline std::optional<OrbitParams> is_canonical(const OddElement& y) {
    const int m = y.m, n = y.n;
    int r = 0;
    while (r < std::min(m, n) && y.xplus(r, r).is_one()) ++r;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
            if (!(i == j && i < r) && !y.xplus(i, j).is_zero()) return std::nullopt;

    OrbitParams p;
    p.r = r;
    // Partition: Y11 must vanish off the superdiagonal, carry only 0/1 on it,
    // and the resulting block sizes must weakly decrease.
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            const Rational& v = y.xminus(i, j);
            if (j == i + 1) {
                if (!v.is_zero() && !v.is_one()) return std::nullopt;
            } else if (!v.is_zero()) {
                return std::nullopt;
            }
        }
    {
        int run = 1;
        for (int i = 0; i < r; ++i) {
            bool link = i + 1 < r && y.xminus(i, i + 1).is_one();
            if (link) {
                ++run;
            } else {
                p.partition.push_back(run);
                run = 1;
            }
        }
        for (size_t i = 1; i < p.partition.size(); ++i)
            if (p.partition[i] > p.partition[i - 1]) return std::nullopt;
    }
    std::vector<int> f = chain_end_rows(p.partition);
    std::vector<int> g = chain_start_cols(p.partition);

    // Y12 = (C | 0) with strictly increasing unit columns at chain ends.
    int r1 = 0;
    {
        bool done = false;
        int last = -1;
        for (int c = 0; c < m - r; ++c) {
            int hits = 0, pos = -1;
            for (int i = 0; i < r; ++i)
                if (!y.xminus(i, r + c).is_zero()) {
                    if (!y.xminus(i, r + c).is_one()) return std::nullopt;
                    ++hits;
                    pos = i;
                }
            if (hits == 0) {
                done = true;
            } else {
                if (done || hits != 1 || pos <= last) return std::nullopt;
                if (!std::binary_search(f.begin(), f.end(), pos + 1)) return std::nullopt;
                last = pos;
                p.c_pivots.push_back(pos + 1);
                ++r1;
            }
        }
    }
    // Y21 = (R ; 0) with strictly increasing unit rows at chain starts.
    int r2 = 0;
    {
        bool done = false;
        int last = -1;
        for (int q = 0; q < n - r; ++q) {
            int hits = 0, pos = -1;
            for (int j = 0; j < r; ++j)
                if (!y.xminus(r + q, j).is_zero()) {
                    if (!y.xminus(r + q, j).is_one()) return std::nullopt;
                    ++hits;
                    pos = j;
                }
            if (hits == 0) {
                done = true;
            } else {
                if (done || hits != 1 || pos <= last) return std::nullopt;
                if (!std::binary_search(g.begin(), g.end(), pos + 1)) return std::nullopt;
                last = pos;
                p.r_pivots.push_back(pos + 1);
                ++r2;
            }
        }
    }
    // Y22: zero outside the corner, diag(I_s, 0) inside it.
    int s = 0;
    {
        int corner_rows = n - r - r2, corner_cols = m - r - r1;
        while (s < std::min(corner_rows, corner_cols) &&
               y.xminus(r + r2 + s, r + r1 + s).is_one())
            ++s;
        for (int i = 0; i < n - r; ++i)
            for (int j = 0; j < m - r; ++j) {
                bool on_diag = i >= r2 && j >= r1 && (i - r2) == (j - r1) && (i - r2) < s;
                if (on_diag) continue;
                if (!y.xminus(r + i, r + j).is_zero()) return std::nullopt;
            }
    }
    p.s = s;
    try {
        validate_params(p, m, n);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    return p;
}

namespace detail {

struct Pipeline {
    const OddElement x0;
    int m, n;
    OddElement y;
    GroupElement g;
    bool with_trace;
    std::vector<StageRecord> trace;

    int r = 0;
    std::vector<int> part;
    std::vector<int> starts, ends;          // 0-based chain start/end rows
    std::vector<int> cpiv, rpiv;            // per block: Y12 column / Y21 row owning its pivot, or -1
    int s = 0;

    explicit Pipeline(const OddElement& x, bool wt)
        : x0(x), m(x.m), n(x.n), y(x), g(GroupElement::identity(x.m, x.n)), with_trace(wt) {}

    static void check(bool cond, const char* what) {
        if (!cond) throw std::logic_error(std::string("canonicalize: invariant violated: ") + what);
    }

    void record(const char* stage) {
        if (with_trace) trace.push_back(StageRecord{stage, g, y});
    }

    // Applies e, keeping act(g, x0) == y; every stage after the first must
    // stabilize X+.
    void apply(const GroupElement& e, bool allow_even_change = false) {
        OddElement ynew = act(e, y);
        if (!allow_even_change) check(ynew.xplus == y.xplus, "stage op moved the even normal form");
        y = std::move(ynew);
        g = compose(e, g);
    }

    // Stabilizer element of diag(I_r, 0) from its blocks.
    GroupElement stab(const Matrix& a11, const Matrix& a12, const Matrix& a22, const Matrix& b21,
                      const Matrix& b22) const {
        Matrix a(m, m), b(n, n);
        a.set_block(0, 0, a11);
        a.set_block(0, r, a12);
        a.set_block(r, r, a22);
        b.set_block(0, 0, a11);
        b.set_block(r, 0, b21);
        b.set_block(r, r, b22);
        return GroupElement(std::move(a), std::move(b));
    }

    Matrix y11() const { return y.xminus.block(0, 0, r, r); }
    Matrix y12() const { return y.xminus.block(0, r, r, m - r); }
    Matrix y21() const { return y.xminus.block(r, 0, n - r, r); }
    Matrix y22() const { return y.xminus.block(r, r, n - r, m - r); }

    Matrix jmat() const { return jordan_matrix(part); }

    // -- small op helpers ----------------------------------------------------

    void op_a11(const Matrix& a11) {
        check(a11 * jmat() == jmat() * a11, "A11 op must centralize the Jordan matrix");
        apply(stab(a11, Matrix(r, m - r), Matrix::identity(m - r), Matrix(n - r, r),
                   Matrix::identity(n - r)));
    }
    // Column operations on [Y12; Y22].
    void op_cols(const Matrix& a22) {
        apply(stab(Matrix::identity(r), Matrix(r, m - r), a22, Matrix(n - r, r),
                   Matrix::identity(n - r)));
    }
    // Row operations on [Y21 Y22]: y-block <- d * y-block.
    void op_rows(const Matrix& d) {
        apply(stab(Matrix::identity(r), Matrix(r, m - r), Matrix::identity(m - r),
                   Matrix(n - r, r), inverse(d)));
    }
    void op_a12(const Matrix& a12) {
        apply(stab(Matrix::identity(r), a12, Matrix::identity(m - r), Matrix(n - r, r),
                   Matrix::identity(n - r)));
    }
    void op_b21(const Matrix& b21) {
        apply(stab(Matrix::identity(r), Matrix(r, m - r), Matrix::identity(m - r), b21,
                   Matrix::identity(n - r)));
    }

    // Centralizer unit: identity plus coeff times the (bj, bi) block pattern
    // (0-based).  Right-justified when block bj is shorter, top-justified
    // when longer: both shapes commute with J.
    Matrix cj_unit(int bj, int bi, const Rational& coeff) const {
        Matrix z = Matrix::identity(r);
        int kj = part[bj], ki = part[bi];
        if (kj <= ki)
            for (int a = 0; a < kj; ++a) z(starts[bj] + a, starts[bi] + (ki - kj) + a) += coeff;
        else
            for (int a = 0; a < ki; ++a) z(starts[bj] + a, starts[bi] + a) += coeff;
        return z;
    }

    // Embeds an invertible c x c matrix w as block-scalars over the class of
    // equal-size blocks [lo, hi]: the (u, v) block becomes w(u-lo, v-lo) * I.
    Matrix class_embed(int lo, int hi, const Matrix& w) const {
        Matrix o = Matrix::identity(r);
        int k = part[lo];
        for (int u = lo; u <= hi; ++u)
            for (int v = lo; v <= hi; ++v)
                for (int d = 0; d < k; ++d) o(starts[u] + d, starts[v] + d) = w(u - lo, v - lo);
        return o;
    }

    // Zeroes every Y12 row that is not a chain end using A12 (adds J * A12 to
    // Y12; chain-end rows of J vanish, so they are untouched) and every Y21
    // column that is not a chain start using B21 (subtracts B21 * J from Y21;
    // chain-start columns of J vanish).  Both moves also change Y22, which is
    // reduced only later.
    void clear_offsupport() {
        bool need = false;
        Matrix a12(r, m - r);
        for (int b = 0; b < static_cast<int>(part.size()); ++b)
            for (int i = starts[b]; i < ends[b]; ++i)  // interior rows: i is not a chain end
                for (int c = 0; c < m - r; ++c)
                    if (!y.xminus(i, r + c).is_zero()) {
                        a12(i + 1, c) = -y.xminus(i, r + c);
                        need = true;
                    }
        if (need) op_a12(a12);
        need = false;
        Matrix b21(n - r, r);
        for (int b = 0; b < static_cast<int>(part.size()); ++b)
            for (int j = starts[b] + 1; j <= ends[b]; ++j)  // interior cols: j is not a chain start
                for (int q = 0; q < n - r; ++q)
                    if (!y.xminus(r + q, j).is_zero()) {
                        b21(q, j - 1) = y.xminus(r + q, j);
                        need = true;
                    }
        if (need) op_b21(b21);
        for (int b = 0; b < static_cast<int>(part.size()); ++b) {
            for (int i = starts[b]; i < ends[b]; ++i)
                for (int c = 0; c < m - r; ++c)
                    check(y.xminus(i, r + c).is_zero(), "off-chain-end row survived clearing");
            for (int j = starts[b] + 1; j <= ends[b]; ++j)
                for (int q = 0; q < n - r; ++q)
                    check(y.xminus(r + q, j).is_zero(), "off-chain-start column survived clearing");
        }
    }

    // -- stages ---------------------------------------------------------------

    void stage_even_normal_form() {
        RankNormalForm rnf = rank_normal_form(y.xplus);
        r = rnf.r;
        apply(GroupElement(rnf.A, rnf.B), /*allow_even_change=*/true);
        Matrix want(m, n);
        for (int i = 0; i < r; ++i) want(i, i) = 1;
        check(y.xplus == want, "X+ did not reach diag(I_r, 0)");
        record("even_rank_normal_form");
        record("restrict_to_even_stabilizer");  // marker: from here on X+ is frozen
    }

    void stage_jordanize() {
        NilpotentJordan nj = nilpotent_jordan(y11());
        part = nj.partition;
        starts.clear();
        ends.clear();
        for (int v : chain_start_cols(part)) starts.push_back(v - 1);
        for (int v : chain_end_rows(part)) ends.push_back(v - 1);
        apply(stab(nj.P, Matrix(r, m - r), Matrix::identity(m - r), Matrix(n - r, r),
                   Matrix::identity(n - r)));
        check(y11() == jmat(), "Y11 did not reach the Jordan matrix");
        record("jordanize_core");
    }

    void stage_clear_off_chain() {
        clear_offsupport();
        record("clear_off_chain_entries");
    }

    void stage_echelon_side_blocks() {
        ColumnEchelon ce = column_echelon(y12());
        op_cols(ce.E);
        check(y12() == ce.T, "Y12 echelon mismatch");
        RowEchelon re = row_echelon(y21());
        op_rows(re.E);
        check(y21() == re.T, "Y21 echelon mismatch");
        record("echelon_side_blocks");
    }

    // Joint reduction of Y12 and Y21 over the centralizer of J, one class of
    // equal-size Jordan blocks at a time, largest size first.
    void stage_align_pivots() {
        int t = static_cast<int>(part.size());
        cpiv.assign(t, -1);
        rpiv.assign(t, -1);

        for (int lo = 0; lo < t;) {
            int hi = lo;
            while (hi + 1 < t && part[hi + 1] == part[lo]) ++hi;
            reduce_class(lo, hi);
            lo = hi + 1;
        }

        // Final placement: pivot columns first, ordered by block; then the
        // zero columns.  Lives entirely in A22, so Y21 is untouched.
        {
            std::vector<int> order;
            for (int b = 0; b < t; ++b)
                if (cpiv[b] >= 0) order.push_back(cpiv[b]);
            Matrix e(m - r, m - r);
            std::vector<bool> taken(m - r, false);
            int pos = 0;
            for (int src : order) {
                e(src, pos++) = 1;
                taken[src] = true;
            }
            for (int src = 0; src < m - r; ++src)
                if (!taken[src]) e(src, pos++) = 1;
            if (m - r > 0) op_cols(e);
            int idx = 0;
            for (int b = 0; b < t; ++b)
                if (cpiv[b] >= 0) cpiv[b] = idx++;
        }
        // Y12 must now be (C | 0) with strictly increasing chain-end unit
        // columns.
        {
            Matrix v = y12();
            Matrix want(r, m - r);
            int idx = 0;
            for (int b = 0; b < t; ++b)
                if (cpiv[b] >= 0) want(ends[b], idx++) = 1;
            check(v == want, "Y12 is not (C | 0) after column alignment");
        }
        record("align_chain_end_columns");

        {
            std::vector<int> order;
            for (int b = 0; b < t; ++b)
                if (rpiv[b] >= 0) order.push_back(rpiv[b]);
            Matrix d(n - r, n - r);
            std::vector<bool> taken(n - r, false);
            int pos = 0;
            for (int src : order) {
                d(pos++, src) = 1;
                taken[src] = true;
            }
            for (int src = 0; src < n - r; ++src)
                if (!taken[src]) d(pos++, src) = 1;
            Matrix before = y12();
            if (n - r > 0) op_rows(d);
            int idx = 0;
            for (int b = 0; b < t; ++b)
                if (rpiv[b] >= 0) rpiv[b] = idx++;
            check(y12() == before, "row alignment disturbed Y12");
        }
        {
            Matrix v = y21();
            Matrix want(n - r, r);
            int idx = 0;
            for (int b = 0; b < t; ++b)
                if (rpiv[b] >= 0) want(idx++, starts[b]) = 1;
            check(v == want, "Y21 is not (R ; 0) after row alignment");
        }
        record("align_chain_start_rows");
    }

    void reduce_class(int lo, int hi) {
        const int c = hi - lo + 1;
        clear_offsupport();

        // Cross-class correction against the pivots of earlier (larger)
        // classes.  Earlier pivot columns are unit columns at chain-end rows
        // and earlier pivot rows are unit rows at chain-start columns, so a
        // single centralizer unit removes one residual entry; the opposite
        // side of each op only spills off-support (cleared afterwards).
        for (int bi = 0; bi < lo; ++bi) {
            // Y12 transforms by A11^-1 = I - v Z, Y21 by A11 = I + v Z itself,
            // hence the sign difference between the two clears.
            if (cpiv[bi] >= 0)
                for (int bj = lo; bj <= hi; ++bj) {
                    Rational v = y.xminus(ends[bj], r + cpiv[bi]);
                    if (!v.is_zero()) op_a11(cj_unit(bj, bi, v));
                }
            if (rpiv[bi] >= 0)
                for (int bj = lo; bj <= hi; ++bj) {
                    Rational v = y.xminus(r + rpiv[bi], starts[bj]);
                    if (!v.is_zero()) op_a11(cj_unit(bi, bj, -v));
                }
        }
        clear_offsupport();
        for (int bi = 0; bi < lo; ++bi) {
            if (cpiv[bi] >= 0)
                for (int bj = lo; bj <= hi; ++bj)
                    check(y.xminus(ends[bj], r + cpiv[bi]).is_zero(),
                          "cross-class column residue survived");
            if (rpiv[bi] >= 0)
                for (int bj = lo; bj <= hi; ++bj)
                    check(y.xminus(r + rpiv[bi], starts[bj]).is_zero(),
                          "cross-class row residue survived");
        }

        // Chain-end rows of the class, reduced by the shared GL(c): row
        // echelon with pivot rows sorted to the leading blocks.
        Matrix f(c, m - r);
        for (int u = 0; u < c; ++u)
            for (int cc = 0; cc < m - r; ++cc) f(u, cc) = y.xminus(ends[lo + u], r + cc);
        RowReduction rrf = row_reduce(f);
        const int a = static_cast<int>(rrf.pivot_cols.size());
        if (c > 0 && !(rrf.ops == Matrix::identity(c))) op_a11(class_embed(lo, hi, inverse(rrf.ops)));

        // Clear the pivot rows outside their pivot columns by column moves.
        {
            Matrix e = Matrix::identity(m - r);
            bool need = false;
            for (int q = 0; q < a; ++q) {
                int cq = rrf.pivot_cols[q];
                for (int cc = 0; cc < m - r; ++cc) {
                    if (cc == cq) continue;
                    Rational v = y.xminus(ends[lo + q], r + cc);
                    if (!v.is_zero()) {
                        e(cq, cc) -= v;
                        need = true;
                    }
                }
            }
            if (need) op_cols(e);
        }
        for (int q = 0; q < a; ++q) cpiv[lo + q] = rrf.pivot_cols[q];
        for (int q = 0; q < a; ++q) {
            for (int cc = 0; cc < m - r; ++cc)
                check(y.xminus(ends[lo + q], r + cc) == (cc == rrf.pivot_cols[q] ? Rational(1) : Rational(0)),
                      "class chain-end row is not a unit row");
        }
        for (int u = a; u < c; ++u)
            for (int cc = 0; cc < m - r; ++cc)
                check(y.xminus(ends[lo + u], r + cc).is_zero(), "unpivoted chain-end row is not zero");

        // Chain-start columns of the pivoted blocks: column echelon via the
        // shared GL(c) (acting on rows f and columns g simultaneously), with
        // the induced damage on the freshly created unit columns repaired by
        // a column move that mixes only those columns.
        int c0 = 0;
        std::vector<int> rho;
        if (a > 0) {
            Matrix g1(n - r, a);
            for (int q = 0; q < n - r; ++q)
                for (int u = 0; u < a; ++u) g1(q, u) = y.xminus(r + q, starts[lo + u]);
            ColumnEchelon ce = column_echelon(g1);
            c0 = static_cast<int>(ce.pivot_rows.size());
            rho = ce.pivot_rows;
            if (!(ce.E == Matrix::identity(a))) {
                Matrix w = Matrix::identity(c);
                w.set_block(0, 0, ce.E);
                op_a11(class_embed(lo, hi, w));
                Matrix repair = Matrix::identity(m - r);
                for (int q = 0; q < a; ++q)
                    for (int q2 = 0; q2 < a; ++q2) repair(cpiv[lo + q], cpiv[lo + q2]) = ce.E(q, q2);
                op_cols(repair);
            }
            // Entries below the column-echelon pivots die by row moves.
            {
                Matrix d = Matrix::identity(n - r);
                bool need = false;
                for (int q = 0; q < c0; ++q)
                    for (int qq = 0; qq < n - r; ++qq) {
                        if (qq == rho[q]) continue;
                        Rational v = y.xminus(r + qq, starts[lo + q]);
                        if (!v.is_zero()) {
                            d(qq, rho[q]) -= v;
                            need = true;
                        }
                    }
                if (need) op_rows(d);
            }
            for (int q = 0; q < c0; ++q) rpiv[lo + q] = rho[q];
        }

        // Chain-start columns of the unpivoted blocks: first remove entries
        // in the already-pivoted rows (column moves inside the class; the
        // source rows of the induced action on chain-end rows are zero, so
        // Y12 is safe), then echelonize what is left and pack the new pivot
        // columns directly after the pivoted blocks.
        if (c > a) {
            {
                Matrix w = Matrix::identity(c);
                bool need = false;
                for (int j = 0; j < c - a; ++j)
                    for (int q = 0; q < c0; ++q) {
                        Rational v = y.xminus(r + rho[q], starts[lo + a + j]);
                        if (!v.is_zero()) {
                            w(q, a + j) -= v;
                            need = true;
                        }
                    }
                if (need) op_a11(class_embed(lo, hi, w));
            }
            Matrix g2(n - r, c - a);
            for (int q = 0; q < n - r; ++q)
                for (int j = 0; j < c - a; ++j) g2(q, j) = y.xminus(r + q, starts[lo + a + j]);
            RowReductionNoSort rrn = row_reduce_nosort(g2.transpose());
            // Work with the transpose: columns of g2 are rows there, so the
            // no-sort reduction gives unit columns without moving Y21 rows.
            // rrn: ops * g2^t reduced; columns of g2 transform by ops^t on
            // the right: g2 <- g2 * rrn.ops^t.
            if (!(rrn.ops == Matrix::identity(c - a))) {
                Matrix w = Matrix::identity(c);
                w.set_block(a, a, rrn.ops.transpose());
                op_a11(class_embed(lo, hi, w));
            }
            std::vector<std::pair<int, int>> piv = rrn.pivots;  // (col-of-g2, row-of-g2)
            // The reduction leaves each pivot column of g2 with a unit at its
            // pivot row plus possible entries at free rows; row moves from the
            // pivot rows finish the columns off.
            {
                Matrix d = Matrix::identity(n - r);
                bool need = false;
                for (auto [pc, pr] : piv)
                    for (int qq = 0; qq < n - r; ++qq) {
                        if (qq == pr) continue;
                        Rational v = y.xminus(r + qq, starts[lo + a + pc]);
                        if (!v.is_zero()) {
                            d(qq, pr) -= v;
                            need = true;
                        }
                    }
                if (need) op_rows(d);
            }
            // Pack pivot columns of the tail right after the pivoted blocks.
            {
                Matrix w(c, c);
                for (int u = 0; u < a; ++u) w(u, u) = 1;
                std::vector<bool> taken(c - a, false);
                int pos = 0;
                for (auto [pc, pr] : piv) {
                    w(a + pc, a + pos) = 1;
                    taken[pc] = true;
                    ++pos;
                }
                for (int j = 0; j < c - a; ++j)
                    if (!taken[j]) w(a + j, a + pos++) = 1;
                if (!(w == Matrix::identity(c))) op_a11(class_embed(lo, hi, w));
            }
            for (int j = 0; j < static_cast<int>(piv.size()); ++j) rpiv[lo + a + j] = piv[j].second;
        }

        clear_offsupport();

        // Class postconditions: every chain-end row of the class is a unit
        // row at its recorded column or zero, every chain-start column is a
        // unit column at its recorded row or zero, and the recorded Y21 rows
        // are unit rows.
        for (int u = lo; u <= hi; ++u) {
            for (int cc = 0; cc < m - r; ++cc)
                check(y.xminus(ends[u], r + cc) ==
                          (cpiv[u] >= 0 && cc == cpiv[u] ? Rational(1) : Rational(0)),
                      "class chain-end row is not reduced");
            for (int q = 0; q < n - r; ++q)
                check(y.xminus(r + q, starts[u]) ==
                          (rpiv[u] >= 0 && q == rpiv[u] ? Rational(1) : Rational(0)),
                      "class chain-start column is not reduced");
            if (rpiv[u] >= 0)  // unit only across finished blocks: later
                               // chain-start columns are still unreduced
                for (int j = 0; j <= ends[hi]; ++j)
                    check(y.xminus(r + rpiv[u], j) == (j == starts[u] ? Rational(1) : Rational(0)),
                          "pivot row is not a unit row");
        }
    }

    void stage_corner() {
        const int r1 = static_cast<int>(std::count_if(cpiv.begin(), cpiv.end(),
                                                      [](int v) { return v >= 0; }));
        const int r2 = static_cast<int>(std::count_if(rpiv.begin(), rpiv.end(),
                                                      [](int v) { return v >= 0; }));
        Matrix xi22 = y.xminus.block(r + r2, r + r1, n - r - r2, m - r - r1);
        RankNormalForm rnf = rank_normal_form(xi22);
        s = rnf.r;
        Matrix a22 = Matrix::identity(m - r);
        a22.set_block(r1, r1, rnf.B);
        Matrix d = Matrix::identity(n - r);
        d.set_block(r2, r2, inverse(rnf.A));
        Matrix c_before = y12(), r_before = y21();
        op_cols(a22);
        op_rows(d);
        check(y12() == c_before && y21() == r_before, "corner normalization moved C or R");
        Matrix corner = y.xminus.block(r + r2, r + r1, n - r - r2, m - r - r1);
        Matrix want(n - r - r2, m - r - r1);
        for (int i = 0; i < s; ++i) want(i, i) = 1;
        check(corner == want, "corner did not reach diag(I_s, 0)");
        record("corner_rank_normal_form");

        // Rows of Y22 at row pivots die through A12: since every nonzero row
        // of A12 sits at a chain start, J * A12 == 0 and Y12 is untouched.
        {
            Matrix a12(r, m - r);
            bool need = false;
            int q = 0;
            for (int b = 0; b < static_cast<int>(part.size()); ++b)
                if (rpiv[b] >= 0) {
                    for (int cc = 0; cc < m - r; ++cc) {
                        Rational v = y.xminus(r + q, r + cc);
                        if (!v.is_zero()) {
                            a12(starts[b], cc) = -v;
                            need = true;
                        }
                    }
                    ++q;
                }
            if (need) {
                check((jmat() * a12).is_zero(), "A12 corner move does not commute past J");
                op_a12(a12);
            }
            for (int qq = 0; qq < r2; ++qq)
                for (int cc = 0; cc < m - r; ++cc)
                    check(y.xminus(r + qq, r + cc).is_zero(), "corner row residue survived");
        }
        record("clear_corner_rows");

        // Columns of Y22 at column pivots die through B21: nonzero columns of
        // B21 sit at chain ends, so B21 * J == 0 and Y21 is untouched.
        {
            Matrix b21(n - r, r);
            bool need = false;
            int cidx = 0;
            for (int b = 0; b < static_cast<int>(part.size()); ++b)
                if (cpiv[b] >= 0) {
                    for (int q = 0; q < n - r; ++q) {
                        Rational v = y.xminus(r + q, r + cidx);
                        if (!v.is_zero()) {
                            b21(q, ends[b]) = v;
                            need = true;
                        }
                    }
                    ++cidx;
                }
            if (need) {
                check((b21 * jmat()).is_zero(), "B21 corner move does not commute past J");
                op_b21(b21);
            }
            for (int q = 0; q < n - r; ++q)
                for (int cc = 0; cc < r1; ++cc)
                    check(y.xminus(r + q, r + cc).is_zero(), "corner column residue survived");
        }
        record("clear_corner_cols");
    }

    CanonicalResult run() {
        stage_even_normal_form();
        stage_jordanize();
        stage_clear_off_chain();
        stage_echelon_side_blocks();
        stage_align_pivots();
        stage_corner();

        OrbitParams p;
        p.r = r;
        p.partition = part;
        p.s = s;
        std::vector<int> f = chain_end_rows(part), gv = chain_start_cols(part);
        for (int b = 0; b < static_cast<int>(part.size()); ++b) {
            if (cpiv[b] >= 0) p.c_pivots.push_back(f[b]);
            if (rpiv[b] >= 0) p.r_pivots.push_back(gv[b]);
        }
        validate_params(p, m, n);
        check(y == rep_matrix(p, m, n), "final form differs from the parameter representative");
        check(act(g, x0) == y, "accumulated group element does not map input to output");
        std::optional<OrbitParams> rec = is_canonical(y);
        check(rec.has_value() && *rec == p, "canonical-shape recognizer disagrees");

        CanonicalResult res;
        res.g = g;
        res.params = std::move(p);
        res.y = y;
        res.trace = std::move(trace);
        return res;
    }
};

}  // namespace detail

// Reduces x to its canonical representative: returns the group element g,
// the orbit parameters, the representative y == act(g, x), and optionally a
// per-stage trace (cumulative group elements with the intermediate forms).
// Throws std::domain_error when x is not in ker of the invariants (the
// algorithm is only defined on the nilpotent cone) and std::invalid_argument
// on malformed input.
inline CanonicalResult canonicalize(const OddElement& x, bool with_trace = false) {
    if (x.m < 1 || x.n < 1) throw std::invalid_argument("canonicalize: ambient dimensions must be positive");
    if (!in_nilcone_gl(x)) throw std::domain_error("canonicalize: element is not in the nilpotent cone");
    detail::Pipeline p(x, with_trace);
    return p.run();
}

}  // namespace oddcone
