#pragma once

#include "superalgebra.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace oddcone {

// Bases for the subalgebra g(kind) and an ad-invariant complement M inside
// the ambient gl(M|N), split by parity: gl = g + M with [g, M] contained
// in M.  Defined for every kind except gl itself (where the complement is
// zero and there is nothing to verify) and sl(n|n) (where no invariant
// complement exists).
struct ComplementBasis {
    Kind kind;
    std::vector<EvenElement> g_even, m_even;
    std::vector<OddElement> g_odd, m_odd;
};

namespace detail {

inline std::vector<Rational> flatten_even(const EvenElement& e) {
    std::vector<Rational> v = flatten(e.a);
    std::vector<Rational> w = flatten(e.b);
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

inline std::vector<Rational> flatten_odd(const OddElement& x) {
    std::vector<Rational> v = flatten(x.xplus);
    std::vector<Rational> w = flatten(x.xminus);
    v.insert(v.end(), w.begin(), w.end());
    return v;
}

}  // namespace detail

inline ComplementBasis complement_basis(const Kind& kind) {
    if (kind.family == Family::GL)
        throw std::invalid_argument("complement_basis: gl is the ambient algebra");
    const int M = kind.ambient_m(), N = kind.ambient_n();
    ComplementBasis out;
    out.kind = kind;

    if (kind.family == Family::SL) {
        // Even part: sl sits in gl(M) + gl(N) as the supertraceless slice;
        // the complement is the scalar line through (I, I).  Scalars commute
        // with everything, so all four bracket closures hold trivially -- but
        // str(I, I) = M - N, so the line leaves sl only when M != N.  For
        // sl(n|n) no invariant complement exists at all: a complement line
        // must be killed by [g1, -] (M1 is zero), forcing it to be scalar,
        // and scalars are supertraceless exactly when M = N.
        if (M == N)
            throw std::invalid_argument("complement_basis: sl(n|n) has no invariant complement");
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                EvenElement e = EvenElement::zero(M, N);
                e.a(i, j) = 1;
                out.g_even.push_back(e);
            }
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                if (i == j) continue;
                EvenElement e = EvenElement::zero(M, N);
                e.b(i, j) = 1;
                out.g_even.push_back(e);
            }
        for (int i = 0; i < M; ++i) {
            EvenElement e = EvenElement::zero(M, N);
            e.a(i, i) = 1;
            e.b(0, 0) = 1;
            out.g_even.push_back(e);
        }
        for (int j = 1; j < N; ++j) {
            EvenElement e = EvenElement::zero(M, N);
            e.b(j, j) = 1;
            e.b(0, 0) = -1;
            out.g_even.push_back(e);
        }
        out.m_even.push_back(
            EvenElement(M, N, Matrix::identity(M), Matrix::identity(N)));
        // Odd part: all of it belongs to sl.
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                OddElement x = OddElement::zero(M, N);
                x.xplus(i, j) = 1;
                out.g_odd.push_back(x);
                OddElement y = OddElement::zero(M, N);
                y.xminus(j, i) = 1;
                out.g_odd.push_back(y);
            }
    } else {
        // Involution kinds: project the elementary basis onto the two
        // eigenspaces and keep a maximal independent set of each.
        SpanReducer span_g, span_m;
        auto feed_even = [&](const EvenElement& v) {
            EvenElement pv = even_involution(kind, v);
            EvenElement gp = v + pv, mp = v - pv;
            if (!gp.is_zero() && span_g.add(detail::flatten_even(gp))) out.g_even.push_back(gp);
            if (!mp.is_zero() && span_m.add(detail::flatten_even(mp))) out.m_even.push_back(mp);
        };
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < M; ++j) {
                EvenElement e = EvenElement::zero(M, N);
                e.a(i, j) = 1;
                feed_even(e);
            }
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                EvenElement e = EvenElement::zero(M, N);
                e.b(i, j) = 1;
                feed_even(e);
            }

        SpanReducer span_g1, span_m1;
        auto feed_odd = [&](const OddElement& v) {
            OddElement pv = odd_involution(kind, v);
            OddElement gp = v + pv, mp = v - pv;
            if (!gp.is_zero() && span_g1.add(detail::flatten_odd(gp))) out.g_odd.push_back(gp);
            if (!mp.is_zero() && span_m1.add(detail::flatten_odd(mp))) out.m_odd.push_back(mp);
        };
        for (int i = 0; i < M; ++i)
            for (int j = 0; j < N; ++j) {
                OddElement x = OddElement::zero(M, N);
                x.xplus(i, j) = 1;
                feed_odd(x);
                OddElement y = OddElement::zero(M, N);
                y.xminus(j, i) = 1;
                feed_odd(y);
            }
    }
    return out;
}

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyReport {
    Kind kind;
    bool pass = false;
    std::vector<CheckResult> checks;
};

namespace detail {

// Blockwise identities satisfied by the even image of an odd-odd bracket in
// the osp case; equivalent to "S a symmetric and K b alternating" but stated
// on the individual blocks of a and b.
inline bool osp_block_identities(const Kind& kind, const EvenElement& e, std::string& why) {
    auto sym = [](const Matrix& x) { return x == x.transpose(); };
    auto skew = [](const Matrix& x) { return x.transpose() == -x; };
    std::ostringstream os;
    bool ok = true;
    auto require = [&](bool c, const char* label) {
        if (!c) {
            ok = false;
            os << (os.tellp() > 0 ? ", " : "") << label;
        }
    };
    int n = kind.p2;
    Matrix b11 = e.b.block(0, 0, n, n), b12 = e.b.block(0, n, n, n);
    Matrix b21 = e.b.block(n, 0, n, n), b22 = e.b.block(n, n, n, n);
    require(b22 == b11.transpose(), "b22 == b11^t");
    require(skew(b12), "b12 alternating");
    require(skew(b21), "b21 alternating");
    if (kind.family == Family::OSP_ODD) {
        int m = kind.p1;
        auto blk = [&](int i, int j) {
            int off[3] = {0, 1, 1 + m};
            int sz[3] = {1, m, m};
            return e.a.block(off[i], off[j], sz[i], sz[j]);
        };
        require(blk(0, 1) == blk(2, 0).transpose(), "a12 == a31^t");
        require(blk(0, 2) == blk(1, 0).transpose(), "a13 == a21^t");
        require(blk(2, 2) == blk(1, 1).transpose(), "a33 == a22^t");
        require(sym(blk(1, 2)), "a23 symmetric");
        require(sym(blk(2, 1)), "a32 symmetric");
    } else {
        int m = kind.p1;
        Matrix a11 = e.a.block(0, 0, m, m), a12 = e.a.block(0, m, m, m);
        Matrix a21 = e.a.block(m, 0, m, m), a22 = e.a.block(m, m, m, m);
        require(a22 == a11.transpose(), "a22 == a11^t");
        require(sym(a12), "a12 symmetric");
        require(sym(a21), "a21 symmetric");
    }
    why = os.str();
    return ok;
}

}  // namespace detail

// Verifies that the constructed complement really is one: dimension counts,
// joint independence, exact bracket closure [g, M] in M in all four parity
// combinations, and for osp the blockwise shape of odd-odd brackets.
inline VerifyReport verify_complement(const Kind& kind) {
    ComplementBasis cb = complement_basis(kind);
    const int M = kind.ambient_m(), N = kind.ambient_n();
    VerifyReport rep;
    rep.kind = kind;

    auto add_check = [&](std::string name, bool pass, std::string detail = "") {
        rep.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
    };

    {
        SpanReducer joint;
        for (const auto& e : cb.g_even) joint.add(detail::flatten_even(e));
        for (const auto& e : cb.m_even) joint.add(detail::flatten_even(e));
        bool ok = joint.dim() == M * M + N * N &&
                  static_cast<int>(cb.g_even.size() + cb.m_even.size()) == M * M + N * N;
        std::ostringstream os;
        os << "dim g0 = " << cb.g_even.size() << ", dim M0 = " << cb.m_even.size()
           << ", ambient = " << M * M + N * N << ", joint rank = " << joint.dim();
        add_check("even part: g0 + M0 spans with independent bases", ok, os.str());
    }
    {
        SpanReducer joint;
        for (const auto& x : cb.g_odd) joint.add(detail::flatten_odd(x));
        for (const auto& x : cb.m_odd) joint.add(detail::flatten_odd(x));
        bool ok = joint.dim() == 2 * M * N &&
                  static_cast<int>(cb.g_odd.size() + cb.m_odd.size()) == 2 * M * N;
        std::ostringstream os;
        os << "dim g1 = " << cb.g_odd.size() << ", dim M1 = " << cb.m_odd.size()
           << ", ambient = " << 2 * M * N << ", joint rank = " << joint.dim();
        add_check("odd part: g1 + M1 spans with independent bases", ok, os.str());
    }

    SpanReducer span_m0, span_m1;
    for (const auto& e : cb.m_even) span_m0.add(detail::flatten_even(e));
    for (const auto& x : cb.m_odd) span_m1.add(detail::flatten_odd(x));

    auto closure_even = [&](const char* name, auto&& pairs) {
        std::string bad;
        int count = 0;
        pairs([&](const EvenElement& w, int i, int j) {
            ++count;
            if (bad.empty() && !w.is_zero() && !span_m0.contains(detail::flatten_even(w))) {
                std::ostringstream os;
                os << "pair (" << i << ", " << j << ") escapes M0";
                bad = os.str();
            }
        });
        std::ostringstream os;
        os << count << " brackets checked" << (bad.empty() ? "" : "; " + bad);
        add_check(name, bad.empty(), os.str());
    };
    auto closure_odd = [&](const char* name, auto&& pairs) {
        std::string bad;
        int count = 0;
        pairs([&](const OddElement& w, int i, int j) {
            ++count;
            if (bad.empty() && !w.is_zero() && !span_m1.contains(detail::flatten_odd(w))) {
                std::ostringstream os;
                os << "pair (" << i << ", " << j << ") escapes M1";
                bad = os.str();
            }
        });
        std::ostringstream os;
        os << count << " brackets checked" << (bad.empty() ? "" : "; " + bad);
        add_check(name, bad.empty(), os.str());
    };

    closure_even("[g0, M0] in M0", [&](auto&& visit) {
        for (size_t i = 0; i < cb.g_even.size(); ++i)
            for (size_t j = 0; j < cb.m_even.size(); ++j)
                visit(bracket_even(cb.g_even[i], cb.m_even[j]), static_cast<int>(i),
                      static_cast<int>(j));
    });
    closure_odd("[g0, M1] in M1", [&](auto&& visit) {
        for (size_t i = 0; i < cb.g_even.size(); ++i)
            for (size_t j = 0; j < cb.m_odd.size(); ++j)
                visit(bracket_even_odd(cb.g_even[i], cb.m_odd[j]), static_cast<int>(i),
                      static_cast<int>(j));
    });
    closure_odd("[g1, M0] in M1", [&](auto&& visit) {
        for (size_t i = 0; i < cb.g_odd.size(); ++i)
            for (size_t j = 0; j < cb.m_even.size(); ++j)
                visit(bracket_even_odd(cb.m_even[j], cb.g_odd[i]) * Rational(-1),
                      static_cast<int>(i), static_cast<int>(j));
    });
    closure_even("[g1, M1] in M0", [&](auto&& visit) {
        for (size_t i = 0; i < cb.g_odd.size(); ++i)
            for (size_t j = 0; j < cb.m_odd.size(); ++j)
                visit(bracket_odd(cb.g_odd[i], cb.m_odd[j]), static_cast<int>(i),
                      static_cast<int>(j));
    });

    if (kind.family == Family::OSP_ODD || kind.family == Family::OSP_EVEN) {
        // Blockwise shape of [g1, M1] brackets: S a symmetric and K b
        // alternating, spelled out block by block.
        std::string bad;
        int count = 0;
        for (size_t i = 0; i < cb.g_odd.size() && bad.empty(); ++i)
            for (size_t j = 0; j < cb.m_odd.size() && bad.empty(); ++j) {
                EvenElement w = bracket_odd(cb.g_odd[i], cb.m_odd[j]);
                ++count;
                std::string why;
                if (!detail::osp_block_identities(kind, w, why)) {
                    std::ostringstream os;
                    os << "pair (" << i << ", " << j << "): " << why;
                    bad = os.str();
                }
            }
        std::ostringstream os;
        os << count << " brackets checked" << (bad.empty() ? "" : "; " + bad);
        add_check("osp block identities on [g1, M1]", bad.empty(), os.str());
    }

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

}  // namespace oddcone
