#pragma once

#include "linalg.hpp"
#include "nilcone.hpp"
#include "superalgebra.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace oddcone {

// Discrete data of a nilpotent-cone orbit of gl(m|n):
//   X+ ~ diag(I_r, 0);
//   the upper-left r x r block of X- is the nilpotent Jordan matrix of
//   `partition`;
//   the next m - r columns hold unit columns e_p, one per value p in
//   c_pivots, each p the last row of a Jordan chain (a "chain end");
//   the next n - r rows hold unit rows e_q^t, q in r_pivots, each q the
//   first row of a chain (a "chain start");
//   the remaining corner is diag(I_s, 0).
// Pivot values are 1-based and strictly increasing.
struct OrbitParams {
    int r = 0;
    std::vector<int> partition;
    std::vector<int> c_pivots;
    std::vector<int> r_pivots;
    int s = 0;

    int r1() const { return static_cast<int>(c_pivots.size()); }
    int r2() const { return static_cast<int>(r_pivots.size()); }

    friend bool operator==(const OrbitParams& a, const OrbitParams& b) {
        return a.r == b.r && a.partition == b.partition && a.c_pivots == b.c_pivots &&
               a.r_pivots == b.r_pivots && a.s == b.s;
    }
    friend bool operator!=(const OrbitParams& a, const OrbitParams& b) { return !(a == b); }
    friend bool operator<(const OrbitParams& a, const OrbitParams& b) {
        return std::tie(a.r, a.partition, a.c_pivots, a.r_pivots, a.s) <
               std::tie(b.r, b.partition, b.c_pivots, b.r_pivots, b.s);
    }

    std::string str() const {
        std::ostringstream os;
        os << "r=" << r << " partition=[";
        for (size_t i = 0; i < partition.size(); ++i) os << (i ? "," : "") << partition[i];
        os << "] C=[";
        for (size_t i = 0; i < c_pivots.size(); ++i) os << (i ? "," : "") << c_pivots[i];
        os << "] R=[";
        for (size_t i = 0; i < r_pivots.size(); ++i) os << (i ? "," : "") << r_pivots[i];
        os << "] s=" << s;
        return os.str();
    }
};

// Chain ends: the 1-based row of the last vector of each Jordan chain,
// i.e. the partial sums k_1, k_1 + k_2, ...
inline std::vector<int> chain_end_rows(const std::vector<int>& partition) {
    std::vector<int> f;
    int acc = 0;
    for (int k : partition) f.push_back(acc += k);
    return f;
}

// Chain starts: 1, 1 + k_1, 1 + k_1 + k_2, ...
inline std::vector<int> chain_start_cols(const std::vector<int>& partition) {
    std::vector<int> g;
    int acc = 1;
    for (int k : partition) {
        g.push_back(acc);
        acc += k;
    }
    return g;
}

// Structural validity of params inside gl(m|n).  Throws std::invalid_argument
// with a reason on failure.
inline void validate_params(const OrbitParams& p, int m, int n) {
    auto fail = [](const std::string& why) {
        throw std::invalid_argument("OrbitParams: " + why);
    };
    if (m < 1 || n < 1) fail("ambient dimensions must be positive");
    if (p.r < 0 || p.r > std::min(m, n)) fail("r out of range");
    int sum = 0, prev = 1 << 30;
    for (int k : p.partition) {
        if (k < 1 || k > prev) fail("partition must be weakly decreasing and positive");
        prev = k;
        sum += k;
    }
    if (sum != p.r) fail("partition must sum to r");
    std::vector<int> f = chain_end_rows(p.partition);
    std::vector<int> g = chain_start_cols(p.partition);
    int last = 0;
    for (int v : p.c_pivots) {
        if (v <= last) fail("c_pivots must be strictly increasing");
        if (!std::binary_search(f.begin(), f.end(), v)) fail("c_pivots must be chain ends");
        last = v;
    }
    last = 0;
    for (int v : p.r_pivots) {
        if (v <= last) fail("r_pivots must be strictly increasing");
        if (!std::binary_search(g.begin(), g.end(), v)) fail("r_pivots must be chain starts");
        last = v;
    }
    if (p.r1() > m - p.r) fail("too many c_pivots");
    if (p.r2() > n - p.r) fail("too many r_pivots");
    if (p.s < 0 || p.s > std::min(n - p.r - p.r2(), m - p.r - p.r1())) fail("s out of range");
}

// The representative element with these parameters.
inline OddElement rep_matrix(const OrbitParams& p, int m, int n) {
    validate_params(p, m, n);
    Matrix xplus(m, n);
    for (int i = 0; i < p.r; ++i) xplus(i, i) = 1;
    Matrix xminus(n, m);
    xminus.set_block(0, 0, jordan_matrix(p.partition));
    for (int c = 0; c < p.r1(); ++c) xminus(p.c_pivots[c] - 1, p.r + c) = 1;
    for (int q = 0; q < p.r2(); ++q) xminus(p.r + q, p.r_pivots[q] - 1) = 1;
    for (int i = 0; i < p.s; ++i) xminus(p.r + p.r2() + i, p.r + p.r1() + i) = 1;
    return OddElement(m, n, std::move(xplus), std::move(xminus));
}

// One representative per orbit.  Permuting equal-size Jordan blocks
// simultaneously in rows and columns centralizes the Jordan matrix, so pivot
// patterns that differ only by such a permutation give the same orbit.  The
// census therefore fixes, inside every run of equal block sizes, the layout
//   blocks 1..c      carry both a column and a row pivot,
//   blocks c+1..a    carry only a column pivot,
//   blocks a+1..a+b-c carry only a row pivot,
// enumerating the triples (a, b, c) instead of raw pivot subsets.
inline std::vector<OrbitParams> enumerate_reps(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("enumerate_reps: dimensions must be positive");
    std::vector<OrbitParams> out;

    std::vector<int> part;
    auto emit_partition = [&](int r) {
        // Runs of equal parts.
        struct Class {
            int lo, count;  // block indices [lo, lo + count)
        };
        std::vector<Class> classes;
        for (int i = 0; i < static_cast<int>(part.size());) {
            int j = i;
            while (j < static_cast<int>(part.size()) && part[j] == part[i]) ++j;
            classes.push_back(Class{i, j - i});
            i = j;
        }
        std::vector<int> f = chain_end_rows(part);
        std::vector<int> g = chain_start_cols(part);

        std::vector<std::tuple<int, int, int>> choice(classes.size());
        auto rec = [&](auto&& self, size_t v, int used_c, int used_r) -> void {
            if (v == classes.size()) {
                OrbitParams p;
                p.r = r;
                p.partition = part;
                for (size_t w = 0; w < classes.size(); ++w) {
                    auto [a, b, c] = choice[w];
                    for (int q = 0; q < a; ++q) p.c_pivots.push_back(f[classes[w].lo + q]);
                    for (int q = 0; q < c; ++q) p.r_pivots.push_back(g[classes[w].lo + q]);
                    for (int q = 0; q < b - c; ++q) p.r_pivots.push_back(g[classes[w].lo + a + q]);
                }
                int smax = std::min(n - r - p.r2(), m - r - p.r1());
                for (int s = 0; s <= smax; ++s) {
                    p.s = s;
                    out.push_back(p);
                }
                return;
            }
            int cap = classes[v].count;
            for (int a = 0; a <= cap && used_c + a <= m - r; ++a)
                for (int b = 0; b <= cap && used_r + b <= n - r; ++b)
                    for (int c = std::max(0, a + b - cap); c <= std::min(a, b); ++c) {
                        choice[v] = {a, b, c};
                        self(self, v + 1, used_c + a, used_r + b);
                    }
        };
        rec(rec, 0, 0, 0);
    };

    auto partitions = [&](auto&& self, int remaining, int max_part, int r) -> void {
        if (remaining == 0) {
            emit_partition(r);
            return;
        }
        for (int k = std::min(remaining, max_part); k >= 1; --k) {
            part.push_back(k);
            self(self, remaining - k, k, r);
            part.pop_back();
        }
    };

    for (int r = 0; r <= std::min(m, n); ++r) partitions(partitions, r, r, r);
    std::sort(out.begin(), out.end());
    return out;
}

// Representatives lying in the self-commuting variety: X+ X- == X- X+ == 0
// forces the Jordan matrix to vanish (all parts equal 1) and both pivot sets
// to be empty, leaving only r and s free.
inline std::vector<OrbitParams> ds_reps(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("ds_reps: dimensions must be positive");
    std::vector<OrbitParams> out;
    int l = std::min(m, n);
    for (int r = 0; r <= l; ++r) {
        OrbitParams p;
        p.r = r;
        p.partition.assign(r, 1);
        for (int s = 0; s <= l - r; ++s) {
            p.s = s;
            out.push_back(p);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Conjugation invariant: ranks of the alternating words
//   X+, X+ X-, X+ X- X+, ...   and   X-, X- X+, X- X+ X-, ...
// up to length m + n each.  act(g, .) multiplies every word by invertible
// matrices on both sides, so the rank vector is constant on orbits.
struct OrbitSignature {
    std::vector<int> plus_word_ranks;   // lengths 1 .. m + n, word starts with X+
    std::vector<int> minus_word_ranks;  // lengths 1 .. m + n, word starts with X-

    friend bool operator==(const OrbitSignature& a, const OrbitSignature& b) {
        return a.plus_word_ranks == b.plus_word_ranks && a.minus_word_ranks == b.minus_word_ranks;
    }
    friend bool operator<(const OrbitSignature& a, const OrbitSignature& b) {
        return std::tie(a.plus_word_ranks, a.minus_word_ranks) <
               std::tie(b.plus_word_ranks, b.minus_word_ranks);
    }
    std::string str() const {
        std::ostringstream os;
        os << "+[";
        for (size_t i = 0; i < plus_word_ranks.size(); ++i)
            os << (i ? "," : "") << plus_word_ranks[i];
        os << "] -[";
        for (size_t i = 0; i < minus_word_ranks.size(); ++i)
            os << (i ? "," : "") << minus_word_ranks[i];
        os << "]";
        return os.str();
    }
};

inline OrbitSignature orbit_signature(const OddElement& x) {
    OrbitSignature sig;
    int len = x.m + x.n;
    for (int start = 0; start < 2; ++start) {
        Matrix w = start == 0 ? x.xplus : x.xminus;
        bool next_minus = start == 0;
        auto& ranks = start == 0 ? sig.plus_word_ranks : sig.minus_word_ranks;
        for (int l = 1; l <= len; ++l) {
            ranks.push_back(rank(w));
            if (l < len) {
                w = w * (next_minus ? x.xminus : x.xplus);
                next_minus = !next_minus;
            }
        }
    }
    return sig;
}

}  // namespace oddcone
