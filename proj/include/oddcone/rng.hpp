#pragma once

#include "matrix.hpp"

#include <cstdint>
#include <initializer_list>

namespace oddcone {

// splitmix64: tiny, fast, and identical on every platform.  The standard
// <random> distributions are implementation-defined, which would make the
// frozen test expectations compiler-dependent; this generator avoids that.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on [lo, hi], inclusive.  Modulo bias is irrelevant at the
    // ranges used here (spans far below 2^32).
    long uniform(long lo, long hi) {
        if (hi < lo) throw std::invalid_argument("Rng::uniform: empty range");
        uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
        return lo + static_cast<long>(next() % span);
    }

    bool coin() { return next() & 1; }

    Rational rational(long lo, long hi, long max_den = 3) {
        return Rational(uniform(lo, hi), uniform(1, max_den));
    }

private:
    uint64_t state_;
};

// Deterministic seed derivation: hash the parts through splitmix64 steps so
// nearby tuples do not produce correlated streams.
inline uint64_t derive_seed(std::initializer_list<uint64_t> parts) {
    uint64_t h = 0x8c62fca3dd2ab35bULL;
    for (uint64_t p : parts) {
        h ^= p + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        Rng mix(h);
        h = mix.next();
    }
    return h;
}

inline Matrix random_matrix(Rng& rng, int rows, int cols, long lo = -2, long hi = 2) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
    return m;
}

inline Matrix random_rational_matrix(Rng& rng, int rows, int cols, long lo = -2, long hi = 2,
                                     long max_den = 3) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = rng.rational(lo, hi, max_den);
    return m;
}

// Integer matrix with determinant +1: permutation * unit-lower * unit-upper.
// Integer entries keep conjugates of integer matrices integral, which keeps
// the exact arithmetic in the property tests cheap.
inline Matrix random_unimodular(Rng& rng, int n, long lo = -2, long hi = 2) {
    Matrix l = Matrix::identity(n);
    Matrix u = Matrix::identity(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j) {
            l(i, j) = rng.uniform(lo, hi);
            u(j, i) = rng.uniform(lo, hi);
        }
    // Random permutation (Fisher-Yates); an odd one gets a sign flip on the
    // first row so the determinant stays +1.
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    bool odd = false;
    for (int i = n - 1; i > 0; --i) {
        int j = static_cast<int>(rng.uniform(0, i));
        if (j != i) {
            std::swap(perm[i], perm[j]);
            odd = !odd;
        }
    }
    Matrix p(n, n);
    for (int i = 0; i < n; ++i) p(i, perm[i]) = (odd && i == 0) ? -1 : 1;
    return p * l * u;
}

}  // namespace oddcone
