#pragma once

#include "nilcone.hpp"
#include "orbit_census.hpp"
#include "rng.hpp"
#include "superalgebra.hpp"

#include <stdexcept>
#include <string>

namespace oddcone {

// Does (A, B) lie in the even group of the given kind?
//   gl  : any invertible pair
//   sl  : det A == det B
//   q   : A == B
//   p   : B == (A^t)^-1
//   osp : A^t S A == S and B^t K B == K
inline bool group_membership(const Kind& kind, const GroupElement& g) {
    if (g.m != kind.ambient_m() || g.n != kind.ambient_n()) return false;
    switch (kind.family) {
        case Family::GL: return true;
        case Family::SL: return det(g.A) == det(g.B);
        case Family::Q: return g.A == g.B;
        case Family::P: return g.B == g.Ainv.transpose();
        case Family::OSP_ODD:
        case Family::OSP_EVEN: {
            Matrix s = osp_form_s(kind);
            Matrix k = osp_form_k(kind);
            return g.A.transpose() * s * g.A == s && g.B.transpose() * k * g.B == k;
        }
    }
    return false;
}

namespace detail {

// Cayley transform (I - T)(I + T)^-1 of a form-skew T lands in the group of
// the form: T^t F = -F T gives (I + T^t) F = F (I - T), so the transform
// preserves F.  The same identity shows det(I - T) == det(I + T), so only
// I + T needs a singularity check.
inline Matrix cayley_orthogonal(const Matrix& form, Rng& rng) {
    int d = form.rows();
    Matrix s_inv = inverse(form);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Matrix z = random_matrix(rng, d, d, -2, 2);
        // Project onto {T : T^t F + F T == 0}.
        Matrix t = (z - s_inv * z.transpose() * form) * Rational(1, 2);
        Matrix ipt = Matrix::identity(d) + t;
        try {
            Matrix a = (Matrix::identity(d) - t) * inverse(ipt);
            if (a.transpose() * form * a != form)
                throw std::logic_error("cayley_orthogonal: form not preserved");
            return a;
        } catch (const std::invalid_argument&) {
            // I + T singular for this draw; try again.
        }
    }
    throw std::logic_error("cayley_orthogonal: no invertible draw found");
}

}  // namespace detail

// Random element of the even group of the kind.  For gl and sl the factors
// are unimodular (determinant one), which satisfies the sl constraint.
inline GroupElement sample_group(const Kind& kind, Rng& rng) {
    int m = kind.ambient_m(), n = kind.ambient_n();
    GroupElement g;
    switch (kind.family) {
        case Family::GL:
        case Family::SL:
            g = GroupElement(random_unimodular(rng, m), random_unimodular(rng, n));
            break;
        case Family::Q: {
            Matrix a = random_unimodular(rng, m);
            g = GroupElement(a, a);
            break;
        }
        case Family::P: {
            Matrix a = random_unimodular(rng, m);
            g = GroupElement(a, inverse(a).transpose());
            break;
        }
        case Family::OSP_ODD:
        case Family::OSP_EVEN:
            g = GroupElement(detail::cayley_orthogonal(osp_form_s(kind), rng),
                             detail::cayley_orthogonal(osp_form_k(kind), rng));
            break;
    }
    if (!group_membership(kind, g)) throw std::logic_error("sample_group: sanity check failed");
    return g;
}

// Largest admissible rank for seed_element.
inline int max_seed_rank(const Kind& kind) {
    switch (kind.family) {
        case Family::Q: return kind.p1 / 2;
        case Family::P: return kind.p1;
        case Family::OSP_ODD:
        case Family::OSP_EVEN: return std::min(kind.p1, kind.p2);
        default:
            throw std::invalid_argument("max_seed_rank: use orbit parameters for gl/sl");
    }
}

// A fixed element of rank `iso_rank` in g_1(kind) with both compositions
// X+ X- and X- X+ zero, used as a base point for cone sampling.
//   q(n)        X+ = X- = sum E(2i, 2i+1)
//   p(n)        X+ = sum E(i, i)  (symmetric), X- = 0 (skew)
//   osp(odd)    X+ = sum E(1 + i, i), X- forced by the form
//   osp(even)   X+ = sum E(i, i),     X- forced by the form
inline OddElement seed_element(const Kind& kind, int iso_rank) {
    if (iso_rank < 0 || iso_rank > max_seed_rank(kind))
        throw std::invalid_argument("seed_element: rank out of range for " + kind.str());
    int m = kind.ambient_m(), n = kind.ambient_n();
    Matrix xp(m, n);
    switch (kind.family) {
        case Family::Q: {
            for (int i = 0; i < iso_rank; ++i) xp(2 * i, 2 * i + 1) = 1;
            return OddElement(m, n, xp, xp);
        }
        case Family::P: {
            for (int i = 0; i < iso_rank; ++i) xp(i, i) = 1;
            return OddElement(m, n, xp, Matrix(n, m));
        }
        case Family::OSP_ODD: {
            for (int i = 0; i < iso_rank; ++i) xp(1 + i, i) = 1;
            return OddElement(m, n, xp, detail::osp_phi(kind, xp));
        }
        case Family::OSP_EVEN: {
            for (int i = 0; i < iso_rank; ++i) xp(i, i) = 1;
            return OddElement(m, n, xp, detail::osp_phi(kind, xp));
        }
        default:
            throw std::invalid_argument("seed_element: use orbit parameters for gl/sl");
    }
}

namespace detail {
inline OddElement checked_cone_sample(const Kind& kind, const OddElement& base, Rng& rng) {
    OddElement x = act(sample_group(kind, rng), base);
    if (!odd_membership(kind, x) || !in_nilcone_gl(x))
        throw std::logic_error("sample_nilcone: sanity check failed");
    return x;
}
}  // namespace detail

// Random point of the chosen orbit (gl/sl): the representative moved by a
// random group element.
inline OddElement sample_nilcone(const Kind& kind, Rng& rng, const OrbitParams& params) {
    if (kind.family != Family::GL && kind.family != Family::SL)
        throw std::invalid_argument("sample_nilcone: orbit parameters apply to gl/sl only");
    return detail::checked_cone_sample(
        kind, rep_matrix(params, kind.ambient_m(), kind.ambient_n()), rng);
}

// Random conjugate of the rank-`iso_rank` seed (q/p/osp).
inline OddElement sample_nilcone(const Kind& kind, Rng& rng, int iso_rank) {
    return detail::checked_cone_sample(kind, seed_element(kind, iso_rank), rng);
}

// Base point chosen at random: a uniform orbit representative for gl/sl, a
// uniform seed rank otherwise.
inline OddElement sample_nilcone(const Kind& kind, Rng& rng) {
    if (kind.family == Family::GL || kind.family == Family::SL) {
        auto reps = enumerate_reps(kind.ambient_m(), kind.ambient_n());
        const OrbitParams& pick = reps[static_cast<size_t>(
            rng.uniform(0, static_cast<long>(reps.size()) - 1))];
        return sample_nilcone(kind, rng, pick);
    }
    return sample_nilcone(kind, rng, static_cast<int>(rng.uniform(0, max_seed_rank(kind))));
}

}  // namespace oddcone
