#include "oddcone/nilcone.hpp"
#include "oddcone/orbit_census.hpp"
#include "oddcone/rng.hpp"
#include "oddcone/sampling.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oddcone;

TEST_CASE("nilcone examples") {
    REQUIRE(in_nilcone_gl(OddElement::zero(2, 3)));
    REQUIRE(in_self_commuting(OddElement::zero(2, 3)));

    // x+ x- strictly upper triangular: in the cone, not self-commuting
    OddElement x(2, 2, Matrix::from_rows({{0, 1}, {0, 0}}), Matrix::from_rows({{0, 0}, {1, 0}}));
    REQUIRE((x.xplus * x.xminus) == Matrix::from_rows({{1, 0}, {0, 0}}));
    REQUIRE_FALSE(in_nilcone_gl(x));

    OddElement y(2, 2, Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {1, 0}}));
    REQUIRE(in_nilcone_gl(y));
    REQUIRE_FALSE(in_self_commuting(y));  // x- x+ != 0

    OddElement z(2, 2, Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {0, 1}}));
    REQUIRE(in_self_commuting(z));
    REQUIRE(in_nilcone_gl(z));

    // kind-aware membership: q(2) requires x+ == x-
    Kind q2 = Kind::q(2);
    OddElement w(2, 2, Matrix::from_rows({{0, 1}, {0, 0}}), Matrix::from_rows({{0, 1}, {0, 0}}));
    REQUIRE(in_nilcone(q2, w));
    REQUIRE_FALSE(in_nilcone(q2, z));        // not in g_1(q)
    REQUIRE(in_nilcone(Kind::gl(2, 2), z));
}

TEST_CASE("nilpotency of x+ x- matches the characteristic polynomial oracle") {
    Rng rng(97);
    int agree_cone = 0, agree_not = 0;

    // arbitrary elements (mostly outside the cone)
    for (int t = 0; t < 120; ++t) {
        int m = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
        OddElement x(m, n, random_rational_matrix(rng, m, n, -2, 2, 2),
                     random_rational_matrix(rng, n, m, -2, 2, 2));
        bool lib = in_nilcone_gl(x);
        REQUIRE(lib == oracle::is_nilpotent_by_charpoly(x.xplus * x.xminus));
        REQUIRE(lib == oracle::is_nilpotent_by_charpoly(x.xminus * x.xplus));
        (lib ? agree_cone : agree_not)++;
    }
    REQUIRE(agree_not > 0);

    // an independent in-cone family: strictly-triangular factors
    for (int t = 0; t < 60; ++t) {
        int m = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
        Matrix u1(m, n), u2(n, m);
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < n; ++j) u1(i, j) = rng.rational(-2, 2, 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < m; ++j) u2(i, j) = rng.rational(-2, 2, 2);
        // u1 u2 is strictly upper triangular, so (u1, u2) lies in the cone
        OddElement x0(m, n, u1, u2);
        OddElement x = act(oracle::random_group(rng, m, n), x0);
        REQUIRE(in_nilcone_gl(x));
        REQUIRE(oracle::is_nilpotent_by_charpoly(x.xplus * x.xminus));
        ++agree_cone;
    }
    REQUIRE(agree_cone >= 60);
}

TEST_CASE("invariants are conjugation invariants") {
    Rng rng(103);
    for (int t = 0; t < 40; ++t) {
        int m = static_cast<int>(rng.uniform(1, 4)), n = static_cast<int>(rng.uniform(1, 4));
        OddElement x(m, n, random_rational_matrix(rng, m, n, -2, 2, 2),
                     random_rational_matrix(rng, n, m, -2, 2, 2));
        GroupElement g = oracle::random_group(rng, m, n);
        REQUIRE(invariants(act(g, x)) == invariants(x));
        REQUIRE(in_nilcone_gl(act(g, x)) == in_nilcone_gl(x));
        REQUIRE(in_self_commuting(act(g, x)) == in_self_commuting(x));
    }
}

TEST_CASE("self-commuting variety sits inside the nilpotent cone") {
    Rng rng(107);
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (const OrbitParams& p : ds_reps(m, n)) {
                OddElement rep = rep_matrix(p, m, n);
                REQUIRE(in_self_commuting(rep));
                for (int t = 0; t < 5; ++t) {
                    OddElement x = act(oracle::random_group(rng, m, n), rep);
                    REQUIRE(in_self_commuting(x));
                    REQUIRE(in_nilcone_gl(x));
                }
            }
}
