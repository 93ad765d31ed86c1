#include "oddcone/canonical_form.hpp"
#include "oddcone/orbit_census.hpp"
#include "oddcone/rng.hpp"
#include "oddcone/sampling.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace oddcone;

TEST_CASE("centralizer generators commute with the Jordan matrix") {
    std::vector<int> part{3, 2, 2, 1};
    Matrix j = jordan_matrix(part);
    int t = static_cast<int>(part.size());
    for (int jj = 2; jj <= t; ++jj)
        for (int ii = 1; ii < jj; ++ii) {
            Matrix l = build_L(part, jj, ii, Rational(5, 3));
            REQUIRE(l * j == j * l);
            REQUIRE_FALSE(det(l).is_zero());
        }
    for (int jj = 1; jj <= t; ++jj) {
        Matrix m = build_M(part, jj, Rational(-7, 2));
        REQUIRE(m * j == j * m);
        REQUIRE_FALSE(det(m).is_zero());
    }

    REQUIRE_THROWS_AS(build_L(part, 1, 1, Rational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_L(part, 5, 1, Rational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_M(part, 0, Rational(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(build_M(part, 2, Rational(0)), std::invalid_argument);
}

TEST_CASE("build_L adds chain-end rows as advertised") {
    std::vector<int> part{3, 2};
    std::vector<int> f = chain_end_rows(part);  // {3, 5}
    // a matrix supported on chain-end rows only
    Matrix y(5, 2);
    y(f[0] - 1, 0) = 2;
    y(f[0] - 1, 1) = -1;
    y(f[1] - 1, 0) = 4;
    Matrix l = build_L(part, 2, 1, Rational(3));
    Matrix ly = l * y;
    // row f_2 gains 3 * row f_1; everything else is unchanged
    REQUIRE(ly(f[1] - 1, 0) == Rational(4 + 3 * 2));
    REQUIRE(ly(f[1] - 1, 1) == Rational(-3));
    REQUIRE(ly(f[0] - 1, 0) == Rational(2));
    Matrix diff = ly - y;
    for (int i = 0; i < 5; ++i)
        if (i != f[1] - 1) REQUIRE(diff.row(i).is_zero());
}

TEST_CASE("is_canonical recognizes exactly the representatives") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 3}, {2, 3}, {4, 3}, {1, 4}}) {
        for (const OrbitParams& p : enumerate_reps(m, n)) {
            OddElement rep = rep_matrix(p, m, n);
            auto rec = is_canonical(rep);
            REQUIRE(rec.has_value());
            REQUIRE(*rec == p);
        }
    }

    // perturbations of a canonical representative are rejected
    OrbitParams p;
    p.r = 3;
    p.partition = {2, 1};
    p.c_pivots = {2, 3};
    p.r_pivots = {1};
    p.s = 1;
    const int m = 6, n = 5;
    REQUIRE_NOTHROW(validate_params(p, m, n));
    OddElement rep = rep_matrix(p, m, n);
    REQUIRE(is_canonical(rep).has_value());

    auto reject = [](OddElement y) { REQUIRE_FALSE(is_canonical(y).has_value()); };

    OddElement y = rep;
    y.xminus(0, 1) = 2;  // non-unit superdiagonal entry
    reject(y);

    y = rep;
    y.xminus(1, 4) = 1;  // second entry in a C column
    reject(y);

    y = rep;
    y.xminus(0, 5) = 1;  // unit column at a row that is not a chain end
    reject(y);

    y = rep;  // swap the two C columns: pivot rows must increase
    Matrix c3 = y.xminus.col(3), c4 = y.xminus.col(4);
    y.xminus.set_block(0, 3, c4);
    y.xminus.set_block(0, 4, c3);
    reject(y);

    y = rep;
    y.xplus(0, 0) = 0;  // X+ not diag(I_r, 0)
    reject(y);

    y = rep;
    y.xplus(3, 3) = 1;  // X+ rank grown past the Jordan split
    reject(y);

    y = rep;
    y.xminus(4, 4) = 1;  // Y22 entry outside the diag(I_s, 0) corner
    reject(y);

    // a unit row at a non-chain-start column is rejected
    y = rep;
    y.xminus(3, 0) = 0;
    y.xminus(3, 1) = 1;
    reject(y);
}

TEST_CASE("canonicalize: zero and representative inputs") {
    CanonicalResult z = canonicalize(OddElement::zero(2, 3));
    REQUIRE(z.params.r == 0);
    REQUIRE(z.params.partition.empty());
    REQUIRE(z.params.s == 0);
    REQUIRE(z.y.is_zero());

    // canonical inputs come back unchanged
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {2, 4}}) {
        for (const OrbitParams& p : enumerate_reps(m, n)) {
            OddElement rep = rep_matrix(p, m, n);
            CanonicalResult res = canonicalize(rep);
            REQUIRE(res.params == p);
            REQUIRE(res.y == rep);
            REQUIRE(act(res.g, rep) == rep);
        }
    }
}

TEST_CASE("canonicalize round trip across the census") {
    Rng rng(131);
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n)
            for (const OrbitParams& p : enumerate_reps(m, n)) {
                OddElement rep = rep_matrix(p, m, n);
                OrbitSignature sig = orbit_signature(rep);
                for (int t = 0; t < 2; ++t) {
                    // one integer-unimodular and one rational conjugator
                    GroupElement g = t == 0 ? GroupElement(random_unimodular(rng, m),
                                                           random_unimodular(rng, n))
                                            : oracle::random_group(rng, m, n);
                    OddElement x = act(g, rep);
                    CanonicalResult res = canonicalize(x);
                    REQUIRE(res.params == p);
                    REQUIRE(res.y == rep);
                    REQUIRE(act(res.g, x) == res.y);
                    REQUIRE(orbit_signature(x) == sig);
                }
            }
}

TEST_CASE("canonicalize trace") {
    Rng rng(137);
    OrbitParams p;
    p.r = 2;
    p.partition = {2};
    p.c_pivots = {2};
    p.r_pivots = {1};
    p.s = 0;
    OddElement rep = rep_matrix(p, 3, 3);
    OddElement x = act(oracle::random_group(rng, 3, 3), rep);

    CanonicalResult plain = canonicalize(x, false);
    REQUIRE(plain.trace.empty());

    CanonicalResult res = canonicalize(x, true);
    REQUIRE_FALSE(res.trace.empty());
    for (const StageRecord& rec : res.trace) {
        REQUIRE_FALSE(rec.stage.empty());
        REQUIRE(act(rec.g, x) == rec.y);
    }
    REQUIRE(res.trace.back().y == res.y);
    REQUIRE(res.trace.back().g == res.g);
    REQUIRE(res.params == plain.params);
}

TEST_CASE("canonicalize rejects bad input") {
    // not in the cone
    OddElement bad(2, 2, Matrix::identity(2), Matrix::identity(2));
    REQUIRE_THROWS_AS(canonicalize(bad), std::domain_error);
    OddElement bad2(1, 1, Matrix::from_rows({{1}}), Matrix::from_rows({{2}}));
    REQUIRE_THROWS_AS(canonicalize(bad2), std::domain_error);
    // degenerate ambient dimensions
    REQUIRE_THROWS_AS(canonicalize(OddElement::zero(0, 2)), std::invalid_argument);
}
