#include "oddcone/nilcone.hpp"
#include "oddcone/orbit_census.hpp"
#include "oddcone/rng.hpp"
#include "oddcone/sampling.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

using namespace oddcone;

TEST_CASE("chain end rows and start columns") {
    std::vector<int> part{3, 2, 2, 1};
    REQUIRE(chain_end_rows(part) == std::vector<int>{3, 5, 7, 8});
    REQUIRE(chain_start_cols(part) == std::vector<int>{1, 4, 6, 8});
    REQUIRE(chain_end_rows({}).empty());
    REQUIRE(chain_start_cols({}).empty());
}

TEST_CASE("validate_params") {
    auto make = [](int r, std::vector<int> part, std::vector<int> cp, std::vector<int> rp, int s) {
        OrbitParams p;
        p.r = r;
        p.partition = std::move(part);
        p.c_pivots = std::move(cp);
        p.r_pivots = std::move(rp);
        p.s = s;
        return p;
    };

    REQUIRE_NOTHROW(validate_params(make(2, {2}, {2}, {1}, 0), 3, 3));
    REQUIRE_NOTHROW(validate_params(make(0, {}, {}, {}, 1), 2, 2));

    // r out of range
    REQUIRE_THROWS_AS(validate_params(make(3, {1, 1, 1}, {}, {}, 0), 2, 3), std::invalid_argument);
    // partition does not sum to r
    REQUIRE_THROWS_AS(validate_params(make(2, {1}, {}, {}, 0), 3, 3), std::invalid_argument);
    // partition not weakly decreasing
    REQUIRE_THROWS_AS(validate_params(make(3, {1, 2}, {}, {}, 0), 3, 3), std::invalid_argument);
    // pivot value not a chain end (f-values of (2) are {2})
    REQUIRE_THROWS_AS(validate_params(make(2, {2}, {1}, {}, 0), 3, 3), std::invalid_argument);
    // pivot value not a chain start (g-values of (2) are {1})
    REQUIRE_THROWS_AS(validate_params(make(2, {2}, {}, {2}, 0), 3, 3), std::invalid_argument);
    // duplicate pivots
    REQUIRE_THROWS_AS(validate_params(make(2, {1, 1}, {1, 1}, {}, 0), 4, 3),
                      std::invalid_argument);
    // too many column pivots: r1 <= m - r
    REQUIRE_THROWS_AS(validate_params(make(2, {1, 1}, {1, 2}, {}, 0), 3, 3),
                      std::invalid_argument);
    // s out of range: s <= min(n - r - r2, m - r - r1)
    REQUIRE_THROWS_AS(validate_params(make(2, {2}, {2}, {}, 1), 3, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(validate_params(make(0, {}, {}, {}, 3), 2, 3), std::invalid_argument);
    // negative s
    REQUIRE_THROWS_AS(validate_params(make(0, {}, {}, {}, -1), 2, 2), std::invalid_argument);

    REQUIRE_THROWS_AS(rep_matrix(make(9, {9}, {}, {}, 0), 3, 3), std::invalid_argument);
}

TEST_CASE("rep_matrix frozen examples") {
    // r=2, partition (2), column pivot at the chain end 2, row pivot at the
    // chain start 1, s=0 in gl(3|3)
    OrbitParams p;
    p.r = 2;
    p.partition = {2};
    p.c_pivots = {2};
    p.r_pivots = {1};
    p.s = 0;
    OddElement y = rep_matrix(p, 3, 3);
    REQUIRE(y.xplus == Matrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 0}}));
    REQUIRE(y.xminus == Matrix::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    REQUIRE(in_nilcone_gl(y));

    // pure corner: r=0, s=2 in gl(2|3)
    OrbitParams q;
    q.s = 2;
    OddElement z = rep_matrix(q, 2, 3);
    REQUIRE(z.xplus == Matrix(2, 3));
    REQUIRE(z.xminus == Matrix::from_rows({{1, 0}, {0, 1}, {0, 0}}));

    // two equal blocks with one shared and one column-only pivot in gl(5|4):
    // partition (1,1), c_pivots {1,2}, r_pivots {1}
    OrbitParams w;
    w.r = 2;
    w.partition = {1, 1};
    w.c_pivots = {1, 2};
    w.r_pivots = {1};
    w.s = 1;
    OddElement v = rep_matrix(w, 5, 4);
    REQUIRE(v.xminus == Matrix::from_rows({{0, 0, 1, 0, 0},
                                           {0, 0, 0, 1, 0},
                                           {1, 0, 0, 0, 0},
                                           {0, 0, 0, 0, 1}}));
}

TEST_CASE("census counts against brute-force classification") {
    // gl(1|1): three orbits, classified independently
    auto reps11 = enumerate_reps(1, 1);
    REQUIRE(reps11.size() == 3);
    std::set<int> classes11;
    for (const auto& p : reps11) {
        OddElement rep = rep_matrix(p, 1, 1);
        auto cls = oracle::classify_cone_11(rep);
        REQUIRE(cls.has_value());
        classes11.insert(*cls);
        // the conjugator returned by the oracle really moves rep to the
        // oracle's class representative
        GroupElement wit = oracle::witness_11(rep);
        OddElement moved = act(wit, rep);
        auto cls2 = oracle::classify_cone_11(moved);
        REQUIRE(cls2 == cls);
    }
    REQUIRE(classes11.size() == 3);

    // gl(2|1): four orbits
    auto reps21 = enumerate_reps(2, 1);
    REQUIRE(reps21.size() == 4);
    std::set<int> classes21;
    for (const auto& p : reps21) {
        OddElement rep = rep_matrix(p, 2, 1);
        auto cls = oracle::classify_cone_21(rep);
        REQUIRE(cls.has_value());
        classes21.insert(*cls);
        REQUIRE(act(oracle::witness_21(rep), rep) == oracle::rep_21(*cls));
    }
    REQUIRE(classes21.size() == 4);

    // random cone elements classify consistently along their orbit
    Rng rng(113);
    for (int t = 0; t < 40; ++t) {
        const OrbitParams& p = reps21[static_cast<size_t>(rng.uniform(0, 3))];
        OddElement rep = rep_matrix(p, 2, 1);
        OddElement x = act(oracle::random_group(rng, 2, 1), rep);
        auto cls = oracle::classify_cone_21(x);
        REQUIRE(cls == oracle::classify_cone_21(rep));
        REQUIRE(act(oracle::witness_21(x), x) == oracle::rep_21(*cls));
    }
}

TEST_CASE("census frozen counts and determinism") {
    REQUIRE(enumerate_reps(2, 2).size() == 10);
    REQUIRE(enumerate_reps(3, 3).size() == 27);
    REQUIRE(enumerate_reps(1, 2).size() == 4);

    // the element-swap bijection (x+, x-) <-> (x-, x+) makes counts symmetric
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n)
            REQUIRE(enumerate_reps(m, n).size() == enumerate_reps(n, m).size());

    auto reps = enumerate_reps(3, 3);
    REQUIRE(reps == enumerate_reps(3, 3));
    REQUIRE(std::is_sorted(reps.begin(), reps.end()));
    // no duplicates, all valid, all in the cone
    for (size_t i = 0; i < reps.size(); ++i) {
        if (i > 0) REQUIRE(reps[i - 1] < reps[i]);
        REQUIRE_NOTHROW(validate_params(reps[i], 3, 3));
        REQUIRE(in_nilcone_gl(rep_matrix(reps[i], 3, 3)));
    }
}

TEST_CASE("self-commuting census") {
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            int l = std::min(m, n);
            auto ds = ds_reps(m, n);
            REQUIRE(static_cast<int>(ds.size()) == (l + 1) * (l + 2) / 2);

            // exactly the census entries whose representative self-commutes
            std::vector<OrbitParams> filtered;
            for (const auto& p : enumerate_reps(m, n))
                if (in_self_commuting(rep_matrix(p, m, n))) filtered.push_back(p);
            std::sort(filtered.begin(), filtered.end());
            REQUIRE(filtered == ds);
        }
}

TEST_CASE("orbit signatures separate the census and are invariant") {
    Rng rng(127);
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
        auto reps = enumerate_reps(m, n);
        std::set<OrbitSignature> seen;
        for (const auto& p : reps) {
            OddElement rep = rep_matrix(p, m, n);
            OrbitSignature sig = orbit_signature(rep);
            REQUIRE_FALSE(seen.count(sig));
            seen.insert(sig);
            // conjugation invariance
            OddElement x = act(oracle::random_group(rng, m, n), rep);
            REQUIRE(orbit_signature(x) == sig);
        }
        REQUIRE(seen.size() == reps.size());
    }
}
