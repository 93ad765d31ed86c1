// Drives the installed binary end to end through a shell, checking output
// and the exit-code contract: 0 ok/true, 1 domain failure, 2 malformed input.
#include "oddcone/canonical_form.hpp"
#include "oddcone/json_io.hpp"
#include "oddcone/nilcone.hpp"
#include "oddcone/sampling.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace oddcone;

namespace {

std::string temp_path(const std::string& tag) {
    static int counter = 0;
    return "/tmp/oddcone_cli_" + std::to_string(::getpid()) + "_" + tag + "_" +
           std::to_string(++counter) + ".json";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << text;
}

struct CliRun {
    int code;
    std::string out;
};

CliRun run_cli(const std::string& args) {
    std::string out_path = temp_path("out");
    std::string cmd = std::string("\"") + ODDCONE_CLI_PATH + "\" " + args + " > " + out_path +
                      " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(rc));
    std::ifstream in(out_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    std::remove(out_path.c_str());
    return CliRun{WEXITSTATUS(rc), ss.str()};
}

std::string element_file(const OddElement& x, const std::string& tag) {
    std::string path = temp_path(tag);
    write_file(path, to_json(x).dump());
    return path;
}

}  // namespace

TEST_CASE("cli member") {
    // self-commuting element: member passes under both gates
    OddElement z(2, 2, Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {0, 1}}));
    std::string zp = element_file(z, "member_sc");
    CliRun r = run_cli("member " + zp);
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    REQUIRE(out.at("in_nilcone").get<bool>());
    REQUIRE(out.at("in_self_commuting").get<bool>());
    REQUIRE(run_cli("member --self-commuting " + zp).code == 0);

    // in the cone but not self-commuting
    OddElement y(2, 2, Matrix::from_rows({{1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {1, 0}}));
    std::string yp = element_file(y, "member_cone");
    REQUIRE(run_cli("member " + yp).code == 0);
    REQUIRE(run_cli("member --self-commuting " + yp).code == 1);

    // not in the cone at all
    OddElement w(2, 2, Matrix::identity(2), Matrix::identity(2));
    std::string wp = element_file(w, "member_out");
    r = run_cli("member " + wp);
    REQUIRE(r.code == 1);
    out = json::parse(r.out);
    REQUIRE_FALSE(out.at("in_nilcone").get<bool>());
    REQUIRE(out.at("invariants") == json::array({"2", "2"}));

    // kind-aware: z is not in g_1(q(2)); a shared-blocks element is
    REQUIRE(run_cli("member --kind 'q(2)' " + zp).code == 1);
    OddElement q(2, 2, Matrix::from_rows({{0, 1}, {0, 0}}), Matrix::from_rows({{0, 1}, {0, 0}}));
    REQUIRE(run_cli("member --kind 'q(2)' " + element_file(q, "member_q")).code == 0);
}

TEST_CASE("cli canon round trip") {
    Rng rng(139);
    OrbitParams p;
    p.r = 2;
    p.partition = {2};
    p.c_pivots = {2};
    p.r_pivots = {1};
    p.s = 0;
    OddElement x = sample_nilcone(Kind::gl(3, 3), rng, p);
    std::string xp = element_file(x, "canon_in");

    CliRun r = run_cli("canon " + xp);
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    GroupElement g = group_from_json(out.at("g"));
    OddElement y = element_from_json(out.at("y"));
    REQUIRE(act(g, x) == y);
    REQUIRE(params_from_json(out.at("params")) == p);
    REQUIRE(y == rep_matrix(p, 3, 3));
    REQUIRE_FALSE(out.contains("trace"));

    r = run_cli("canon --trace " + xp);
    REQUIRE(r.code == 0);
    out = json::parse(r.out);
    REQUIRE(out.contains("trace"));
    REQUIRE(out.at("trace").is_array());
    for (const json& rec : out.at("trace")) {
        GroupElement gs = group_from_json(rec.at("g"));
        REQUIRE(act(gs, x) == element_from_json(rec.at("y")));
        REQUIRE_FALSE(rec.at("stage").get<std::string>().empty());
    }

    // reading from stdin
    r = run_cli("canon < " + xp);
    REQUIRE(r.code == 0);

    // outside the cone: domain failure
    OddElement bad(2, 2, Matrix::identity(2), Matrix::identity(2));
    r = run_cli("canon " + element_file(bad, "canon_bad"));
    REQUIRE(r.code == 1);
    REQUIRE(r.out.empty());
}

TEST_CASE("cli census") {
    CliRun r = run_cli("census --m 2 --n 2");
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string line, last;
    int count = 0;
    while (std::getline(lines, line))
        if (!line.empty()) {
            ++count;
            last = line;
        }
    REQUIRE(count == 11);  // 10 representatives + summary
    json summary = json::parse(last);
    REQUIRE(summary.at("orbit_count").get<int>() == 10);
    REQUIRE(summary.at("ds_count").get<int>() == 6);

    r = run_cli("census --m 2 --n 2 --ds-only");
    REQUIRE(r.code == 0);
    count = 0;
    std::istringstream lines2(r.out);
    while (std::getline(lines2, line))
        if (!line.empty()) ++count;
    REQUIRE(count == 7);  // 6 + summary
}

TEST_CASE("cli verify commands") {
    CliRun r = run_cli("verify-complement --kind 'q(2)'");
    REQUIRE(r.code == 0);
    json out = json::parse(r.out);
    REQUIRE(out.at("pass").get<bool>());
    REQUIRE(out.at("checks").is_array());
    REQUIRE_FALSE(out.at("checks").empty());

    REQUIRE(run_cli("verify-complement --kind 'osp(3|2)'").code == 0);
    REQUIRE(run_cli("verify-complement --kind 'sl(2|3)'").code == 0);
    // No invariant complement exists for these: malformed request
    REQUIRE(run_cli("verify-complement --kind 'gl(2|2)'").code == 2);
    REQUIRE(run_cli("verify-complement --kind 'sl(2|2)'").code == 2);

    r = run_cli("verify-inclusion --m 2 --n 2 --samples 3 --seed 5");
    REQUIRE(r.code == 0);
    out = json::parse(r.out);
    REQUIRE(out.at("pass").get<bool>());
    REQUIRE(out.at("samples_checked").get<int>() == 18);  // 6 reps x 3
}

TEST_CASE("cli sample") {
    CliRun r = run_cli("sample --kind 'gl(2|3)' --seed 9");
    REQUIRE(r.code == 0);
    OddElement x = element_from_json(json::parse(r.out));
    REQUIRE(in_nilcone_gl(x));

    r = run_cli("sample --kind 'p(3)' --seed 4 --iso-rank 2");
    REQUIRE(r.code == 0);
    x = element_from_json(json::parse(r.out));
    REQUIRE(odd_membership(Kind::p(3), x));
    REQUIRE(rank(x.xplus) == 2);

    // same seed, same element: sampling is deterministic
    CliRun r2 = run_cli("sample --kind 'gl(2|3)' --seed 9");
    CliRun r3 = run_cli("sample --kind 'gl(2|3)' --seed 9");
    REQUIRE(r2.out == r3.out);

    // orbit-targeted sampling for gl
    std::string params = "'{\"r\":1,\"partition\":[1],\"c_pivots\":[],\"r_pivots\":[],\"s\":1}'";
    r = run_cli("sample --kind 'gl(2|2)' --seed 3 --params " + params);
    REQUIRE(r.code == 0);
    x = element_from_json(json::parse(r.out));
    REQUIRE(in_nilcone_gl(x));
    REQUIRE(rank(x.xplus) == 1);

    // iso-rank out of range for the kind
    REQUIRE(run_cli("sample --kind 'p(3)' --seed 4 --iso-rank 9").code == 2);
    // params belong to gl/sl only
    REQUIRE(run_cli("sample --kind 'q(2)' --seed 1 --params " + params).code == 2);
}

TEST_CASE("cli malformed input") {
    std::string junk = temp_path("junk");
    write_file(junk, "{not json");
    REQUIRE(run_cli("member " + junk).code == 2);
    REQUIRE(run_cli("canon " + junk).code == 2);

    // floats are rejected: exactness is part of the contract
    std::string fl = temp_path("float");
    write_file(fl, R"({"m":1,"n":1,"xplus":[[0.5]],"xminus":[[0]]})");
    REQUIRE(run_cli("member " + fl).code == 2);

    // shape mismatch
    std::string shp = temp_path("shape");
    write_file(shp, R"({"m":2,"n":1,"xplus":[["1"]],"xminus":[["0","0"]]})");
    REQUIRE(run_cli("member " + shp).code == 2);

    std::string ok = temp_path("ok");
    write_file(ok, R"({"m":1,"n":1,"xplus":[["1"]],"xminus":[["0"]]})");
    REQUIRE(run_cli("member " + ok).code == 0);
    REQUIRE(run_cli("member --kind 'zz(1)' " + ok).code == 2);

    // CLI-level errors
    REQUIRE(run_cli("census --m 2").code == 2);
    REQUIRE(run_cli("census --m 0 --n 2").code == 2);
    REQUIRE(run_cli("frobnicate").code == 2);
    REQUIRE(run_cli("sample --kind 'p(3)' --iso-rank 1 --params '{}'").code == 2);
    REQUIRE(run_cli("--help").code == 0);

    // missing input file
    REQUIRE(run_cli("member /tmp/oddcone_definitely_missing.json").code == 2);
}
