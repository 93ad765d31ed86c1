// oddcone: command-line front end for the odd nilpotent cone library.
//
// Exit codes: 0 success / predicate holds, 1 predicate fails or the input is
// outside the algorithm's domain, 2 malformed input (bad JSON, bad kind, bad
// parameters), 3 internal error.

#include <CLI11.hpp>

#include "oddcone/canonical_form.hpp"
#include "oddcone/complement.hpp"
#include "oddcone/json_io.hpp"
#include "oddcone/nilcone.hpp"
#include "oddcone/orbit_census.hpp"
#include "oddcone/sampling.hpp"
#include "oddcone/superalgebra.hpp"

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace oddcone;

namespace {

json read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path);
        if (!in) throw std::invalid_argument("cannot open input file: " + path);
        ss << in.rdbuf();
    }
    return json::parse(ss.str());
}

int cmd_member(const std::string& input, const std::string& kind_str, bool self_commuting) {
    OddElement x = element_from_json(read_input(input));
    Kind kind = kind_str.empty() ? Kind::gl(x.m, x.n) : Kind::parse(kind_str);
    bool g1 = odd_membership(kind, x);
    bool cone = g1 && in_nilcone_gl(x);
    bool sc = g1 && in_self_commuting(x);
    json inv = json::array();
    for (const Rational& v : invariants(x)) inv.push_back(v.str());
    json out{{"kind", kind.str()},
             {"in_g1", g1},
             {"in_nilcone", cone},
             {"in_self_commuting", sc},
             {"invariants", std::move(inv)}};
    std::cout << out.dump() << "\n";
    return (self_commuting ? sc : cone) ? 0 : 1;
}

int cmd_canon(const std::string& input, bool with_trace) {
    OddElement x = element_from_json(read_input(input));
    CanonicalResult res = canonicalize(x, with_trace);
    std::cout << to_json(res, with_trace).dump(2) << "\n";
    return 0;
}

int cmd_census(int m, int n, bool ds_only) {
    std::vector<OrbitParams> reps = enumerate_reps(m, n);
    std::vector<OrbitParams> ds = ds_reps(m, n);
    for (const OrbitParams& p : ds_only ? ds : reps) std::cout << to_json(p).dump() << "\n";
    json summary{{"m", m},
                 {"n", n},
                 {"orbit_count", reps.size()},
                 {"ds_count", ds.size()}};
    std::cout << summary.dump() << "\n";
    return 0;
}

int cmd_verify_complement(const std::string& kind_str) {
    Kind kind = Kind::parse(kind_str);
    VerifyReport rep = verify_complement(kind);
    std::cout << to_json(rep).dump(2) << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_verify_inclusion(int m, int n, int samples, uint64_t seed) {
    std::vector<OrbitParams> reps = enumerate_reps(m, n);
    std::vector<OrbitParams> ds = ds_reps(m, n);

    // The listed self-commuting representatives must be exactly the census
    // entries whose both compositions vanish.
    std::vector<OrbitParams> sc_in_census;
    for (const OrbitParams& p : reps)
        if (in_self_commuting(rep_matrix(p, m, n))) sc_in_census.push_back(p);
    bool reps_match = sc_in_census == ds;

    bool all_in_x = true, all_in_cone = true;
    int checked = 0;
    Kind kind = Kind::gl(m, n);
    for (size_t i = 0; i < ds.size(); ++i) {
        Rng rng(derive_seed({seed, static_cast<uint64_t>(m), static_cast<uint64_t>(n),
                             static_cast<uint64_t>(i)}));
        for (int t = 0; t < samples; ++t) {
            OddElement x = act(sample_group(kind, rng), rep_matrix(ds[i], m, n));
            all_in_x = all_in_x && in_self_commuting(x);
            all_in_cone = all_in_cone && in_nilcone_gl(x);
            ++checked;
        }
    }
    bool pass = reps_match && all_in_x && all_in_cone;
    json out{{"m", m},
             {"n", n},
             {"self_commuting_orbits", ds.size()},
             {"nilcone_orbits", reps.size()},
             {"samples_checked", checked},
             {"samples_in_self_commuting", all_in_x},
             {"samples_in_nilcone", all_in_cone},
             {"self_commuting_reps_match", reps_match},
             {"pass", pass}};
    std::cout << out.dump(2) << "\n";
    return pass ? 0 : 1;
}

int cmd_sample(const std::string& kind_str, uint64_t seed, const std::string& params_str,
               int iso_rank, bool has_iso_rank) {
    Kind kind = Kind::parse(kind_str);
    Rng rng(derive_seed({seed, 0x5eedULL}));
    OddElement x;
    if (!params_str.empty())
        x = sample_nilcone(kind, rng, params_from_json(json::parse(params_str)));
    else if (has_iso_rank)
        x = sample_nilcone(kind, rng, iso_rank);
    else
        x = sample_nilcone(kind, rng);
    std::cout << to_json(x).dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Odd nilpotent cone toolkit for classical Lie superalgebras"};
    app.require_subcommand(1);

    std::string input = "-";
    std::string kind_str;
    bool self_commuting = false;
    CLI::App* member = app.add_subcommand(
        "member", "Test membership of an element in the odd nilpotent cone");
    member->add_option("input", input, "Element JSON file ('-' for stdin)")
        ->capture_default_str();
    member->add_option("--kind", kind_str, "Superalgebra kind, e.g. gl(2|3), q(3), osp(5|4)");
    member->add_flag("--self-commuting", self_commuting,
                     "Gate the exit code on [x,x] == 0 instead of nilpotency");

    bool with_trace = false;
    CLI::App* canon = app.add_subcommand(
        "canon", "Canonical form of a gl(m|n) cone element, with group witness");
    canon->add_option("input", input, "Element JSON file ('-' for stdin)")->capture_default_str();
    canon->add_flag("--trace", with_trace, "Record the intermediate stages");

    int m = 1, n = 1;
    bool ds_only = false;
    CLI::App* census = app.add_subcommand(
        "census", "List the orbit representatives of the odd nilpotent cone of gl(m|n)");
    census->add_option("--m", m, "Even dimension m")->required()->check(CLI::PositiveNumber);
    census->add_option("--n", n, "Odd dimension n")->required()->check(CLI::PositiveNumber);
    census->add_flag("--ds-only", ds_only, "List only the self-commuting orbits");

    std::string vc_kind;
    CLI::App* vcomp = app.add_subcommand(
        "verify-complement", "Check the invariant complement construction for a kind");
    vcomp->add_option("--kind", vc_kind, "Superalgebra kind (sl/q/p/osp)")->required();

    int samples = 25;
    uint64_t seed = 0;
    CLI::App* vincl = app.add_subcommand(
        "verify-inclusion",
        "Check that the self-commuting variety sits inside the nilpotent cone");
    vincl->add_option("--m", m, "Even dimension m")->required()->check(CLI::PositiveNumber);
    vincl->add_option("--n", n, "Odd dimension n")->required()->check(CLI::PositiveNumber);
    vincl->add_option("--samples", samples, "Random conjugates per representative")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    vincl->add_option("--seed", seed, "Random seed")->capture_default_str();

    std::string sample_kind, params_str;
    int iso_rank = 0;
    CLI::App* sample = app.add_subcommand("sample", "Draw a random element of the cone");
    sample->add_option("--kind", sample_kind, "Superalgebra kind")->required();
    sample->add_option("--seed", seed, "Random seed")->capture_default_str();
    CLI::Option* opt_params = sample->add_option(
        "--params", params_str, "Orbit parameters JSON (gl/sl): sample from that orbit");
    CLI::Option* opt_rank =
        sample->add_option("--iso-rank", iso_rank, "Seed rank (q/p/osp)")->check(CLI::NonNegativeNumber);
    opt_params->excludes(opt_rank);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (member->parsed()) return cmd_member(input, kind_str, self_commuting);
        if (canon->parsed()) return cmd_canon(input, with_trace);
        if (census->parsed()) return cmd_census(m, n, ds_only);
        if (vcomp->parsed()) return cmd_verify_complement(vc_kind);
        if (vincl->parsed()) return cmd_verify_inclusion(m, n, samples, seed);
        if (sample->parsed())
            return cmd_sample(sample_kind, seed, params_str, iso_rank, opt_rank->count() > 0);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
