#include <doctest.h>

#include <sstream>

#include <json.hpp>

#include "bw/cli.hpp"

using nlohmann::json;

namespace {

struct CliOut {
    int code;
    std::string out;
    std::string err;
};

CliOut run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = bw::cli_run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("dim-sing: golden output") {
    CliOut r = run({"dim-sing", "--M", "1,1,1", "--k", "1"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["formula"] == 2);
    CHECK(j["kernel"] == 2);
    CHECK(j["agree"] == true);
    CHECK(j["schema"] == 1);
}

TEST_CASE("dim-sing: usage error on k > |M|/2") {
    CliOut r = run({"dim-sing", "--M", "1,1", "--k", "5"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(!r.err.empty());
}

TEST_CASE("schubert: golden output and general p") {
    CliOut r = run({"schubert", "--q", "1,1,1,1", "--d", "3", "--p", "2"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["pieri"] == 2);
    CHECK(j["formula"] == 2);
    CHECK(j["rep_oracle"] == 2);

    CliOut r3 = run({"schubert", "--q", "1,1,1,1,1,1", "--d", "4", "--p", "3"});
    CHECK(r3.code == 0);
    json j3 = json::parse(r3.out);
    CHECK(j3["pieri"] == 5); // sigma_1^6 in G_3(C^5): standard tableaux of shape 2x3
    CHECK(j3["formula"].is_null());
    CHECK(j3["rep_oracle"].is_null());
}

TEST_CASE("bethe-solve: deterministic byte-identical output for a fixed seed") {
    std::vector<std::string> args{"bethe-solve", "--M", "1,1,1", "--z", "0,1,3", "--k", "1",
                                  "--seed", "11"};
    CliOut a = run(args);
    CliOut b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    json j = json::parse(a.out);
    CHECK(j["dim_sing"] == 2);
    CHECK(j["complete"] == true);
    CHECK(j["orbits"].size() == 2);
}

TEST_CASE("bethe-solve: complex z parsing") {
    CliOut r = run({"bethe-solve", "--M", "1,1", "--z", "1+2i,-1-1i", "--k", "1", "--seed", "3"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["complete"] == true);
    CHECK(j["z"][0][0] == 1.0);
    CHECK(j["z"][0][1] == 2.0);
    CHECK(j["z"][1][0] == -1.0);
    CHECK(j["z"][1][1] == -1.0);
}

TEST_CASE("gaudin-verify: all-exact flags") {
    CliOut r = run({"gaudin-verify", "--M", "2,1,1", "--z", "0,1/2,-3"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["commutators_zero"] == true);
    CHECK(j["sum_zero"] == true);
    CHECK(j["shapovalov_symmetric"] == true);
    CHECK(j["sing_preserved"] == true);

    CliOut bad = run({"gaudin-verify", "--M", "1,1", "--z", "2,2"});
    CHECK(bad.code == 2);
}

TEST_CASE("wronski --verify-correspondence roundtrips") {
    CliOut r = run({"wronski", "--verify-correspondence", "--M", "1,1,1", "--z", "0,1,3", "--k",
                    "1", "--seed", "5"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["roundtrips_ok"] == true);
    for (const auto& orb : j["orbits"]) {
        CHECK(orb["roundtrip_deviation"].get<double>() < 1e-8);
        CHECK(orb.contains("plane"));
    }
}

TEST_CASE("slp-dim and slp-solve") {
    CliOut r = run({"slp-dim", "--p", "3", "--M", "1,1,1", "--k", "1,0"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["kernel"] == 2);
    CHECK(j["upper_bound"] == 2);
    CHECK(j["agree"] == true);

    CliOut s = run({"slp-solve", "--p", "3", "--M", "1,1,1", "--z", "0,1,3", "--k", "1,0",
                    "--seed", "4"});
    CHECK(s.code == 0);
    json js = json::parse(s.out);
    CHECK(js["dim_sing"] == 2);
    CHECK(js["complete"] == true);
}

TEST_CASE("fuchsian-check: p = 2 pinned coefficients") {
    CliOut r = run({"fuchsian-check", "--p", "2", "--M", "1,1", "--k", "1"});
    CHECK(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["A"] == "-2");
    CHECK(j["B"] == "1");
    CHECK(j["C"] == "2");
    CHECK(j["exponents_match"] == true);
}

TEST_CASE("output modes: csv and pretty") {
    CliOut csv = run({"dim-sing", "--M", "1,1", "--k", "1", "--output", "csv"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("kernel,1") != std::string::npos);
    CliOut pretty = run({"dim-sing", "--M", "1,1", "--k", "1", "--output", "pretty"});
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find('\n') != std::string::npos);
}
