#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "concur/cli.hpp"
#include "fixtures.hpp"

using concur::io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = concur::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string fx(const std::string& name)
{
    return fixtures::path(name);
}

json without_timing(json j)
{
    j.erase("timing_ms");
    return j;
}

}  // namespace

TEST_CASE("sha256")
{
    CHECK(concur::cli::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(concur::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("validate")
{
    CHECK(run({"validate", fx("cube.json")}).code == 0);
    CHECK(run({"validate", fx("empty_events.json")}).code == 0);
    auto broken = run({"validate", fx("cube_broken_diamond.json")});
    CHECK(broken.code == 1);
    CHECK(broken.out.find("[diamond] square (000, a1, a2)") != std::string::npos);
    CHECK(run({"validate", fx("firing_net.json")}).code == 0);
    CHECK(run({"validate", fx("hollow_triangle.json"), "--type", "scheme"}).code == 0);

    auto j = run({"validate", fx("cube_broken_diamond.json"), "--json"});
    auto doc = json::parse(j.out);
    CHECK(doc["command"] == "validate");
    CHECK(doc["results"]["valid"] == false);
    CHECK(doc["inputs"][0]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("parse errors exit 1 with a location")
{
    auto dir = std::filesystem::temp_directory_path() / "concur-cli-test";
    std::filesystem::create_directories(dir);
    auto bad = (dir / "bad.json").string();
    std::ofstream(bad) << "{\n  \"states\": [\"s\",]\n}\n";
    auto r = run({"validate", bad});
    CHECK(r.code == 1);
    CHECK(r.err.find("bad.json:2:") != std::string::npos);

    auto missing = run({"homology", (dir / "nope.json").string()});
    CHECK(missing.code == 1);
    CHECK(missing.err.find("cannot read") != std::string::npos);
}

TEST_CASE("homology")
{
    auto r = run({"homology", fx("cube.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("H0 = Z\nH1 = Z\nHn = 0 for n >= 2\n") != std::string::npos);
    CHECK(run({"homology", fx("cube.json"), "--state", "001"}).out.find("H0 = Z^2\nHn = 0 for n >= 1\n") !=
          std::string::npos);
    CHECK(run({"homology", fx("cube.json"), "--state", "011"}).out.find("Hn = 0 for n >= 0\n") !=
          std::string::npos);
    auto unreachable = run({"homology", fx("cube.json"), "--state", "999"});
    CHECK(unreachable.code == 1);

    auto dump = run({"homology", fx("cube.json"), "--dump-matrices"});
    CHECK(dump.out.find("d1 3 3\n-1 -1 0\n1 0 -1\n0 1 1\nsmith d1: 1 1 0 (rank 2)\n") != std::string::npos);

    auto net = run({"homology", fx("two_conflicts_net.json"), "--json", "--dump-matrices"});
    auto doc = json::parse(net.out);
    CHECK(doc["results"]["markings"] == 4);
    CHECK(doc["results"]["matrices"][0]["smith"]["diagonal"] == json::array({1, 1, 1, 0}));
    CHECK(doc["results"]["homology"][1]["group"] == "Z");

    CHECK(run({"homology", fx("broken_missing.json")}).code == 1);
    CHECK(run({"homology", fx("cube_broken_diamond.json")}).code == 1);
    CHECK(run({"homology", fx("hollow_triangle.json"), "--state", "x"}).code == 1);
}

TEST_CASE("homology limits from flags and environment")
{
    auto r = run({"homology", fx("firing_net.json"), "--max-tokens", "8"});
    CHECK(r.code == 1);
    CHECK(r.err.find("exceeds the limit of 8 tokens") != std::string::npos);

    auto s = run({"homology", fx("firing_net.json"), "--limits", "states=5"});
    CHECK(s.code == 1);
    CHECK(s.err.find("limit of 5 states") != std::string::npos);

    ::setenv("CONCUR_HOMOLOGY_LIMITS", "tokens=3", 1);
    auto e = run({"homology", fx("firing_net.json")});
    ::unsetenv("CONCUR_HOMOLOGY_LIMITS");
    CHECK(e.code == 1);
    CHECK(e.err.find("limit of 3 tokens") != std::string::npos);

    CHECK(run({"homology", fx("firing_net.json"), "--limits", "bogus=1"}).code == 1);
}

TEST_CASE("bisim exit codes")
{
    auto refute = run({"bisim", fx("two_trees_left.json"), fx("two_trees_right.json"), "--refute"});
    CHECK(refute.code == 2);
    CHECK(refute.out.find("witness: a1 (length 1, left side)") != std::string::npos);

    CHECK(run({"bisim", fx("cube.json"), fx("cube.json"), "--refute"}).code == 3);
    CHECK(run({"bisim", fx("cube.json"), fx("cube_renamed.json"), "--certify", fx("cube_renamed_span.json")}).code ==
          0);
    CHECK(run({"bisim", fx("two_trees_left.json"), fx("two_trees_right.json"), "--certify",
               fx("two_trees_span.json")})
              .code == 3);
    CHECK(run({"bisim", fx("cube.json"), fx("two_trees_left.json"), "--refute"}).code == 1);
    CHECK(run({"bisim", fx("cube.json"), fx("cube.json")}).code == 1);
    CHECK(run({"bisim", fx("cube.json"), fx("cube.json"), "--certify", fx("cube.json")}).code == 1);

    auto j = run({"bisim", fx("two_trees_left.json"), fx("two_trees_right.json"), "--refute", "--max-len", "3",
                  "--json"});
    auto doc = json::parse(j.out);
    CHECK(doc["results"]["verdict"] == "NotBisimilar");
    CHECK(doc["results"]["witness"] == json::array({"a1"}));
    CHECK(doc["inputs"].size() == 2);
}

TEST_CASE("construct")
{
    auto r = run({"construct", "sphere:1", "--verify"});
    CHECK(r.code == 0);
    CHECK(r.err.find("verified: true") != std::string::npos);
    auto net = json::parse(r.out);
    CHECK(net["events"].size() == 6);

    auto j = json::parse(run({"construct", "rp2", "--verify", "--json"}).out);
    CHECK(j["results"]["verification"]["verified"] == true);
    CHECK(j["results"]["verification"]["net"][1]["group"] == "Z/2");

    auto single = json::parse(run({"construct", "--scheme", fx("single_vertex.json")}).out);
    CHECK(single["places"].size() == 1);

    auto out = (std::filesystem::temp_directory_path() / "concur-cli-test-net.json").string();
    CHECK(run({"construct", "wedge(sphere:1,sphere:2)", "-o", out}).code == 0);
    CHECK(run({"homology", out}).out.find("H2 = Z") != std::string::npos);

    CHECK(run({"construct", "torus"}).code == 1);
    CHECK(run({"construct"}).code == 1);
    CHECK(run({"construct", "rp2", "--scheme", fx("single_vertex.json")}).code == 1);
}

TEST_CASE("snf")
{
    auto r = run({"snf", fx("cube_d1.txt")});
    CHECK(r.out == "matrix: 3 x 3\ndiagonal: 1 1 0\nrank: 2\n");
    CHECK(run({"snf", fx("identity3.txt")}).out.find("diagonal: 1 1 1\n") != std::string::npos);
    CHECK(run({"snf", fx("diag23.txt")}).out.find("diagonal: 1 6\n") != std::string::npos);
}

TEST_CASE("usage errors")
{
    CHECK(run({}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"homology"}).code == 1);
}

TEST_CASE("reports are deterministic apart from timing")
{
    for (std::vector<std::string> args :
         {std::vector<std::string>{"homology", fx("cube.json"), "--json", "--dump-matrices"},
          std::vector<std::string>{"bisim", fx("cube.json"), fx("cube_without_110.json"), "--refute", "--json"},
          std::vector<std::string>{"construct", "rp2", "--verify", "--json"}}) {
        auto a = json::parse(run(args).out);
        auto b = json::parse(run(args).out);
        CHECK(a.contains("timing_ms"));
        CHECK(without_timing(a) == without_timing(b));
    }
}
