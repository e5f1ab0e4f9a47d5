// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Criteria 7 and 8 run the linked property suites in-process.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "concur/cli.hpp"
#include "concur/construct.hpp"
#include "concur/petri.hpp"
#include "fixtures.hpp"

using namespace concur;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

struct Cli {
    int code;
    std::string out;
    std::string err;
};

Cli run(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part)
{
    return s.find(part) != std::string::npos;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome cube_homology()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto full = run({"homology", fixtures::path("cube.json")});
    auto s001 = run({"homology", fixtures::path("cube.json"), "--state", "001"});
    auto s011 = run({"homology", fixtures::path("cube.json"), "--state", "011"});
    double t = seconds_since(t0);
    o.require(full.code == 0 && contains(full.out, "H0 = Z\nH1 = Z\nHn = 0 for n >= 2\n"), "cube signature");
    o.require(s001.code == 0 && contains(s001.out, "H0 = Z^2\nHn = 0 for n >= 1\n"), "state 001");
    o.require(s011.code == 0 && contains(s011.out, "Hn = 0 for n >= 0\n"), "state 011");
    o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
    return o;
}

Outcome cube_matrices()
{
    Outcome o;
    auto r = run({"homology", fixtures::path("cube.json"), "--dump-matrices"});
    o.require(contains(r.out, "order d1 columns: (a1,a2) (a1,a3) (a2,a3)"), "column order");
    o.require(contains(r.out, "d1 3 3\n-1 -1 0\n1 0 -1\n0 1 1\n"), "d1 entries");
    o.require(contains(r.out, "smith d1: 1 1 0 (rank 2)"), "smith diagonal");
    return o;
}

Outcome two_trees()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto r = run({"bisim", fixtures::path("two_trees_left.json"), fixtures::path("two_trees_right.json"), "--refute"});
    double t = seconds_since(t0);
    o.require(r.code == cli::kNotBisimilar && contains(r.out, "verdict: NotBisimilar"), "verdict");
    o.require(contains(r.out, "(length 1,"), "witness length");
    o.require(t < 1.0, "runtime " + std::to_string(t) + " s");
    return o;
}

Outcome petri_example()
{
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto r = run({"homology", fixtures::path("two_conflicts_net.json"), "--dump-matrices"});
    double t = seconds_since(t0);
    o.require(r.code == 0 && contains(r.out, "H0 = Z\nH1 = Z\nHn = 0 for n >= 2\n"), "net signature");
    o.require(contains(r.out, "smith d1: 1 1 1 0 (rank 3)"), "smith diagonal");
    o.require(t < 5.0, "runtime " + std::to_string(t) + " s");
    return o;
}

Outcome firing()
{
    Outcome o;
    auto n = fixtures::net("firing_net.json").net();
    const auto& m0 = n.initial_marking();
    o.require(m0.tokens == std::vector<std::uint64_t>{2, 1}, "initial marking");
    auto m1 = fire(n, m0, n.event_index(EventId("t2")));
    o.require(m1.tokens == std::vector<std::uint64_t>{1, 0}, "after t2: " + encode_marking(m1));
    return o;
}

Outcome constructions()
{
    Outcome o;
    for (const char* f : {"sphere:1", "sphere:2", "rp2", "wedge(sphere:1,sphere:2)"}) {
        auto t0 = std::chrono::steady_clock::now();
        auto k = fixture_scheme(f);
        auto c = verify_construction(k);
        double t = seconds_since(t0);
        o.require(c.ok && c.net == homology(k), std::string(f) + " signature");
        o.require(t < 60.0, std::string(f) + " runtime " + std::to_string(t) + " s");
        if (std::string(f) == "rp2")
            o.require(c.net.at(1).betti == 0 && c.net.at(1).torsion == std::vector<BigInt>{2}, "rp2 torsion");
    }
    return o;
}

Outcome suite(const char* source_file)
{
    Outcome o;
    std::ostringstream sink;
    doctest::Context ctx;
    ctx.setOption("source-file", source_file);
    ctx.setCout(&sink);
    int rc = ctx.run();
    o.require(rc == 0, "failures in " + std::string(source_file) + ":\n" + sink.str());
    if (o.ok) {
        auto pos = sink.str().find("test cases:");
        if (pos != std::string::npos)
            o.detail = sink.str().substr(pos, sink.str().find('\n', pos) - pos);
    }
    return o;
}

}  // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"cube homology and residuals", cube_homology},
        {"cube boundary matrix and Smith diagonal", cube_matrices},
        {"two trees refuted at length 1", two_trees},
        {"Petri example homology", petri_example},
        {"firing example", firing},
        {"constructed nets realise fixture homology", constructions},
        {"randomised property suites", [] { return suite("*test_properties.cpp"); }},
        {"theorem-level properties", [] { return suite("*test_theorems.cpp"); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (o.ok ? "[PASS] " : "[FAIL] ") << i + 1 << " " << criteria[i].first;
        if (!o.detail.empty())
            std::cout << " (" << o.detail << ")";
        std::cout << "\n";
        failed += o.ok ? 0 : 1;
    }
    std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria passed\n");
    return failed ? 1 : 0;
}
