#include <doctest.h>

#include <sstream>

#include "concur/io.hpp"
#include "fixtures.hpp"

using namespace concur;
using io::json;

TEST_CASE("JSON syntax errors carry line and column")
{
    try {
        io::parse_json("{\n  \"states\": [\n  ,\n]}", "broken.json");
        FAIL("expected a parse error");
    } catch (const InputError& e) {
        std::string what = e.what();
        CHECK(what.rfind("broken.json:3:", 0) == 0);
    }
    CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), InputError);
}

TEST_CASE("system documents")
{
    auto doc = io::read_json_file(fixtures::path("cube.json"));
    auto la = io::system_from_json(doc);
    CHECK(la.alphabet().size() == 3);
    auto back = io::system_to_json(la);
    auto again = io::system_from_json(back);
    CHECK(io::system_to_json(again) == back);

    SUBCASE("unknown fields are rejected by name")
    {
        doc["colour"] = "red";
        CHECK_THROWS_WITH_AS(io::system_from_json(doc), "field 'colour': unknown field", InputError);
    }
    SUBCASE("missing fields")
    {
        doc.erase("initial");
        CHECK_THROWS_WITH_AS(io::system_from_json(doc), "field 'initial': missing", InputError);
    }
    SUBCASE("transition fields")
    {
        doc["transitions"][2]["event"] = 7;
        CHECK_THROWS_WITH_AS(io::system_from_json(doc), "field 'transitions[2].event': expected a string",
                             InputError);
    }
    SUBCASE("independence pairs")
    {
        doc["independence"][0] = json::array({"a1"});
        CHECK_THROWS_AS(io::system_from_json(doc), InputError);
    }
}

TEST_CASE("document kind detection")
{
    CHECK(io::detect_kind(io::read_json_file(fixtures::path("cube.json"))) == io::DocumentKind::System);
    CHECK(io::detect_kind(io::read_json_file(fixtures::path("firing_net.json"))) == io::DocumentKind::Net);
    CHECK(io::detect_kind(io::read_json_file(fixtures::path("single_edge.json"))) == io::DocumentKind::Scheme);
    CHECK_THROWS_AS(io::detect_kind(json::object()), InputError);
    CHECK_THROWS_AS(io::detect_kind(json::array()), InputError);
    CHECK(io::parse_kind("lts") == io::DocumentKind::System);
    CHECK_THROWS_AS(io::parse_kind("graph"), InputError);
}

TEST_CASE("net matrix and map forms agree")
{
    auto matrix = io::net_from_json(io::read_json_file(fixtures::path("firing_net.json")));
    json map_form = {{"places", {"p1", "p2"}},
                     {"events", {"t1", "t2", "t3"}},
                     {"pre", {{"t2", {{"p1", 1}, {"p2", 1}}}, {"t3", {{"p2", 1}}}}},
                     {"post", {{"t1", {{"p1", 2}, {"p2", 1}}}}},
                     {"initial_marking", {{"p1", 2}, {"p2", 1}}}};
    auto map = io::net_from_json(map_form);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK(map.net().pre(e) == matrix.net().pre(e));
        CHECK(map.net().post(e) == matrix.net().post(e));
    }
    CHECK(map.net().initial_marking() == matrix.net().initial_marking());
    CHECK(io::net_to_json(map) == io::net_to_json(io::net_from_json(io::net_to_json(map))));

    map_form["pre"]["t2"]["p1"] = -1;
    CHECK_THROWS_WITH_AS(io::net_from_json(map_form), "field 'pre.t2.p1': expected a non-negative integer",
                         InputError);
    map_form["pre"] = json::array({json::array({0, 0})});
    CHECK_THROWS_AS(io::net_from_json(map_form), InputError);
}

TEST_CASE("scheme documents")
{
    auto k = io::scheme_from_json(io::read_json_file(fixtures::path("hollow_triangle.json")));
    CHECK(k.simplices_of_dim(1).size() == 3);
    CHECK(io::scheme_from_json(io::scheme_to_json(k)) == k);
    CHECK_THROWS_AS(io::scheme_from_json(json{{"facets", {{"a"}, {}}}}), InputError);
    CHECK_THROWS_AS(io::scheme_from_json(json{{"facets", "a"}}), InputError);
}

TEST_CASE("morphism documents")
{
    auto m = io::morphism_from_json(io::read_json_file(fixtures::path("surjective_not_open_morphism.json")));
    CHECK(m.sigma.size() == 1);
    CHECK(m.eta.at(EventId("c")) == EventId("a'"));
    auto no_eta = io::morphism_from_json(json{{"sigma", {{"s", "t"}}}});
    CHECK(no_eta.eta.empty());
    CHECK_THROWS_AS(io::morphism_from_json(json{{"eta", json::object()}}), InputError);
}

TEST_CASE("matrix text")
{
    auto m = io::matrix_from_text("# the cube d1\n-1 -1 0\n1 0 -1   # row two\n\n0 1 1\n");
    CHECK(m == IntegerMatrix::from_rows({{-1, -1, 0}, {1, 0, -1}, {0, 1, 1}}));

    auto h = io::matrix_from_text("d2 2 1\n1\n-1\n");
    CHECK(h.rows() == 2);
    CHECK(h.cols() == 1);

    auto empty = io::matrix_from_text("d2 0 3\n");
    CHECK(empty.rows() == 0);
    CHECK(empty.cols() == 3);

    CHECK_THROWS_AS(io::matrix_from_text("d1 2 2\n1 2\n"), InputError);
    CHECK_THROWS_AS(io::matrix_from_text("1 x\n"), InputError);
    CHECK_THROWS_AS(io::matrix_from_text("1 2\n3\n"), InputError);

    std::ostringstream os;
    io::write_matrix(os, 1, m);
    CHECK(os.str() == "d1 3 3\n-1 -1 0\n1 0 -1\n0 1 1\n");
    CHECK(io::matrix_from_text(os.str()) == m);

    BigInt big = BigInt(1) << 80;
    auto b = io::matrix_from_text(big.str() + "\n");
    CHECK(b(0, 0) == big);
}

TEST_CASE("limits")
{
    auto l = io::parse_limits("states=10,tokens=3");
    CHECK(l.max_states == 10);
    CHECK(l.max_tokens == 3);
    auto d = io::parse_limits("tokens=5");
    CHECK(d.max_states == 100000);
    CHECK(io::parse_limits("").max_tokens == 64);
    CHECK(io::parse_limits("maxStates=7").max_states == 7);
    CHECK_THROWS_AS(io::parse_limits("states=0"), InputError);
    CHECK_THROWS_AS(io::parse_limits("depth=3"), InputError);
    CHECK_THROWS_AS(io::parse_limits("states"), InputError);
    CHECK_THROWS_AS(io::parse_limits("states=-1"), InputError);
}

TEST_CASE("result renderings")
{
    HomologySignature sig({DegreeGroup{1, {}}, DegreeGroup{0, {2}}});
    auto j = io::signature_to_json(sig);
    CHECK(j.dump() ==
          R"([{"degree":0,"betti":1,"torsion":[],"group":"Z"},{"degree":1,"betti":0,"torsion":[2],"group":"Z/2"}])");

    SmithForm f;
    f.diagonal = {1, BigInt(1) << 70, 0};
    f.rank = 2;
    CHECK(io::smith_to_json(f).dump() == R"({"diagonal":[1,"1180591620717411303424",0],"rank":2})");

    ValidationReport r;
    r.add("diamond", "x");
    CHECK(io::report_to_json(r).dump() == R"({"valid":false,"violations":[{"kind":"diamond","message":"x"}]})");
}
