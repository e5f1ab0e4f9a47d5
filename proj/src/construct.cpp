#include "concur/construct.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace concur {

LabelledPetriNet petri_from_scheme(const SimplicialScheme& k)
{
    if (k.empty())
        throw PreconditionError("cannot build a net from the empty scheme");

    std::vector<SimplicialScheme::Simplex> cells(k.simplices().begin(), k.simplices().end());
    std::vector<Label> names;
    for (const auto& s : cells)
        names.push_back(simplex_name(k.labels_of(s)));

    auto comparable = [&](std::size_t i, std::size_t j) {
        const auto& a = cells[i];
        const auto& b = cells[j];
        return std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
               std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    NetDescription d;
    std::map<EventId, Label> labels;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        EventId e(names[i].str());
        PlaceId p("p" + names[i].str());
        d.events.push_back(e);
        d.places.push_back(p);
        d.pre[e][p] = 1;
        d.initial_marking[p] = 1;
        labels.emplace(e, names[i]);
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (comparable(i, j))
                continue;
            PlaceId c("c" + names[i].str() + "|" + names[j].str());
            d.places.push_back(c);
            d.pre[EventId(names[i].str())][c] = 1;
            d.pre[EventId(names[j].str())][c] = 1;
            d.initial_marking[c] = 1;
        }
    return LabelledPetriNet(PetriNet(d), labels);
}

namespace {

class FixtureParser {
  public:
    explicit FixtureParser(const std::string& text) : text_(text) {}

    FixtureExpr parse()
    {
        FixtureExpr f = expr();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw FixtureSyntaxError("fixture expression '" + text_ + "': " + what + " at offset " +
                                 std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string word()
    {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        return text_.substr(start, pos_ - start);
    }

    bool eat(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    FixtureExpr expr()
    {
        std::string head = word();
        FixtureExpr f;
        if (head == "sphere") {
            if (!eat(':'))
                fail("expected ':' after sphere");
            std::string n = word();
            if (n.empty() || !std::all_of(n.begin(), n.end(), [](unsigned char c) { return std::isdigit(c); }))
                fail("expected a dimension");
            f.kind = FixtureExpr::Kind::Sphere;
            f.dimension = std::stoul(n);
            if (f.dimension < 1)
                fail("sphere dimension must be at least 1");
            return f;
        }
        if (head == "rp2") {
            f.kind = FixtureExpr::Kind::ProjectivePlane;
            return f;
        }
        if (head == "wedge" || head == "union") {
            f.kind = head == "wedge" ? FixtureExpr::Kind::Wedge : FixtureExpr::Kind::Union;
            if (!eat('('))
                fail("expected '('");
            do
                f.parts.push_back(expr());
            while (eat(','));
            if (!eat(')'))
                fail("expected ')'");
            return f;
        }
        fail(head.empty() ? "expected a fixture name" : "unknown fixture '" + head + "'");
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

SimplicialScheme sphere(std::size_t n)
{
    std::vector<Label> vs;
    for (std::size_t i = 0; i < n + 2; ++i)
        vs.emplace_back("v" + std::to_string(i));
    std::vector<std::vector<Label>> facets;
    for (std::size_t skip = 0; skip < vs.size(); ++skip) {
        std::vector<Label> f;
        for (std::size_t i = 0; i < vs.size(); ++i)
            if (i != skip)
                f.push_back(vs[i]);
        facets.push_back(std::move(f));
    }
    return SimplicialScheme(vs, facets);
}

SimplicialScheme projective_plane()
{
    // Six-vertex triangulation: the antipodal quotient of the icosahedron.
    static const int kTriangles[10][3] = {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 6, 2},
                                          {2, 3, 5}, {3, 4, 6}, {4, 5, 2}, {5, 6, 3}, {6, 2, 4}};
    std::vector<std::vector<Label>> facets;
    for (const auto& t : kTriangles)
        facets.push_back({Label(std::to_string(t[0])), Label(std::to_string(t[1])), Label(std::to_string(t[2]))});
    return SimplicialScheme::from_facets(facets);
}

// Relabel component i's vertex v as "c<i>.v", optionally gluing its least vertex.
SimplicialScheme combine(const std::vector<SimplicialScheme>& parts, bool wedge)
{
    std::vector<Label> vertices;
    std::vector<std::vector<Label>> simplices;
    Label base;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& k = parts[i];
        std::string prefix = "c" + std::to_string(i) + ".";
        auto rename = [&](const Label& v) {
            if (wedge && !k.vertices().empty() && v == k.vertices().front() && i > 0)
                return base;
            return Label(prefix + v.str());
        };
        if (i == 0 && !k.vertices().empty())
            base = Label(prefix + k.vertices().front().str());
        for (const auto& v : k.vertices())
            if (!(wedge && i > 0 && v == k.vertices().front()))
                vertices.push_back(rename(v));
        for (const auto& s : k.simplices()) {
            std::vector<Label> out;
            for (const auto& v : k.labels_of(s))
                out.push_back(rename(v));
            simplices.push_back(std::move(out));
        }
    }
    return SimplicialScheme(vertices, simplices);
}

}  // namespace

FixtureExpr parse_fixture(const std::string& text)
{
    return FixtureParser(text).parse();
}

SimplicialScheme fixture_scheme(const FixtureExpr& f)
{
    switch (f.kind) {
    case FixtureExpr::Kind::Sphere:
        if (f.dimension < 1)
            throw FixtureSyntaxError("sphere dimension must be at least 1");
        return sphere(f.dimension);
    case FixtureExpr::Kind::ProjectivePlane:
        return projective_plane();
    case FixtureExpr::Kind::Wedge:
    case FixtureExpr::Kind::Union: {
        if (f.parts.empty())
            throw FixtureSyntaxError("wedge/union needs at least one component");
        std::vector<SimplicialScheme> parts;
        for (const auto& p : f.parts)
            parts.push_back(fixture_scheme(p));
        return combine(parts, f.kind == FixtureExpr::Kind::Wedge);
    }
    }
    throw FixtureSyntaxError("unknown fixture kind");
}

SimplicialScheme fixture_scheme(const std::string& text)
{
    return fixture_scheme(parse_fixture(text));
}

ConstructionCheck verify_construction(const SimplicialScheme& k, const ExplorationLimits& limits)
{
    ConstructionCheck check;
    LabelledPetriNet net = petri_from_scheme(k);
    NetSystem ns = async_of_net(net, limits);
    check.places = net.net().num_places();
    check.events = net.net().num_events();
    check.markings = ns.system.system().num_states();
    check.net = homology_of_system(ns.system);
    check.subdivision = homology(barycentric_subdivision(k));
    check.scheme = homology(k);
    check.ok = check.net == check.subdivision && check.subdivision == check.scheme;

    std::ostringstream os;
    os << "net: " << check.places << " places, " << check.events << " events, " << check.markings
       << " reachable markings\n"
       << "homology of net:         " << check.net.to_string() << "\n"
       << "homology of subdivision: " << check.subdivision.to_string() << "\n"
       << "homology of scheme:      " << check.scheme.to_string() << "\n"
       << "verified: " << (check.ok ? "true" : "false") << "\n";
    check.report = os.str();
    return check;
}

}  // namespace concur
