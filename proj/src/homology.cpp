#include "concur/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace concur {

std::string DegreeGroup::to_string() const
{
    if (is_zero())
        return "0";
    std::vector<std::string> parts;
    if (betti == 1)
        parts.push_back("Z");
    else if (betti > 1)
        parts.push_back("Z^" + std::to_string(betti));
    for (const auto& t : torsion)
        parts.push_back("Z/" + t.str());
    return join(parts, " + ");
}

bool operator<(const DegreeGroup& a, const DegreeGroup& b)
{
    if (a.betti != b.betti)
        return a.betti < b.betti;
    return std::lexicographical_compare(a.torsion.begin(), a.torsion.end(), b.torsion.begin(), b.torsion.end());
}

HomologySignature::HomologySignature(std::vector<DegreeGroup> degrees) : degrees_(std::move(degrees))
{
    while (!degrees_.empty() && degrees_.back().is_zero())
        degrees_.pop_back();
}

DegreeGroup HomologySignature::at(std::size_t n) const
{
    return n < degrees_.size() ? degrees_[n] : DegreeGroup{};
}

std::string HomologySignature::to_text() const
{
    std::ostringstream os;
    for (std::size_t n = 0; n < degrees_.size(); ++n)
        os << "H" << n << " = " << degrees_[n].to_string() << "\n";
    os << "Hn = 0 for n >= " << degrees_.size() << "\n";
    return os.str();
}

std::string HomologySignature::to_string() const
{
    if (degrees_.empty())
        return "0";
    std::vector<std::string> parts;
    for (std::size_t n = 0; n < degrees_.size(); ++n)
        parts.push_back("H" + std::to_string(n) + "=" + degrees_[n].to_string());
    return join(parts, ", ");
}

bool operator<(const HomologySignature& a, const HomologySignature& b)
{
    return std::lexicographical_compare(a.degrees_.begin(), a.degrees_.end(), b.degrees_.begin(),
                                        b.degrees_.end());
}

ChainComplex chain_complex(const SimplicialScheme& k)
{
    ChainComplex cx;
    auto top = k.dimension();
    if (!top)
        return cx;
    for (std::size_t n = 0; n <= *top; ++n)
        cx.cells.push_back(k.simplices_of_dim(n).size());
    for (std::size_t n = 1; n <= *top; ++n) {
        cx.boundaries.push_back(boundary_matrix(k, n));
        cx.smith.push_back(smith_normal_form(cx.boundaries.back()));
    }
    return cx;
}

HomologySignature homology(const ChainComplex& cx)
{
    std::vector<DegreeGroup> degrees;
    const std::size_t top = cx.cells.size();
    auto rank = [&](std::size_t n) -> std::size_t {
        // d_0 and d_{top+1} are zero maps.
        if (n == 0 || n > cx.smith.size())
            return 0;
        return cx.smith[n - 1].rank;
    };
    for (std::size_t n = 0; n < top; ++n) {
        DegreeGroup g;
        g.betti = cx.cells[n] - rank(n) - rank(n + 1);
        if (n + 1 <= cx.smith.size())
            for (const auto& delta : cx.smith[n].diagonal)
                if (delta > 1)
                    g.torsion.push_back(delta);
        degrees.push_back(std::move(g));
    }
    return HomologySignature(std::move(degrees));
}

HomologySignature homology(const SimplicialScheme& k)
{
    return homology(chain_complex(k));
}

namespace {

// Label sets of pairwise independent events executable from `current`,
// taken in increasing event order. On a system satisfying the diamond axiom
// an independent word is executable iff each of its permutations is, so
// this visits the same sets as Q_k without repeating permutations.
void collect_simplices(const LabelledAsyncSystem& la, std::size_t current, std::size_t first,
                       std::vector<std::size_t>& chosen, std::set<std::vector<Label>>& out)
{
    const AsyncSystem& a = la.system();
    for (std::size_t e = first; e < a.num_events(); ++e) {
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](std::size_t f) { return a.independent(e, f); });
        if (!ok)
            continue;
        auto next = a.step(current, e);
        if (!next)
            continue;
        chosen.push_back(e);
        std::set<Label> labels;
        for (std::size_t c : chosen)
            labels.insert(la.label(c));
        out.emplace(labels.begin(), labels.end());
        collect_simplices(la, *next, e + 1, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

SimplicialScheme scheme_of_system(const LabelledAsyncSystem& la)
{
    const AsyncSystem& a = la.system();
    std::set<std::vector<Label>> simplices;
    std::vector<std::size_t> chosen;
    for (std::size_t s : reachable_states(a, a.initial()))
        collect_simplices(la, s, 0, chosen, simplices);

    std::set<Label> vertices;
    for (const auto& s : simplices)
        vertices.insert(s.begin(), s.end());
    return SimplicialScheme(std::vector<Label>(vertices.begin(), vertices.end()),
                            std::vector<std::vector<Label>>(simplices.begin(), simplices.end()));
}

HomologySignature homology_of_system(const LabelledAsyncSystem& a)
{
    return homology(scheme_of_system(a));
}

HomologySignature homology_of_net(const LabelledPetriNet& n, const ExplorationLimits& limits)
{
    return homology_of_system(async_of_net(n, limits).system);
}

}  // namespace concur
