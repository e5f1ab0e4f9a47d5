#include "concur/simplicial.hpp"

#include <algorithm>
#include <map>

namespace concur {

namespace {

const std::vector<SimplicialScheme::Simplex> kNoSimplices;

}  // namespace

SimplicialScheme::SimplicialScheme(std::vector<Label> vertices, const std::vector<std::vector<Label>>& facets)
    : vertices_(std::move(vertices))
{
    std::sort(vertices_.begin(), vertices_.end());
    if (auto it = std::adjacent_find(vertices_.begin(), vertices_.end()); it != vertices_.end())
        throw InputError("duplicate vertex '" + it->str() + "'");

    auto index_of = [&](const Label& l) {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), l);
        if (it == vertices_.end() || *it != l)
            throw InputError("simplex mentions unknown vertex '" + l.str() + "'");
        return static_cast<std::size_t>(it - vertices_.begin());
    };

    // Bucket by size, then close downward one size at a time.
    std::map<std::size_t, std::set<Simplex>, std::greater<>> pending;
    for (const auto& facet : facets) {
        if (facet.empty())
            throw InputError("empty simplex");
        Simplex s;
        for (const auto& l : facet)
            s.push_back(index_of(l));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("simplex repeats a vertex");
        pending[s.size()].insert(std::move(s));
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        pending[1].insert(Simplex{v});

    while (!pending.empty()) {
        auto node = pending.extract(pending.begin());
        std::size_t size = node.key();
        for (const auto& s : node.mapped()) {
            if (!all_.insert(s).second)
                continue;
            if (size == 1)
                continue;
            for (std::size_t i = 0; i < size; ++i) {
                Simplex face;
                face.reserve(size - 1);
                for (std::size_t j = 0; j < size; ++j)
                    if (j != i)
                        face.push_back(s[j]);
                if (!all_.count(face))
                    pending[size - 1].insert(std::move(face));
            }
        }
    }

    for (const auto& s : all_) {
        if (by_dim_.size() < s.size())
            by_dim_.resize(s.size());
        by_dim_[s.size() - 1].push_back(s);
    }
}

SimplicialScheme SimplicialScheme::from_facets(const std::vector<std::vector<Label>>& facets)
{
    std::set<Label> vs;
    for (const auto& f : facets)
        vs.insert(f.begin(), f.end());
    return SimplicialScheme(std::vector<Label>(vs.begin(), vs.end()), facets);
}

std::optional<std::size_t> SimplicialScheme::dimension() const
{
    if (by_dim_.empty())
        return std::nullopt;
    return by_dim_.size() - 1;
}

const std::vector<SimplicialScheme::Simplex>& SimplicialScheme::simplices_of_dim(std::size_t n) const
{
    if (n >= by_dim_.size())
        return kNoSimplices;
    return by_dim_[n];
}

bool SimplicialScheme::contains(const std::vector<Label>& labels) const
{
    Simplex s;
    for (const auto& l : labels) {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), l);
        if (it == vertices_.end() || *it != l)
            return false;
        s.push_back(static_cast<std::size_t>(it - vertices_.begin()));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return !s.empty() && contains(s);
}

std::vector<Label> SimplicialScheme::labels_of(const Simplex& s) const
{
    std::vector<Label> out;
    out.reserve(s.size());
    for (std::size_t v : s)
        out.push_back(vertices_.at(v));
    return out;
}

std::vector<std::vector<Label>> SimplicialScheme::facets() const
{
    std::vector<std::vector<Label>> out;
    for (const auto& s : all_) {
        bool maximal = true;
        if (s.size() < by_dim_.size()) {
            for (const auto& t : by_dim_[s.size()])
                if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    maximal = false;
                    break;
                }
        }
        if (maximal)
            out.push_back(labels_of(s));
    }
    return out;
}

bool SimplicialScheme::is_closed() const
{
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!all_.count(Simplex{v}))
            return false;
    for (const auto& s : all_) {
        if (s.empty() || s.back() >= vertices_.size())
            return false;
        if (s.size() == 1)
            continue;
        for (std::size_t i = 0; i < s.size(); ++i) {
            Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            if (!all_.count(face))
                return false;
        }
    }
    return true;
}

std::vector<std::vector<Label>> ordered_simplices(const SimplicialScheme& k, std::size_t n)
{
    std::vector<std::vector<Label>> out;
    for (const auto& s : k.simplices_of_dim(n))
        out.push_back(k.labels_of(s));
    return out;
}

IntegerMatrix boundary_matrix(const SimplicialScheme& k, std::size_t n)
{
    if (n == 0)
        throw PreconditionError("boundary_matrix requires n >= 1");
    const auto& faces = k.simplices_of_dim(n - 1);
    const auto& cells = k.simplices_of_dim(n);
    IntegerMatrix d(faces.size(), cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto& s = cells[c];
        for (std::size_t i = 0; i < s.size(); ++i) {
            SimplicialScheme::Simplex face = s;
            face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
            auto it = std::lower_bound(faces.begin(), faces.end(), face);
            std::size_t r = static_cast<std::size_t>(it - faces.begin());
            d(r, c) = (i % 2 == 0) ? 1 : -1;
        }
    }
    return d;
}

Label simplex_name(const std::vector<Label>& simplex)
{
    std::vector<std::string> parts;
    for (const auto& l : simplex)
        parts.push_back(l.str());
    std::sort(parts.begin(), parts.end());
    return Label("{" + join(parts, ",") + "}");
}

namespace {

void extend_chains(const std::vector<SimplicialScheme::Simplex>& order, std::size_t last,
                   std::vector<std::size_t>& chain, std::vector<std::vector<std::size_t>>& out)
{
    out.push_back(chain);
    const auto& top = order[last];
    for (std::size_t j = 0; j < order.size(); ++j) {
        const auto& next = order[j];
        if (next.size() <= top.size())
            continue;
        if (!std::includes(next.begin(), next.end(), top.begin(), top.end()))
            continue;
        chain.push_back(j);
        extend_chains(order, j, chain, out);
        chain.pop_back();
    }
}

}  // namespace

SimplicialScheme barycentric_subdivision(const SimplicialScheme& k)
{
    std::vector<SimplicialScheme::Simplex> cells(k.simplices().begin(), k.simplices().end());
    std::vector<Label> names;
    names.reserve(cells.size());
    for (const auto& s : cells)
        names.push_back(simplex_name(k.labels_of(s)));

    std::vector<std::vector<std::size_t>> chains;
    std::vector<std::size_t> chain;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        chain.assign(1, i);
        extend_chains(cells, i, chain, chains);
    }

    std::vector<std::vector<Label>> simplices;
    simplices.reserve(chains.size());
    for (const auto& c : chains) {
        std::vector<Label> s;
        for (std::size_t i : c)
            s.push_back(names[i]);
        simplices.push_back(std::move(s));
    }
    return SimplicialScheme(names, simplices);
}

}  // namespace concur
