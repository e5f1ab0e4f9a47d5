/**
 * Simplicial schemes (abstract simplicial complexes) and their chain
 * complexes with integer coefficients.
 */
#ifndef CONCUR_SIMPLICIAL_HPP
#define CONCUR_SIMPLICIAL_HPP

#include <optional>
#include <set>
#include <vector>

#include "concur/common.hpp"
#include "concur/smith.hpp"

namespace concur {

/**
 * Finite vertex set with a downward-closed family of nonempty simplices.
 *
 * Vertices are indexed in lexicographic order of their labels, and that
 * order is the total order used to write ordered simplices.
 */
class SimplicialScheme {
  public:
    /// Simplex as strictly increasing vertex indices.
    using Simplex = std::vector<std::size_t>;

    SimplicialScheme() = default;

    /**
     * Closure of `facets` over `vertices`. Every vertex becomes a 0-simplex.
     * Throws InputError on empty facets, unknown vertices, duplicates.
     */
    SimplicialScheme(std::vector<Label> vertices, const std::vector<std::vector<Label>>& facets);

    /// Vertex set taken from the facets themselves.
    static SimplicialScheme from_facets(const std::vector<std::vector<Label>>& facets);

    const std::vector<Label>& vertices() const noexcept { return vertices_; }
    const Label& vertex(std::size_t v) const { return vertices_.at(v); }
    bool empty() const noexcept { return vertices_.empty(); }

    std::size_t num_simplices() const noexcept { return all_.size(); }
    const std::set<Simplex>& simplices() const noexcept { return all_; }
    /// Top dimension, nullopt for the empty scheme.
    std::optional<std::size_t> dimension() const;

    /// n-simplices in lexicographic order; empty past the top dimension.
    const std::vector<Simplex>& simplices_of_dim(std::size_t n) const;
    bool contains(const Simplex& s) const { return all_.count(s) != 0; }
    bool contains(const std::vector<Label>& s) const;

    std::vector<Label> labels_of(const Simplex& s) const;
    /// Maximal simplices, as label lists.
    std::vector<std::vector<Label>> facets() const;

    /// Singletons present and every proper face present.
    bool is_closed() const;

    friend bool operator==(const SimplicialScheme& a, const SimplicialScheme& b)
    {
        return a.vertices_ == b.vertices_ && a.all_ == b.all_;
    }

  private:
    std::vector<Label> vertices_;
    std::set<Simplex> all_;
    std::vector<std::vector<Simplex>> by_dim_;
};

/// Ordered n-simplices (a0 < ... < an) as label tuples.
std::vector<std::vector<Label>> ordered_simplices(const SimplicialScheme& k, std::size_t n);

/**
 * Matrix of d_n: rows are (n-1)-simplices, columns n-simplices, both in
 * lexicographic order; entry (-1)^i where the row is the column with its
 * i-th vertex removed. Requires n ≥ 1.
 */
IntegerMatrix boundary_matrix(const SimplicialScheme& k, std::size_t n);

/// Canonical vertex name of a simplex in the subdivision: "{a,b,c}".
Label simplex_name(const std::vector<Label>& simplex);

/// Vertices are the simplices of k, simplices the chains under strict inclusion.
SimplicialScheme barycentric_subdivision(const SimplicialScheme& k);

}  // namespace concur

#endif  // CONCUR_SIMPLICIAL_HPP
