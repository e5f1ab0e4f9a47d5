/**
 * Petri nets realising the homology of a given simplicial scheme, and a
 * small library of fixture schemes with known homology.
 */
#ifndef CONCUR_CONSTRUCT_HPP
#define CONCUR_CONSTRUCT_HPP

#include <string>
#include <variant>
#include <vector>

#include "concur/homology.hpp"
#include "concur/petri.hpp"
#include "concur/simplicial.hpp"

namespace concur {

/**
 * Net whose labelled scheme is the barycentric subdivision of k.
 *
 * One event e_σ and one private place p_σ (one token) per simplex σ of k;
 * e_σ consumes p_σ and produces nothing. Each pair of incomparable simplices
 * {σ, τ} gets a one-token conflict place consumed by both e_σ and e_τ. Two
 * events are then independent exactly when their simplices are comparable,
 * and the sets of events fireable together are the chains of k.
 * Labels are the event names. Throws PreconditionError on an empty scheme.
 */
LabelledPetriNet petri_from_scheme(const SimplicialScheme& k);

/// Parse error in a fixture expression.
class FixtureSyntaxError : public InputError {
  public:
    using InputError::InputError;
};

struct FixtureExpr {
    enum class Kind { Sphere, ProjectivePlane, Wedge, Union };
    Kind kind = Kind::Sphere;
    std::size_t dimension = 1;  // Sphere only
    std::vector<FixtureExpr> parts;  // Wedge / Union
};

/// Grammar: `sphere:n` (n ≥ 1) | `rp2` | `wedge(f, f, ...)` | `union(f, ...)`.
FixtureExpr parse_fixture(const std::string& text);

/**
 * sphere:n is the boundary of the (n+1)-simplex; rp2 the 6-vertex
 * projective plane; union relabels components apart ("c0.", "c1.", ...);
 * wedge additionally glues the least vertex of each component to the least
 * vertex of the first.
 */
SimplicialScheme fixture_scheme(const FixtureExpr& f);
SimplicialScheme fixture_scheme(const std::string& text);

struct ConstructionCheck {
    bool ok = false;
    HomologySignature net;
    HomologySignature subdivision;
    HomologySignature scheme;
    std::size_t places = 0;
    std::size_t events = 0;
    std::size_t markings = 0;
    std::string report;
};

/// Compare homology of the constructed net, of the subdivision and of k.
ConstructionCheck verify_construction(const SimplicialScheme& k, const ExplorationLimits& limits = {});

}  // namespace concur

#endif  // CONCUR_CONSTRUCT_HPP
