/**
 * Integer homology of simplicial schemes, labelled asynchronous systems and
 * labelled Petri nets.
 */
#ifndef CONCUR_HOMOLOGY_HPP
#define CONCUR_HOMOLOGY_HPP

#include <string>
#include <vector>

#include "concur/lts.hpp"
#include "concur/petri.hpp"
#include "concur/simplicial.hpp"
#include "concur/smith.hpp"

namespace concur {

/// Z^betti ⊕ Z/t1 ⊕ ... ⊕ Z/tk with t1 | t2 | ... and every ti > 1.
struct DegreeGroup {
    std::size_t betti = 0;
    std::vector<BigInt> torsion;

    bool is_zero() const noexcept { return betti == 0 && torsion.empty(); }
    std::string to_string() const;

    friend bool operator==(const DegreeGroup&, const DegreeGroup&) = default;
    friend bool operator<(const DegreeGroup& a, const DegreeGroup& b);
};

/**
 * H_0, H_1, ... up to the last non-zero degree; higher degrees are zero.
 * Equal signatures means isomorphic groups in every degree.
 */
class HomologySignature {
  public:
    HomologySignature() = default;
    /// Trailing zero degrees are dropped.
    explicit HomologySignature(std::vector<DegreeGroup> degrees);

    const std::vector<DegreeGroup>& degrees() const noexcept { return degrees_; }
    /// H_n, zero beyond the stored degrees.
    DegreeGroup at(std::size_t n) const;
    bool is_zero() const noexcept { return degrees_.empty(); }

    /// One line per degree, e.g. "H0 = Z\nH1 = Z/2\n", closed by "Hn = 0 for n >= k".
    std::string to_text() const;
    /// Compact single-line form: "H0=Z, H1=Z/2".
    std::string to_string() const;

    friend bool operator==(const HomologySignature&, const HomologySignature&) = default;
    friend bool operator<(const HomologySignature& a, const HomologySignature& b);

  private:
    std::vector<DegreeGroup> degrees_;
};

/// d_1..d_top with their Smith forms, as used by homology().
struct ChainComplex {
    std::vector<std::size_t> cells;  // |M_n| for n = 0..top
    std::vector<IntegerMatrix> boundaries;  // boundaries[n-1] is d_n
    std::vector<SmithForm> smith;
};

ChainComplex chain_complex(const SimplicialScheme& k);

/**
 * H_n = Z^{|M_n| - rank d_n - rank d_{n+1}} ⊕ torsion of d_{n+1}, with
 * rank d_0 = 0. Invariant factors equal to 1 are dropped.
 */
HomologySignature homology(const SimplicialScheme& k);
HomologySignature homology(const ChainComplex& complex);

/**
 * Labelled scheme of a system: vertices are labels of events enabled at some
 * reachable state; each tuple of Q_k (k ≥ 1) contributes its label set.
 * Requires a system passing validate_system().
 */
SimplicialScheme scheme_of_system(const LabelledAsyncSystem& a);

/// homology(scheme_of_system(a))
HomologySignature homology_of_system(const LabelledAsyncSystem& a);

/// homology(scheme_of_system(async_of_net(n, limits)))
HomologySignature homology_of_net(const LabelledPetriNet& n, const ExplorationLimits& limits = {});

}  // namespace concur

#endif  // CONCUR_HOMOLOGY_HPP
