/**
 * Morphisms of labelled asynchronous systems, open morphisms, and the two
 * bisimilarity procedures: certification from a user-supplied span and
 * refutation by homology of residual systems.
 */
#ifndef CONCUR_BISIM_HPP
#define CONCUR_BISIM_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "concur/homology.hpp"
#include "concur/lts.hpp"

namespace concur {

class AlphabetMismatch : public Error {
  public:
    using Error::Error;
};

using SystemPtr = std::shared_ptr<const LabelledAsyncSystem>;

/// (σ, η): σ total on states, η partial on events.
class SystemMorphism {
  public:
    /// Throws InputError when σ misses a source state or a map names an unknown id.
    SystemMorphism(SystemPtr source, SystemPtr target, const std::map<StateId, StateId>& sigma,
                   const std::map<EventId, EventId>& eta);

    static SystemMorphism identity(SystemPtr system);

    const LabelledAsyncSystem& source() const noexcept { return *source_; }
    const LabelledAsyncSystem& target() const noexcept { return *target_; }
    const SystemPtr& source_ptr() const noexcept { return source_; }
    const SystemPtr& target_ptr() const noexcept { return target_; }

    std::size_t sigma(std::size_t s) const { return sigma_.at(s); }
    std::optional<std::size_t> eta(std::size_t e) const
    {
        std::size_t v = eta_.at(e);
        if (v == npos)
            return std::nullopt;
        return v;
    }
    bool eta_total() const;

    std::map<StateId, StateId> sigma_map() const;
    std::map<EventId, EventId> eta_map() const;

    /// The same maps viewed as A(s) → A'(σ(s)). Requires s reachable.
    SystemMorphism rebased(std::size_t s) const;

  private:
    SystemMorphism(SystemPtr source, SystemPtr target, std::vector<std::size_t> sigma,
                   std::vector<std::size_t> eta);

    SystemPtr source_;
    SystemPtr target_;
    std::vector<std::size_t> sigma_;
    std::vector<std::size_t> eta_;
};

/**
 * Morphism conditions: "transition" (image transition or collapsed state),
 * "independence" (preserved where both images exist), "initial",
 * "label" (λ = λ'∘η on the domain of η, checked when alphabets agree).
 */
ValidationReport validate_morphism(const SystemMorphism& m);

struct OpenReport : ValidationReport {
    struct LiftFailure {
        std::size_t state;         // source state s
        std::size_t target_event;  // e' with σ(s)·e' defined but not lifted
    };
    std::vector<std::size_t> undefined_events;
    std::vector<LiftFailure> lift_failures;
    /// (e1, e2) executable in sequence from a reachable state, images independent, e1, e2 not.
    std::vector<std::pair<std::size_t, std::size_t>> unreflected;
};

/**
 * Openness: (1) "not-total" η undefined somewhere; (2) "lifting" for every
 * s ∈ S and σ(s) -e'-> u' some s -e-> u with η(e)=e', σ(u)=u'; (3)
 * "reflection" of independence at reachable states.
 */
OpenReport is_open(const SystemMorphism& m);

struct SurjectivityResult {
    bool surjective = true;
    /// A tuple of Q_n(target) with no preimage.
    std::optional<QTuple> missing;
};

/// Whether Q_n(σ, η) hits every tuple of Q_n(target). Throws PreconditionError if η is partial.
SurjectivityResult check_q_surjectivity(const SystemMorphism& m, std::size_t n);

/// apex ← left, apex → right. Both legs must start at the same apex object.
class Span {
  public:
    /// Throws InputError when the legs do not share `apex` as source.
    Span(SystemPtr apex, SystemMorphism left, SystemMorphism right);

    const LabelledAsyncSystem& apex() const noexcept { return *apex_; }
    const SystemMorphism& left() const noexcept { return left_; }
    const SystemMorphism& right() const noexcept { return right_; }

  private:
    SystemPtr apex_;
    SystemMorphism left_;
    SystemMorphism right_;
};

enum class Side { Left, Right };

struct Verdict {
    enum class Kind { NotBisimilar, Certified, Inconclusive };

    Kind kind = Kind::Inconclusive;
    /// NotBisimilar: replayable word in the system on `side`.
    std::vector<EventId> witness;
    Side side = Side::Left;
    /// Inconclusive from the refuter: the largest word length compared.
    std::optional<std::size_t> max_len_tried;
    std::string report;

    std::size_t length() const noexcept { return witness.size(); }
};

std::string to_string(Verdict::Kind kind);
std::string to_string(Side side);

/**
 * Certified iff both legs are label-preserving morphisms and open.
 * Otherwise Inconclusive with the failing leg and property in the report.
 * Throws AlphabetMismatch unless the three systems share one alphabet.
 */
Verdict certify_bisimilar(const Span& span);

/**
 * Compare, for k = 0..maxLen, the sets of homology signatures of residual
 * systems A(s), s ∈ R_k. Any difference (in either direction) refutes
 * bisimilarity. The witness has the shortest possible length; at that
 * length a left-side witness is preferred, and within a side the
 * lexicographically least word is chosen.
 * maxLen defaults to |S_a| + |S_b|. Throws AlphabetMismatch.
 */
Verdict refute_bisimilar(const LabelledAsyncSystem& a, const LabelledAsyncSystem& b,
                         std::optional<std::size_t> max_len = std::nullopt);

}  // namespace concur

#endif  // CONCUR_BISIM_HPP
