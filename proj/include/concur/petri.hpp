/**
 * Place/transition nets, the token game, and the asynchronous system A(N).
 */
#ifndef CONCUR_PETRI_HPP
#define CONCUR_PETRI_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "concur/common.hpp"
#include "concur/lts.hpp"

namespace concur {

/// Token counts over a net's places, in the net's place order.
struct Marking {
    std::vector<std::uint64_t> tokens;

    friend auto operator<=>(const Marking&, const Marking&) = default;
    friend bool operator==(const Marking&, const Marking&) = default;

    /// Componentwise ≥.
    bool covers(const Marking& other) const;
    /// Σ_p M1(p)·M2(p).
    std::uint64_t dot(const Marking& other) const;
    Marking operator+(const Marking& other) const;
    /// Requires covers(other).
    Marking operator-(const Marking& other) const;
};

/// Canonical state identifier of a marking: counts joined by commas.
std::string encode_marking(const Marking& m);

class FiringError : public Error {
  public:
    using Error::Error;
};

/// Raised when exploration of A(N) would cross a configured bound.
class LimitError : public Error {
  public:
    LimitError(const std::string& what, std::string marking)
        : Error(what), marking_(std::move(marking))
    {
    }
    const std::string& marking() const noexcept { return marking_; }

  private:
    std::string marking_;
};

class StateLimitExceeded : public LimitError {
  public:
    using LimitError::LimitError;
};

class TokenLimitExceeded : public LimitError {
  public:
    using LimitError::LimitError;
};

/// Raw net as read from a document; vectors map place → count, absent = 0.
struct NetDescription {
    std::vector<PlaceId> places;
    std::vector<EventId> events;
    std::map<EventId, std::map<PlaceId, std::uint64_t>> pre;
    std::map<EventId, std::map<PlaceId, std::uint64_t>> post;
    std::map<PlaceId, std::uint64_t> initial_marking;
};

/// N = (P, T, pre, post, M0), places and events sorted by identifier.
class PetriNet {
  public:
    explicit PetriNet(const NetDescription& description);

    std::size_t num_places() const noexcept { return places_.size(); }
    std::size_t num_events() const noexcept { return events_.size(); }
    const std::vector<PlaceId>& places() const noexcept { return places_; }
    const std::vector<EventId>& events() const noexcept { return events_; }
    const PlaceId& place(std::size_t p) const { return places_.at(p); }
    const EventId& event(std::size_t e) const { return events_.at(e); }
    std::size_t event_index(const EventId& e) const;
    std::size_t place_index(const PlaceId& p) const;

    const Marking& pre(std::size_t e) const { return pre_.at(e); }
    const Marking& post(std::size_t e) const { return post_.at(e); }
    const Marking& initial_marking() const noexcept { return m0_; }

    /// Build a marking from a place → count map (absent places are 0).
    Marking marking(const std::map<PlaceId, std::uint64_t>& counts) const;

    NetDescription describe() const;

  private:
    std::vector<PlaceId> places_;
    std::vector<EventId> events_;
    std::vector<Marking> pre_;
    std::vector<Marking> post_;
    Marking m0_;
};

class LabelledPetriNet {
  public:
    LabelledPetriNet(PetriNet net, const std::map<EventId, Label>& labels,
                     std::optional<std::vector<Label>> alphabet = std::nullopt);

    const PetriNet& net() const noexcept { return net_; }
    const std::map<EventId, Label>& labels() const noexcept { return labels_; }
    const std::vector<Label>& alphabet() const noexcept { return alphabet_; }

  private:
    PetriNet net_;
    std::map<EventId, Label> labels_;
    std::vector<Label> alphabet_;
};

/// Events e with m ≥ pre(e), by index. Throws InputError on a wrong-size marking.
std::vector<std::size_t> enabled(const PetriNet& n, const Marking& m);

/// m − pre(e) + post(e). Throws FiringError if e is not enabled at m.
Marking fire(const PetriNet& n, const Marking& m, std::size_t e);

/// Unordered pairs {e1, e2} (e1 < e2) whose pre+post vectors are orthogonal.
std::vector<std::pair<std::size_t, std::size_t>> net_independence(const PetriNet& n);

struct ExplorationLimits {
    std::size_t max_states = 100000;
    std::uint64_t max_tokens = 64;
};

struct NetSystem {
    LabelledAsyncSystem system;
    /// Net events never enabled in the explored region.
    std::vector<EventId> dropped_events;
    /// Reachable markings in state-index order.
    std::vector<Marking> markings;
};

/**
 * Breadth-first construction of the labelled asynchronous system A(N).
 *
 * States are the reachable markings named by encode_marking(). Throws
 * StateLimitExceeded or TokenLimitExceeded instead of truncating.
 */
NetSystem async_of_net(const LabelledPetriNet& n, const ExplorationLimits& limits = {});

}  // namespace concur

#endif  // CONCUR_PETRI_HPP
