/**
 * Asynchronous transition systems viewed as partial actions of trace monoids.
 *
 * States and events are kept in sorted order of their identifiers, so every
 * index-based loop in the library visits them in a reproducible order.
 */
#ifndef CONCUR_LTS_HPP
#define CONCUR_LTS_HPP

#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "concur/common.hpp"

namespace concur {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

struct Transition {
    StateId from;
    EventId event;
    StateId to;
};

/// Plain description of a system as it appears in an input document.
struct SystemDescription {
    std::vector<StateId> states;
    StateId initial;
    std::vector<EventId> events;
    std::vector<std::pair<EventId, EventId>> independence;
    std::vector<Transition> transitions;
};

/**
 * Asynchronous system (S, s0, E, I, Tran).
 *
 * The transition table is a partial function of (state, event), so two
 * different targets for the same pair are rejected at construction.
 * Independence is stored as an unordered relation; pairs {e,e} given in the
 * input are kept aside and reported by validate_system().
 */
class AsyncSystem {
  public:
    explicit AsyncSystem(const SystemDescription& description);

    std::size_t num_states() const noexcept { return states_.size(); }
    std::size_t num_events() const noexcept { return events_.size(); }

    const StateId& state(std::size_t s) const { return states_.at(s); }
    const EventId& event(std::size_t e) const { return events_.at(e); }
    const std::vector<StateId>& states() const noexcept { return states_; }
    const std::vector<EventId>& events() const noexcept { return events_; }

    std::optional<std::size_t> find_state(const StateId& s) const;
    std::optional<std::size_t> find_event(const EventId& e) const;
    /// Index of a state; throws InputError when unknown.
    std::size_t state_index(const StateId& s) const;
    std::size_t event_index(const EventId& e) const;

    std::size_t initial() const noexcept { return initial_; }

    /// s·e, or nullopt when undefined.
    std::optional<std::size_t> step(std::size_t s, std::size_t e) const
    {
        std::size_t t = table_[s * events_.size() + e];
        if (t == npos)
            return std::nullopt;
        return t;
    }

    bool independent(std::size_t e1, std::size_t e2) const
    {
        return indep_[e1 * events_.size() + e2] != 0;
    }

    /// Independent pairs (e1, e2) with e1 < e2.
    std::vector<std::pair<std::size_t, std::size_t>> independent_pairs() const;
    const std::vector<std::size_t>& reflexive_declarations() const noexcept { return reflexive_; }

    std::size_t num_transitions() const noexcept { return num_transitions_; }
    std::vector<Transition> transitions() const;

    /// Same system re-based at another initial state.
    AsyncSystem with_initial(std::size_t s) const;

    SystemDescription describe() const;

  private:
    std::vector<StateId> states_;
    std::vector<EventId> events_;
    std::unordered_map<StateId, std::size_t> state_pos_;
    std::unordered_map<EventId, std::size_t> event_pos_;
    std::size_t initial_ = 0;
    std::vector<std::size_t> table_;
    std::vector<char> indep_;
    std::vector<std::size_t> reflexive_;
    std::size_t num_transitions_ = 0;
};

/// (A, λ, L): an asynchronous system with a total label function.
class LabelledAsyncSystem {
  public:
    /// `alphabet` defaults to the image of `labels`. Throws InputError if
    /// `labels` misses an event, names an unknown one, or leaves the alphabet.
    LabelledAsyncSystem(AsyncSystem system, const std::map<EventId, Label>& labels,
                        std::optional<std::vector<Label>> alphabet = std::nullopt);

    const AsyncSystem& system() const noexcept { return system_; }
    const Label& label(std::size_t e) const { return labels_.at(e); }
    const std::vector<Label>& alphabet() const noexcept { return alphabet_; }
    std::map<EventId, Label> label_map() const;

    LabelledAsyncSystem with_initial(std::size_t s) const;

  private:
    LabelledAsyncSystem(AsyncSystem system, std::vector<Label> labels, std::vector<Label> alphabet);

    AsyncSystem system_;
    std::vector<Label> labels_;
    std::vector<Label> alphabet_;
};

/**
 * Check the state-space axioms that the representation cannot enforce.
 *
 * Reports: "diamond" (Axiom 2 failures), "reflexive-independence",
 * "unused-event" (event with no transition). The description overload also
 * reports structural problems ("missing-initial", "unknown-state",
 * "unknown-event", "duplicate", "nondeterministic") that stop construction.
 */
ValidationReport validate_system(const AsyncSystem& a);
ValidationReport validate_system(const SystemDescription& d);

/// Left-to-right fold of the transition function; nullopt once undefined.
std::optional<std::size_t> act(const AsyncSystem& a, std::size_t s, std::span<const std::size_t> word);
/// Name-based form; unknown states or events throw InputError.
std::optional<StateId> act(const AsyncSystem& a, const StateId& s, const std::vector<EventId>& word);

/**
 * Layers R_0..R_maxLen of states reachable by words of exact length k.
 *
 * Within a layer states are ordered by their lexicographically least witness
 * word (events compared by identifier), and the back-pointer of each state
 * reconstructs that least word.
 */
class Layers {
  public:
    struct Entry {
        std::size_t state;
        std::size_t pred;   // state in the previous layer, npos for R_0
        std::size_t event;  // event leading from pred, npos for R_0
    };

    std::size_t from() const noexcept { return from_; }
    std::size_t max_len() const noexcept { return layers_.size() - 1; }
    const std::vector<Entry>& layer(std::size_t k) const { return layers_.at(k); }
    /// States of R_k sorted by index.
    std::vector<std::size_t> states_at(std::size_t k) const;
    bool contains(std::size_t k, std::size_t s) const;
    /// Union of all layers, sorted by index.
    const std::vector<std::size_t>& reached() const noexcept { return reached_; }
    /// Least word of length k from `from()` to s; throws if s is not in R_k.
    std::vector<std::size_t> witness(std::size_t k, std::size_t s) const;

  private:
    friend Layers reachable_layers(const AsyncSystem&, std::size_t, std::optional<std::size_t>);

    std::size_t from_ = 0;
    std::vector<std::vector<Entry>> layers_;
    std::vector<std::unordered_map<std::size_t, std::size_t>> position_;
    std::vector<std::size_t> reached_;
};

/// maxLen defaults to the number of states.
Layers reachable_layers(const AsyncSystem& a, std::size_t from,
                        std::optional<std::size_t> max_len = std::nullopt);

/// All states reachable from `from` (including it), sorted by index.
std::vector<std::size_t> reachable_states(const AsyncSystem& a, std::size_t from);

/// Residual system A(s). Throws PreconditionError if s is not reachable.
LabelledAsyncSystem residual(const LabelledAsyncSystem& a, std::size_t s);
LabelledAsyncSystem residual(const LabelledAsyncSystem& a, const StateId& s);

/// Element (s, e1..en) of Q_n.
struct QTuple {
    std::size_t state;
    std::vector<std::size_t> events;

    friend auto operator<=>(const QTuple&, const QTuple&) = default;
    friend bool operator==(const QTuple&, const QTuple&) = default;
};

/**
 * Q_n: reachable s with n pairwise independent events executable from s in
 * the listed order. Ordered by state index, then by depth-first extension in
 * event order. Q_0 lists the reachable states.
 */
std::vector<QTuple> enumerate_q(const AsyncSystem& a, std::size_t n);

std::string format_word(const AsyncSystem& a, std::span<const std::size_t> word);

}  // namespace concur

#endif  // CONCUR_LTS_HPP
