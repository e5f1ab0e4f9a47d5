#include "concur/lts.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace concur {

std::ostream& operator<<(std::ostream& os, const ValidationReport& report)
{
    if (report.ok())
        return os << "valid\n";
    os << "invalid (" << report.violations.size() << " violation"
       << (report.violations.size() == 1 ? "" : "s") << ")\n";
    for (const auto& v : report.violations)
        os << "  [" << v.kind << "] " << v.message << "\n";
    return os;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            out += sep;
        out += parts[i];
    }
    return out;
}

namespace {

template <typename Id>
std::vector<Id> sorted_unique(std::vector<Id> ids, const char* what)
{
    std::sort(ids.begin(), ids.end());
    auto dup = std::adjacent_find(ids.begin(), ids.end());
    if (dup != ids.end())
        throw InputError(std::string("duplicate ") + what + " '" + dup->str() + "'");
    return ids;
}

}  // namespace

AsyncSystem::AsyncSystem(const SystemDescription& d)
    : states_(sorted_unique(d.states, "state")), events_(sorted_unique(d.events, "event"))
{
    for (std::size_t i = 0; i < states_.size(); ++i)
        state_pos_.emplace(states_[i], i);
    for (std::size_t i = 0; i < events_.size(); ++i)
        event_pos_.emplace(events_[i], i);

    auto init = find_state(d.initial);
    if (!init)
        throw InputError("initial state '" + d.initial.str() + "' is not a declared state");
    initial_ = *init;

    const std::size_t m = events_.size();
    indep_.assign(m * m, 0);
    for (const auto& [x, y] : d.independence) {
        std::size_t i = event_index(x);
        std::size_t j = event_index(y);
        if (i == j) {
            if (std::find(reflexive_.begin(), reflexive_.end(), i) == reflexive_.end())
                reflexive_.push_back(i);
            continue;
        }
        indep_[i * m + j] = 1;
        indep_[j * m + i] = 1;
    }
    std::sort(reflexive_.begin(), reflexive_.end());

    table_.assign(states_.size() * m, npos);
    for (const auto& t : d.transitions) {
        std::size_t from = state_index(t.from);
        std::size_t e = event_index(t.event);
        std::size_t to = state_index(t.to);
        std::size_t& slot = table_[from * m + e];
        if (slot == npos) {
            slot = to;
            ++num_transitions_;
        } else if (slot != to) {
            throw InputError("nondeterministic transitions from '" + t.from.str() + "' on '" +
                             t.event.str() + "' to '" + states_[slot].str() + "' and '" +
                             t.to.str() + "'");
        }
    }
}

std::optional<std::size_t> AsyncSystem::find_state(const StateId& s) const
{
    auto it = state_pos_.find(s);
    if (it == state_pos_.end())
        return std::nullopt;
    return it->second;
}

std::optional<std::size_t> AsyncSystem::find_event(const EventId& e) const
{
    auto it = event_pos_.find(e);
    if (it == event_pos_.end())
        return std::nullopt;
    return it->second;
}

std::size_t AsyncSystem::state_index(const StateId& s) const
{
    if (auto i = find_state(s))
        return *i;
    throw InputError("unknown state '" + s.str() + "'");
}

std::size_t AsyncSystem::event_index(const EventId& e) const
{
    if (auto i = find_event(e))
        return *i;
    throw InputError("unknown event '" + e.str() + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> AsyncSystem::independent_pairs() const
{
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < events_.size(); ++i)
        for (std::size_t j = i + 1; j < events_.size(); ++j)
            if (independent(i, j))
                out.emplace_back(i, j);
    return out;
}

std::vector<Transition> AsyncSystem::transitions() const
{
    std::vector<Transition> out;
    out.reserve(num_transitions_);
    for (std::size_t s = 0; s < states_.size(); ++s)
        for (std::size_t e = 0; e < events_.size(); ++e)
            if (auto t = step(s, e))
                out.push_back({states_[s], events_[e], states_[*t]});
    return out;
}

AsyncSystem AsyncSystem::with_initial(std::size_t s) const
{
    if (s >= states_.size())
        throw PreconditionError("state index out of range");
    AsyncSystem copy = *this;
    copy.initial_ = s;
    return copy;
}

SystemDescription AsyncSystem::describe() const
{
    SystemDescription d;
    d.states = states_;
    d.initial = states_[initial_];
    d.events = events_;
    for (auto [i, j] : independent_pairs())
        d.independence.emplace_back(events_[i], events_[j]);
    for (std::size_t e : reflexive_)
        d.independence.emplace_back(events_[e], events_[e]);
    d.transitions = transitions();
    return d;
}

LabelledAsyncSystem::LabelledAsyncSystem(AsyncSystem system, std::vector<Label> labels,
                                         std::vector<Label> alphabet)
    : system_(std::move(system)), labels_(std::move(labels)), alphabet_(std::move(alphabet))
{
}

LabelledAsyncSystem::LabelledAsyncSystem(AsyncSystem system, const std::map<EventId, Label>& labels,
                                         std::optional<std::vector<Label>> alphabet)
    : system_(std::move(system))
{
    for (const auto& [e, l] : labels)
        if (!system_.find_event(e))
            throw InputError("label given for unknown event '" + e.str() + "'");
    labels_.reserve(system_.num_events());
    for (const auto& e : system_.events()) {
        auto it = labels.find(e);
        if (it == labels.end())
            throw InputError("event '" + e.str() + "' has no label");
        labels_.push_back(it->second);
    }
    std::set<Label> alpha;
    if (alphabet) {
        alpha.insert(alphabet->begin(), alphabet->end());
        for (std::size_t e = 0; e < labels_.size(); ++e)
            if (!alpha.count(labels_[e]))
                throw InputError("label '" + labels_[e].str() + "' of event '" +
                                 system_.event(e).str() + "' is not in the alphabet");
    } else {
        alpha.insert(labels_.begin(), labels_.end());
    }
    alphabet_.assign(alpha.begin(), alpha.end());
}

std::map<EventId, Label> LabelledAsyncSystem::label_map() const
{
    std::map<EventId, Label> out;
    for (std::size_t e = 0; e < labels_.size(); ++e)
        out.emplace(system_.event(e), labels_[e]);
    return out;
}

LabelledAsyncSystem LabelledAsyncSystem::with_initial(std::size_t s) const
{
    return LabelledAsyncSystem(system_.with_initial(s), labels_, alphabet_);
}

ValidationReport validate_system(const AsyncSystem& a)
{
    ValidationReport report;
    for (std::size_t e : a.reflexive_declarations())
        report.add("reflexive-independence",
                   "independence declares the pair (" + a.event(e).str() + ", " + a.event(e).str() + ")");

    const std::size_t m = a.num_events();
    for (std::size_t s = 0; s < a.num_states(); ++s) {
        for (std::size_t x = 0; x < m; ++x) {
            auto sx = a.step(s, x);
            if (!sx)
                continue;
            for (std::size_t y = 0; y < m; ++y) {
                if (!a.independent(x, y))
                    continue;
                auto sxy = a.step(*sx, y);
                if (!sxy)
                    continue;
                auto sy = a.step(s, y);
                auto syx = sy ? a.step(*sy, x) : std::nullopt;
                if (syx && *syx == *sxy)
                    continue;
                std::ostringstream msg;
                msg << "square (" << a.state(s) << ", " << a.event(x) << ", " << a.event(y)
                    << "): " << a.state(s) << "·" << a.event(x) << "·" << a.event(y) << " = "
                    << a.state(*sxy) << " but no state s1 with " << a.state(s) << "·" << a.event(y)
                    << " = s1 and s1·" << a.event(x) << " = " << a.state(*sxy);
                report.add("diamond", msg.str());
            }
        }
    }

    std::vector<char> used(m, 0);
    for (std::size_t s = 0; s < a.num_states(); ++s)
        for (std::size_t e = 0; e < m; ++e)
            if (a.step(s, e))
                used[e] = 1;
    for (std::size_t e = 0; e < m; ++e)
        if (!used[e])
            report.add("unused-event", "event '" + a.event(e).str() + "' occurs in no transition");
    return report;
}

ValidationReport validate_system(const SystemDescription& d)
{
    ValidationReport report;
    std::set<StateId> states;
    std::set<EventId> events;
    for (const auto& s : d.states)
        if (!states.insert(s).second)
            report.add("duplicate", "state '" + s.str() + "' declared twice");
    for (const auto& e : d.events)
        if (!events.insert(e).second)
            report.add("duplicate", "event '" + e.str() + "' declared twice");
    if (!states.count(d.initial))
        report.add("missing-initial", "initial state '" + d.initial.str() + "' is not a declared state");
    for (const auto& [x, y] : d.independence)
        for (const auto& e : {x, y})
            if (!events.count(e))
                report.add("unknown-event", "independence mentions unknown event '" + e.str() + "'");
    std::map<std::pair<StateId, EventId>, StateId> seen;
    for (const auto& t : d.transitions) {
        bool known = true;
        for (const auto& s : {t.from, t.to})
            if (!states.count(s)) {
                report.add("unknown-state", "transition mentions unknown state '" + s.str() + "'");
                known = false;
            }
        if (!events.count(t.event)) {
            report.add("unknown-event", "transition mentions unknown event '" + t.event.str() + "'");
            known = false;
        }
        if (!known)
            continue;
        auto [it, inserted] = seen.emplace(std::pair{t.from, t.event}, t.to);
        if (!inserted && it->second != t.to)
            report.add("nondeterministic", "'" + t.from.str() + "' has two '" + t.event.str() +
                                               "' transitions, to '" + it->second.str() + "' and '" +
                                               t.to.str() + "'");
    }
    if (!report.ok())
        return report;
    return validate_system(AsyncSystem(d));
}

std::optional<std::size_t> act(const AsyncSystem& a, std::size_t s, std::span<const std::size_t> word)
{
    std::optional<std::size_t> cur = s;
    for (std::size_t e : word) {
        cur = a.step(*cur, e);
        if (!cur)
            return std::nullopt;
    }
    return cur;
}

std::optional<StateId> act(const AsyncSystem& a, const StateId& s, const std::vector<EventId>& word)
{
    std::size_t start = a.state_index(s);
    std::vector<std::size_t> idx;
    idx.reserve(word.size());
    for (const auto& e : word)
        idx.push_back(a.event_index(e));
    auto r = act(a, start, idx);
    if (!r)
        return std::nullopt;
    return a.state(*r);
}

std::vector<std::size_t> Layers::states_at(std::size_t k) const
{
    std::vector<std::size_t> out;
    for (const auto& entry : layers_.at(k))
        out.push_back(entry.state);
    std::sort(out.begin(), out.end());
    return out;
}

bool Layers::contains(std::size_t k, std::size_t s) const
{
    return k < position_.size() && position_[k].count(s) != 0;
}

std::vector<std::size_t> Layers::witness(std::size_t k, std::size_t s) const
{
    if (!contains(k, s))
        throw PreconditionError("state is not in layer " + std::to_string(k));
    std::vector<std::size_t> word(k);
    std::size_t cur = s;
    for (std::size_t j = k; j > 0; --j) {
        const Entry& entry = layers_[j][position_[j].at(cur)];
        word[j - 1] = entry.event;
        cur = entry.pred;
    }
    return word;
}

Layers reachable_layers(const AsyncSystem& a, std::size_t from, std::optional<std::size_t> max_len)
{
    if (from >= a.num_states())
        throw InputError("state index out of range");
    const std::size_t len = max_len.value_or(a.num_states());

    Layers out;
    out.from_ = from;
    out.layers_.push_back({{from, npos, npos}});
    out.position_.push_back({{from, 0}});
    std::set<std::size_t> reached{from};

    for (std::size_t k = 1; k <= len; ++k) {
        std::vector<Layers::Entry> next;
        std::unordered_map<std::size_t, std::size_t> pos;
        // Predecessors are visited in witness order and events in identifier
        // order, so the first hit of a state carries its least witness.
        for (const auto& entry : out.layers_.back()) {
            for (std::size_t e = 0; e < a.num_events(); ++e) {
                auto t = a.step(entry.state, e);
                if (!t || pos.count(*t))
                    continue;
                pos.emplace(*t, next.size());
                next.push_back({*t, entry.state, e});
                reached.insert(*t);
            }
        }
        out.layers_.push_back(std::move(next));
        out.position_.push_back(std::move(pos));
    }
    out.reached_.assign(reached.begin(), reached.end());
    return out;
}

std::vector<std::size_t> reachable_states(const AsyncSystem& a, std::size_t from)
{
    std::vector<char> seen(a.num_states(), 0);
    std::deque<std::size_t> queue{from};
    seen.at(from) = 1;
    while (!queue.empty()) {
        std::size_t s = queue.front();
        queue.pop_front();
        for (std::size_t e = 0; e < a.num_events(); ++e) {
            auto t = a.step(s, e);
            if (t && !seen[*t]) {
                seen[*t] = 1;
                queue.push_back(*t);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t s = 0; s < seen.size(); ++s)
        if (seen[s])
            out.push_back(s);
    return out;
}

LabelledAsyncSystem residual(const LabelledAsyncSystem& a, std::size_t s)
{
    const auto& sys = a.system();
    if (s >= sys.num_states())
        throw InputError("state index out of range");
    auto reach = reachable_states(sys, sys.initial());
    if (!std::binary_search(reach.begin(), reach.end(), s))
        throw PreconditionError("state '" + sys.state(s).str() + "' is not reachable from '" +
                                sys.state(sys.initial()).str() + "'");
    return a.with_initial(s);
}

LabelledAsyncSystem residual(const LabelledAsyncSystem& a, const StateId& s)
{
    auto idx = a.system().find_state(s);
    if (!idx)
        throw PreconditionError("state '" + s.str() + "' is not a state of the system");
    return residual(a, *idx);
}

namespace {

void extend_q(const AsyncSystem& a, std::size_t n, std::size_t origin, std::size_t current,
              std::vector<std::size_t>& word, std::vector<QTuple>& out)
{
    if (word.size() == n) {
        out.push_back({origin, word});
        return;
    }
    for (std::size_t e = 0; e < a.num_events(); ++e) {
        bool ok = std::all_of(word.begin(), word.end(), [&](std::size_t f) { return a.independent(e, f); });
        if (!ok)
            continue;
        auto next = a.step(current, e);
        if (!next)
            continue;
        word.push_back(e);
        extend_q(a, n, origin, *next, word, out);
        word.pop_back();
    }
}

}  // namespace

std::vector<QTuple> enumerate_q(const AsyncSystem& a, std::size_t n)
{
    std::vector<QTuple> out;
    std::vector<std::size_t> word;
    for (std::size_t s : reachable_states(a, a.initial()))
        extend_q(a, n, s, s, word, out);
    return out;
}

std::string format_word(const AsyncSystem& a, std::span<const std::size_t> word)
{
    if (word.empty())
        return "ε";
    std::vector<std::string> parts;
    for (std::size_t e : word)
        parts.push_back(a.event(e).str());
    return join(parts, " ");
}

}  // namespace concur
