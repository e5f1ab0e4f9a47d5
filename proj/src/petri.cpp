#include "concur/petri.hpp"

#include <algorithm>
#include <deque>

namespace concur {

bool Marking::covers(const Marking& other) const
{
    if (tokens.size() != other.tokens.size())
        throw InputError("markings over different place sets");
    for (std::size_t p = 0; p < tokens.size(); ++p)
        if (tokens[p] < other.tokens[p])
            return false;
    return true;
}

std::uint64_t Marking::dot(const Marking& other) const
{
    if (tokens.size() != other.tokens.size())
        throw InputError("markings over different place sets");
    std::uint64_t sum = 0;
    for (std::size_t p = 0; p < tokens.size(); ++p)
        sum += tokens[p] * other.tokens[p];
    return sum;
}

Marking Marking::operator+(const Marking& other) const
{
    if (tokens.size() != other.tokens.size())
        throw InputError("markings over different place sets");
    Marking out = *this;
    for (std::size_t p = 0; p < tokens.size(); ++p)
        out.tokens[p] += other.tokens[p];
    return out;
}

Marking Marking::operator-(const Marking& other) const
{
    if (!covers(other))
        throw PreconditionError("difference of markings is undefined: subtrahend not covered");
    Marking out = *this;
    for (std::size_t p = 0; p < tokens.size(); ++p)
        out.tokens[p] -= other.tokens[p];
    return out;
}

std::string encode_marking(const Marking& m)
{
    std::string out;
    for (std::size_t p = 0; p < m.tokens.size(); ++p) {
        if (p)
            out += ',';
        out += std::to_string(m.tokens[p]);
    }
    return out;
}

PetriNet::PetriNet(const NetDescription& d) : places_(d.places), events_(d.events)
{
    std::sort(places_.begin(), places_.end());
    std::sort(events_.begin(), events_.end());
    if (auto it = std::adjacent_find(places_.begin(), places_.end()); it != places_.end())
        throw InputError("duplicate place '" + it->str() + "'");
    if (auto it = std::adjacent_find(events_.begin(), events_.end()); it != events_.end())
        throw InputError("duplicate event '" + it->str() + "'");

    auto check_events = [&](const auto& table, const char* what) {
        for (const auto& [e, row] : table)
            if (!std::binary_search(events_.begin(), events_.end(), e))
                throw InputError(std::string(what) + " given for unknown event '" + e.str() + "'");
    };
    check_events(d.pre, "pre");
    check_events(d.post, "post");

    auto row_of = [&](const auto& table, const EventId& e) {
        auto it = table.find(e);
        return it == table.end() ? Marking{std::vector<std::uint64_t>(places_.size(), 0)}
                                  : marking(it->second);
    };
    for (const auto& e : events_) {
        pre_.push_back(row_of(d.pre, e));
        post_.push_back(row_of(d.post, e));
    }
    m0_ = marking(d.initial_marking);
}

std::size_t PetriNet::event_index(const EventId& e) const
{
    auto it = std::lower_bound(events_.begin(), events_.end(), e);
    if (it == events_.end() || *it != e)
        throw InputError("unknown event '" + e.str() + "'");
    return static_cast<std::size_t>(it - events_.begin());
}

std::size_t PetriNet::place_index(const PlaceId& p) const
{
    auto it = std::lower_bound(places_.begin(), places_.end(), p);
    if (it == places_.end() || *it != p)
        throw InputError("unknown place '" + p.str() + "'");
    return static_cast<std::size_t>(it - places_.begin());
}

Marking PetriNet::marking(const std::map<PlaceId, std::uint64_t>& counts) const
{
    Marking m{std::vector<std::uint64_t>(places_.size(), 0)};
    for (const auto& [p, c] : counts)
        m.tokens[place_index(p)] = c;
    return m;
}

NetDescription PetriNet::describe() const
{
    NetDescription d;
    d.places = places_;
    d.events = events_;
    auto sparse = [&](const Marking& m) {
        std::map<PlaceId, std::uint64_t> out;
        for (std::size_t p = 0; p < places_.size(); ++p)
            if (m.tokens[p])
                out.emplace(places_[p], m.tokens[p]);
        return out;
    };
    for (std::size_t e = 0; e < events_.size(); ++e) {
        d.pre.emplace(events_[e], sparse(pre_[e]));
        d.post.emplace(events_[e], sparse(post_[e]));
    }
    d.initial_marking = sparse(m0_);
    return d;
}

LabelledPetriNet::LabelledPetriNet(PetriNet net, const std::map<EventId, Label>& labels,
                                   std::optional<std::vector<Label>> alphabet)
    : net_(std::move(net)), labels_(labels)
{
    for (const auto& [e, l] : labels_)
        net_.event_index(e);
    for (const auto& e : net_.events())
        if (!labels_.count(e))
            throw InputError("event '" + e.str() + "' has no label");
    std::set<Label> alpha;
    if (alphabet) {
        alpha.insert(alphabet->begin(), alphabet->end());
        for (const auto& [e, l] : labels_)
            if (!alpha.count(l))
                throw InputError("label '" + l.str() + "' of event '" + e.str() + "' is not in the alphabet");
    } else {
        for (const auto& [e, l] : labels_)
            alpha.insert(l);
    }
    alphabet_.assign(alpha.begin(), alpha.end());
}

std::vector<std::size_t> enabled(const PetriNet& n, const Marking& m)
{
    if (m.tokens.size() != n.num_places())
        throw InputError("marking has " + std::to_string(m.tokens.size()) + " entries, net has " +
                         std::to_string(n.num_places()) + " places");
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < n.num_events(); ++e)
        if (m.covers(n.pre(e)))
            out.push_back(e);
    return out;
}

Marking fire(const PetriNet& n, const Marking& m, std::size_t e)
{
    if (m.tokens.size() != n.num_places())
        throw InputError("marking does not match the net's places");
    if (e >= n.num_events())
        throw InputError("event index out of range");
    if (!m.covers(n.pre(e)))
        throw FiringError("event '" + n.event(e).str() + "' is not enabled at marking (" +
                          encode_marking(m) + ")");
    return (m - n.pre(e)) + n.post(e);
}

std::vector<std::pair<std::size_t, std::size_t>> net_independence(const PetriNet& n)
{
    std::vector<Marking> touch;
    for (std::size_t e = 0; e < n.num_events(); ++e)
        touch.push_back(n.pre(e) + n.post(e));
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < n.num_events(); ++i)
        for (std::size_t j = i + 1; j < n.num_events(); ++j)
            if (touch[i].dot(touch[j]) == 0)
                out.emplace_back(i, j);
    return out;
}

namespace {

void check_tokens(const Marking& m, const ExplorationLimits& limits)
{
    for (auto c : m.tokens)
        if (c > limits.max_tokens)
            throw TokenLimitExceeded("marking (" + encode_marking(m) + ") exceeds the limit of " +
                                         std::to_string(limits.max_tokens) + " tokens per place",
                                     encode_marking(m));
}

}  // namespace

NetSystem async_of_net(const LabelledPetriNet& ln, const ExplorationLimits& limits)
{
    if (limits.max_states == 0 || limits.max_tokens == 0)
        throw PreconditionError("exploration limits must be positive");
    const PetriNet& n = ln.net();

    std::vector<Marking> markings{n.initial_marking()};
    std::map<Marking, std::size_t> index{{n.initial_marking(), 0}};
    struct Edge {
        std::size_t from;
        std::size_t event;
        std::size_t to;
    };
    std::vector<Edge> edges;
    check_tokens(n.initial_marking(), limits);

    std::deque<std::size_t> queue{0};
    while (!queue.empty()) {
        std::size_t cur = queue.front();
        queue.pop_front();
        for (std::size_t e : enabled(n, markings[cur])) {
            Marking next = fire(n, markings[cur], e);
            auto it = index.find(next);
            if (it == index.end()) {
                check_tokens(next, limits);
                if (markings.size() >= limits.max_states)
                    throw StateLimitExceeded("exploration reached marking (" + encode_marking(next) +
                                                 ") beyond the limit of " +
                                                 std::to_string(limits.max_states) + " states",
                                             encode_marking(next));
                it = index.emplace(next, markings.size()).first;
                markings.push_back(std::move(next));
                queue.push_back(it->second);
            }
            edges.push_back({cur, e, it->second});
        }
    }

    std::vector<char> occurs(n.num_events(), 0);
    for (const auto& edge : edges)
        occurs[edge.event] = 1;

    SystemDescription d;
    for (const auto& m : markings)
        d.states.emplace_back(encode_marking(m));
    d.initial = StateId(encode_marking(n.initial_marking()));
    std::vector<EventId> dropped;
    std::map<EventId, Label> labels;
    for (std::size_t e = 0; e < n.num_events(); ++e) {
        if (occurs[e]) {
            d.events.push_back(n.event(e));
            labels.emplace(n.event(e), ln.labels().at(n.event(e)));
        } else {
            dropped.push_back(n.event(e));
        }
    }
    for (auto [i, j] : net_independence(n))
        if (occurs[i] && occurs[j])
            d.independence.emplace_back(n.event(i), n.event(j));
    for (const auto& edge : edges)
        d.transitions.push_back({d.states[edge.from], n.event(edge.event), d.states[edge.to]});

    AsyncSystem sys(d);
    // Re-order the markings to match the system's sorted state order.
    std::vector<Marking> ordered(markings.size());
    for (std::size_t i = 0; i < markings.size(); ++i)
        ordered[sys.state_index(d.states[i])] = markings[i];

    return NetSystem{LabelledAsyncSystem(std::move(sys), labels, ln.alphabet()), std::move(dropped),
                     std::move(ordered)};
}

}  // namespace concur
