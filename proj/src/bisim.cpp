#include "concur/bisim.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace concur {

SystemMorphism::SystemMorphism(SystemPtr source, SystemPtr target, std::vector<std::size_t> sigma,
                               std::vector<std::size_t> eta)
    : source_(std::move(source)), target_(std::move(target)), sigma_(std::move(sigma)), eta_(std::move(eta))
{
}

SystemMorphism::SystemMorphism(SystemPtr source, SystemPtr target, const std::map<StateId, StateId>& sigma,
                               const std::map<EventId, EventId>& eta)
    : source_(std::move(source)), target_(std::move(target))
{
    if (!source_ || !target_)
        throw InputError("morphism needs both a source and a target system");
    const AsyncSystem& src = source_->system();
    const AsyncSystem& tgt = target_->system();
    for (const auto& [s, t] : sigma)
        if (!src.find_state(s))
            throw InputError("sigma maps unknown source state '" + s.str() + "'");
    for (const auto& [e, f] : eta)
        if (!src.find_event(e))
            throw InputError("eta maps unknown source event '" + e.str() + "'");

    sigma_.reserve(src.num_states());
    for (const auto& s : src.states()) {
        auto it = sigma.find(s);
        if (it == sigma.end())
            throw InputError("sigma is not defined on state '" + s.str() + "'");
        auto t = tgt.find_state(it->second);
        if (!t)
            throw InputError("sigma sends '" + s.str() + "' to unknown target state '" + it->second.str() + "'");
        sigma_.push_back(*t);
    }
    eta_.reserve(src.num_events());
    for (const auto& e : src.events()) {
        auto it = eta.find(e);
        if (it == eta.end()) {
            eta_.push_back(npos);
            continue;
        }
        auto f = tgt.find_event(it->second);
        if (!f)
            throw InputError("eta sends '" + e.str() + "' to unknown target event '" + it->second.str() + "'");
        eta_.push_back(*f);
    }
}

SystemMorphism SystemMorphism::identity(SystemPtr system)
{
    std::vector<std::size_t> sigma(system->system().num_states());
    std::vector<std::size_t> eta(system->system().num_events());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        sigma[i] = i;
    for (std::size_t i = 0; i < eta.size(); ++i)
        eta[i] = i;
    return SystemMorphism(system, system, std::move(sigma), std::move(eta));
}

bool SystemMorphism::eta_total() const
{
    return std::none_of(eta_.begin(), eta_.end(), [](std::size_t v) { return v == npos; });
}

std::map<StateId, StateId> SystemMorphism::sigma_map() const
{
    std::map<StateId, StateId> out;
    for (std::size_t s = 0; s < sigma_.size(); ++s)
        out.emplace(source_->system().state(s), target_->system().state(sigma_[s]));
    return out;
}

std::map<EventId, EventId> SystemMorphism::eta_map() const
{
    std::map<EventId, EventId> out;
    for (std::size_t e = 0; e < eta_.size(); ++e)
        if (eta_[e] != npos)
            out.emplace(source_->system().event(e), target_->system().event(eta_[e]));
    return out;
}

SystemMorphism SystemMorphism::rebased(std::size_t s) const
{
    auto src = std::make_shared<const LabelledAsyncSystem>(residual(*source_, s));
    auto tgt = std::make_shared<const LabelledAsyncSystem>(target_->with_initial(sigma_.at(s)));
    return SystemMorphism(std::move(src), std::move(tgt), sigma_, eta_);
}

ValidationReport validate_morphism(const SystemMorphism& m)
{
    ValidationReport report;
    const AsyncSystem& src = m.source().system();
    const AsyncSystem& tgt = m.target().system();

    if (m.sigma(src.initial()) != tgt.initial())
        report.add("initial", "sigma(" + src.state(src.initial()).str() + ") = " +
                                  tgt.state(m.sigma(src.initial())).str() + ", expected target initial " +
                                  tgt.state(tgt.initial()).str());

    for (std::size_t s = 0; s < src.num_states(); ++s)
        for (std::size_t e = 0; e < src.num_events(); ++e) {
            auto u = src.step(s, e);
            if (!u)
                continue;
            std::size_t fs = m.sigma(s);
            std::size_t fu = m.sigma(*u);
            std::ostringstream where;
            where << "transition (" << src.state(s) << ", " << src.event(e) << ", " << src.state(*u) << ")";
            if (auto f = m.eta(e)) {
                auto image = tgt.step(fs, *f);
                if (!image || *image != fu)
                    report.add("transition", where.str() + ": (" + tgt.state(fs).str() + ", " +
                                                 tgt.event(*f).str() + ", " + tgt.state(fu).str() +
                                                 ") is not a target transition");
            } else if (fs != fu) {
                report.add("transition", where.str() + ": eta undefined but sigma moves " +
                                             tgt.state(fs).str() + " to " + tgt.state(fu).str());
            }
        }

    for (auto [x, y] : src.independent_pairs()) {
        auto fx = m.eta(x);
        auto fy = m.eta(y);
        if (fx && fy && !tgt.independent(*fx, *fy))
            report.add("independence", "(" + src.event(x).str() + ", " + src.event(y).str() + ") independent but (" +
                                           tgt.event(*fx).str() + ", " + tgt.event(*fy).str() + ") is not");
    }

    if (m.source().alphabet() == m.target().alphabet()) {
        for (std::size_t e = 0; e < src.num_events(); ++e) {
            auto f = m.eta(e);
            if (f && m.source().label(e) != m.target().label(*f))
                report.add("label", "label of " + src.event(e).str() + " is " + m.source().label(e).str() +
                                        " but label of " + tgt.event(*f).str() + " is " +
                                        m.target().label(*f).str());
        }
    }
    return report;
}

OpenReport is_open(const SystemMorphism& m)
{
    OpenReport report;
    const AsyncSystem& src = m.source().system();
    const AsyncSystem& tgt = m.target().system();

    for (std::size_t e = 0; e < src.num_events(); ++e)
        if (!m.eta(e)) {
            report.undefined_events.push_back(e);
            report.add("not-total", "eta is undefined on " + src.event(e).str());
        }

    for (std::size_t s = 0; s < src.num_states(); ++s) {
        std::size_t fs = m.sigma(s);
        for (std::size_t f = 0; f < tgt.num_events(); ++f) {
            auto u_prime = tgt.step(fs, f);
            if (!u_prime)
                continue;
            bool lifted = false;
            for (std::size_t e = 0; e < src.num_events() && !lifted; ++e) {
                if (m.eta(e) != f)
                    continue;
                auto u = src.step(s, e);
                lifted = u && m.sigma(*u) == *u_prime;
            }
            if (!lifted) {
                report.lift_failures.push_back({s, f});
                report.add("lifting", "no transition from " + src.state(s).str() + " lifts (" + tgt.state(fs).str() +
                                          ", " + tgt.event(f).str() + ", " + tgt.state(*u_prime).str() + ")");
            }
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t s : reachable_states(src, src.initial()))
        for (std::size_t e1 = 0; e1 < src.num_events(); ++e1) {
            auto u = src.step(s, e1);
            auto f1 = m.eta(e1);
            if (!u || !f1)
                continue;
            for (std::size_t e2 = 0; e2 < src.num_events(); ++e2) {
                auto f2 = m.eta(e2);
                if (!f2 || !src.step(*u, e2))
                    continue;
                if (tgt.independent(*f1, *f2) && !src.independent(e1, e2) && seen.emplace(e1, e2).second) {
                    report.unreflected.emplace_back(e1, e2);
                    report.add("reflection", "(" + tgt.event(*f1).str() + ", " + tgt.event(*f2).str() +
                                                 ") independent but (" + src.event(e1).str() + ", " +
                                                 src.event(e2).str() + ") is not, at " + src.state(s).str());
                }
            }
        }
    return report;
}

SurjectivityResult check_q_surjectivity(const SystemMorphism& m, std::size_t n)
{
    if (!m.eta_total())
        throw PreconditionError("Q_n(sigma, eta) needs a total eta");
    std::set<QTuple> image;
    for (const auto& q : enumerate_q(m.source().system(), n)) {
        QTuple mapped{m.sigma(q.state), {}};
        for (std::size_t e : q.events)
            mapped.events.push_back(*m.eta(e));
        image.insert(std::move(mapped));
    }
    SurjectivityResult result;
    for (const auto& q : enumerate_q(m.target().system(), n))
        if (!image.count(q)) {
            result.surjective = false;
            result.missing = q;
            break;
        }
    return result;
}

Span::Span(SystemPtr apex, SystemMorphism left, SystemMorphism right)
    : apex_(std::move(apex)), left_(std::move(left)), right_(std::move(right))
{
    if (!apex_ || left_.source_ptr() != apex_ || right_.source_ptr() != apex_)
        throw InputError("both legs of a span must start at its apex");
}

std::string to_string(Verdict::Kind kind)
{
    switch (kind) {
    case Verdict::Kind::NotBisimilar:
        return "NotBisimilar";
    case Verdict::Kind::Certified:
        return "Certified";
    case Verdict::Kind::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::string to_string(Side side)
{
    return side == Side::Left ? "left" : "right";
}

namespace {

std::string join_alphabet(const std::vector<Label>& alphabet)
{
    std::vector<std::string> parts;
    for (const auto& l : alphabet)
        parts.push_back(l.str());
    return "{" + join(parts, ", ") + "}";
}

void require_same_alphabet(const LabelledAsyncSystem& a, const LabelledAsyncSystem& b, const char* what)
{
    if (a.alphabet() != b.alphabet())
        throw AlphabetMismatch(std::string(what) + ": alphabets differ, " + join_alphabet(a.alphabet()) +
                               " vs " + join_alphabet(b.alphabet()));
}

}  // namespace

Verdict certify_bisimilar(const Span& span)
{
    require_same_alphabet(span.apex(), span.left().target(), "span apex and left system");
    require_same_alphabet(span.apex(), span.right().target(), "span apex and right system");

    Verdict verdict;
    std::ostringstream report;
    bool ok = true;
    for (auto side : {Side::Left, Side::Right}) {
        const SystemMorphism& leg = side == Side::Left ? span.left() : span.right();
        auto morphism = validate_morphism(leg);
        auto open = is_open(leg);
        if (morphism.ok() && open.ok()) {
            report << to_string(side) << " leg: open, label-preserving morphism\n";
            continue;
        }
        ok = false;
        report << to_string(side) << " leg fails:\n";
        for (const auto& v : morphism.violations)
            report << "  [morphism/" << v.kind << "] " << v.message << "\n";
        for (const auto& v : open.violations)
            report << "  [open/" << v.kind << "] " << v.message << "\n";
    }
    verdict.kind = ok ? Verdict::Kind::Certified : Verdict::Kind::Inconclusive;
    verdict.report = (ok ? std::string("certified: the span is a pair of open, label-preserving morphisms\n")
                         : std::string("span does not certify bisimilarity\n")) +
                     report.str();
    return verdict;
}

namespace {

struct LayerSide {
    const LabelledAsyncSystem& system;
    Layers layers;
    std::vector<std::optional<HomologySignature>> cache;

    LayerSide(const LabelledAsyncSystem& s, std::size_t max_len)
        : system(s), layers(reachable_layers(s.system(), s.system().initial(), max_len)),
          cache(s.system().num_states())
    {
    }

    const HomologySignature& signature(std::size_t state)
    {
        if (!cache[state])
            cache[state] = homology_of_system(system.with_initial(state));
        return *cache[state];
    }

    std::set<HomologySignature> signatures(std::size_t k)
    {
        std::set<HomologySignature> out;
        for (const auto& entry : layers.layer(k))
            out.insert(signature(entry.state));
        return out;
    }

    // First state of R_k (in least-witness order) whose signature is absent from `other`.
    std::optional<std::size_t> unmatched(std::size_t k, const std::set<HomologySignature>& other)
    {
        for (const auto& entry : layers.layer(k))
            if (!other.count(signature(entry.state)))
                return entry.state;
        return std::nullopt;
    }

    std::vector<EventId> word(std::size_t k, std::size_t state) const
    {
        std::vector<EventId> out;
        for (std::size_t e : layers.witness(k, state))
            out.push_back(system.system().event(e));
        return out;
    }
};

std::string describe_set(const std::set<HomologySignature>& sigs)
{
    if (sigs.empty())
        return "none (no state at this length)";
    std::vector<std::string> parts;
    for (const auto& s : sigs)
        parts.push_back("[" + s.to_string() + "]");
    return join(parts, " ");
}

std::string words_text(const std::vector<EventId>& word)
{
    if (word.empty())
        return "ε";
    std::vector<std::string> parts;
    for (const auto& e : word)
        parts.push_back(e.str());
    return join(parts, " ");
}

}  // namespace

Verdict refute_bisimilar(const LabelledAsyncSystem& a, const LabelledAsyncSystem& b,
                         std::optional<std::size_t> max_len)
{
    require_same_alphabet(a, b, "refute");
    const std::size_t len = max_len.value_or(a.system().num_states() + b.system().num_states());

    LayerSide left(a, len);
    LayerSide right(b, len);

    std::size_t tried = 0;
    for (std::size_t k = 0; k <= len; ++k) {
        if (left.layers.layer(k).empty() && right.layers.layer(k).empty())
            break;
        tried = k;
        auto sig_left = left.signatures(k);
        auto sig_right = right.signatures(k);
        auto miss_left = left.unmatched(k, sig_right);
        auto miss_right = right.unmatched(k, sig_left);
        if (!miss_left && !miss_right)
            continue;

        Verdict v;
        v.kind = Verdict::Kind::NotBisimilar;
        std::optional<std::vector<EventId>> wl;
        std::optional<std::vector<EventId>> wr;
        if (miss_left)
            wl = left.word(k, *miss_left);
        if (miss_right)
            wr = right.word(k, *miss_right);
        // Sig_left ⊄ Sig_right is tested first; the right side only answers when it alone fails.
        if (wl) {
            v.side = Side::Left;
            v.witness = *wl;
        } else {
            v.side = Side::Right;
            v.witness = *wr;
        }
        LayerSide& own = v.side == Side::Left ? left : right;
        std::size_t state = v.side == Side::Left ? *miss_left : *miss_right;
        const auto& others = v.side == Side::Left ? sig_right : sig_left;

        std::ostringstream os;
        os << "not bisimilar: after the word '" << words_text(v.witness) << "' (length " << k << ") the "
           << to_string(v.side) << " system reaches state " << own.system.system().state(state)
           << " whose residual homology is [" << own.signature(state).to_string() << "]\n"
           << "no residual reached by a word of length " << k << " in the "
           << to_string(v.side == Side::Left ? Side::Right : Side::Left)
           << " system has this homology; available: " << describe_set(others) << "\n";
        v.report = os.str();
        return v;
    }

    Verdict v;
    v.kind = Verdict::Kind::Inconclusive;
    v.max_len_tried = len;
    v.report = "inconclusive: residual homology signatures agree for every word length up to " +
               std::to_string(tried) + " (limit " + std::to_string(len) + ")\n";
    return v;
}

}  // namespace concur
