#include "concur/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace concur::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw InputError("field '" + field + "': " + what);
}

void reject_unknown(const json& doc, std::initializer_list<const char*> allowed, const std::string& where)
{
    if (!doc.is_object())
        field_error(where.empty() ? "<document>" : where, "expected an object");
    for (const auto& [key, value] : doc.items()) {
        bool ok = false;
        for (const char* a : allowed)
            ok = ok || key == a;
        if (!ok)
            field_error(where.empty() ? key : where + "." + key, "unknown field");
    }
}

const json& require(const json& doc, const std::string& key)
{
    auto it = doc.find(key);
    if (it == doc.end())
        field_error(key, "missing");
    return *it;
}

std::string as_string(const json& v, const std::string& field)
{
    if (!v.is_string())
        field_error(field, "expected a string");
    return v.get<std::string>();
}

template <typename Id>
std::vector<Id> string_array(const json& v, const std::string& field)
{
    if (!v.is_array())
        field_error(field, "expected an array of strings");
    std::vector<Id> out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out.emplace_back(as_string(v[i], field + "[" + std::to_string(i) + "]"));
    return out;
}

std::uint64_t as_count(const json& v, const std::string& field)
{
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        field_error(field, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

template <typename K, typename V>
std::map<K, V> string_map(const json& v, const std::string& field)
{
    if (!v.is_object())
        field_error(field, "expected an object of strings");
    std::map<K, V> out;
    for (const auto& [key, value] : v.items())
        out.emplace(K(key), V(as_string(value, field + "." + key)));
    return out;
}

std::optional<std::vector<Label>> optional_alphabet(const json& doc)
{
    auto it = doc.find("alphabet");
    if (it == doc.end())
        return std::nullopt;
    return string_array<Label>(*it, "alphabet");
}

template <typename Seq>
json names(const Seq& ids)
{
    json out = json::array();
    for (const auto& id : ids)
        out.push_back(id.str());
    return out;
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // Translate the byte offset into line/column.
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
    }
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json read_json_file(const std::string& path)
{
    return parse_json(read_file(path), path);
}

DocumentKind detect_kind(const json& doc)
{
    if (!doc.is_object())
        throw InputError("document is not a JSON object");
    if (doc.contains("places"))
        return DocumentKind::Net;
    if (doc.contains("facets"))
        return DocumentKind::Scheme;
    if (doc.contains("transitions") || doc.contains("states"))
        return DocumentKind::System;
    throw InputError("cannot tell the document kind; pass --type");
}

DocumentKind parse_kind(const std::string& name)
{
    if (name == "lts")
        return DocumentKind::System;
    if (name == "net")
        return DocumentKind::Net;
    if (name == "scheme")
        return DocumentKind::Scheme;
    throw InputError("unknown document type '" + name + "' (expected lts, net or scheme)");
}

SystemDocument system_document_from_json(const json& doc)
{
    reject_unknown(doc, {"states", "initial", "events", "independence", "transitions", "labels", "alphabet"}, "");
    SystemDocument out;
    auto& d = out.description;
    d.states = string_array<StateId>(require(doc, "states"), "states");
    d.initial = StateId(as_string(require(doc, "initial"), "initial"));
    d.events = string_array<EventId>(require(doc, "events"), "events");

    if (auto it = doc.find("independence"); it != doc.end()) {
        if (!it->is_array())
            field_error("independence", "expected an array of pairs");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const json& pair = (*it)[i];
            std::string f = "independence[" + std::to_string(i) + "]";
            if (!pair.is_array() || pair.size() != 2)
                field_error(f, "expected a 2-element array");
            d.independence.emplace_back(EventId(as_string(pair[0], f + "[0]")), EventId(as_string(pair[1], f + "[1]")));
        }
    }

    const json& ts = require(doc, "transitions");
    if (!ts.is_array())
        field_error("transitions", "expected an array");
    for (std::size_t i = 0; i < ts.size(); ++i) {
        std::string f = "transitions[" + std::to_string(i) + "]";
        reject_unknown(ts[i], {"from", "event", "to"}, f);
        d.transitions.push_back({StateId(as_string(require(ts[i], "from"), f + ".from")),
                                 EventId(as_string(require(ts[i], "event"), f + ".event")),
                                 StateId(as_string(require(ts[i], "to"), f + ".to"))});
    }

    if (auto it = doc.find("labels"); it != doc.end()) {
        out.labels = string_map<EventId, Label>(*it, "labels");
    } else {
        for (const auto& e : d.events)
            out.labels.emplace(e, Label(e.str()));
    }
    out.alphabet = optional_alphabet(doc);
    return out;
}

LabelledAsyncSystem system_from_json(const json& doc)
{
    SystemDocument sd = system_document_from_json(doc);
    return LabelledAsyncSystem(AsyncSystem(sd.description), sd.labels, sd.alphabet);
}

json system_to_json(const LabelledAsyncSystem& la)
{
    const AsyncSystem& a = la.system();
    json out;
    out["states"] = names(a.states());
    out["initial"] = a.state(a.initial()).str();
    out["events"] = names(a.events());
    json ind = json::array();
    for (auto [i, j] : a.independent_pairs())
        ind.push_back({a.event(i).str(), a.event(j).str()});
    out["independence"] = ind;
    json ts = json::array();
    for (const auto& t : a.transitions())
        ts.push_back({{"from", t.from.str()}, {"event", t.event.str()}, {"to", t.to.str()}});
    out["transitions"] = ts;
    json labels = json::object();
    for (std::size_t e = 0; e < a.num_events(); ++e)
        labels[a.event(e).str()] = la.label(e).str();
    out["labels"] = labels;
    out["alphabet"] = names(la.alphabet());
    return out;
}

LabelledPetriNet net_from_json(const json& doc)
{
    reject_unknown(doc, {"places", "events", "pre", "post", "initial_marking", "labels", "alphabet"}, "");
    NetDescription d;
    d.places = string_array<PlaceId>(require(doc, "places"), "places");
    d.events = string_array<EventId>(require(doc, "events"), "events");

    const json& pre = require(doc, "pre");
    const json& post = require(doc, "post");
    const json& m0 = require(doc, "initial_marking");

    auto read_rows = [&](const json& table, const std::string& field,
                         std::map<EventId, std::map<PlaceId, std::uint64_t>>& out) {
        if (table.is_array()) {
            // Matrix form: one row per event, one column per place, in declared order.
            if (table.size() != d.events.size())
                field_error(field, "expected " + std::to_string(d.events.size()) + " rows (one per event)");
            for (std::size_t r = 0; r < table.size(); ++r) {
                std::string f = field + "[" + std::to_string(r) + "]";
                if (!table[r].is_array() || table[r].size() != d.places.size())
                    field_error(f, "expected " + std::to_string(d.places.size()) + " entries (one per place)");
                for (std::size_t c = 0; c < d.places.size(); ++c)
                    if (auto n = as_count(table[r][c], f + "[" + std::to_string(c) + "]"))
                        out[d.events[r]][d.places[c]] = n;
            }
        } else if (table.is_object()) {
            for (const auto& [event, row] : table.items()) {
                std::string f = field + "." + event;
                if (!row.is_object())
                    field_error(f, "expected an object place -> count");
                auto& target = out[EventId(event)];
                for (const auto& [place, count] : row.items())
                    target[PlaceId(place)] = as_count(count, f + "." + place);
            }
        } else {
            field_error(field, "expected an object or a matrix");
        }
    };
    read_rows(pre, "pre", d.pre);
    read_rows(post, "post", d.post);

    if (m0.is_array()) {
        if (m0.size() != d.places.size())
            field_error("initial_marking", "expected " + std::to_string(d.places.size()) + " entries");
        for (std::size_t c = 0; c < m0.size(); ++c)
            d.initial_marking[d.places[c]] = as_count(m0[c], "initial_marking[" + std::to_string(c) + "]");
    } else if (m0.is_object()) {
        for (const auto& [place, count] : m0.items())
            d.initial_marking[PlaceId(place)] = as_count(count, "initial_marking." + place);
    } else {
        field_error("initial_marking", "expected an object or an array");
    }

    std::map<EventId, Label> labels;
    if (auto it = doc.find("labels"); it != doc.end()) {
        labels = string_map<EventId, Label>(*it, "labels");
    } else {
        for (const auto& e : d.events)
            labels.emplace(e, Label(e.str()));
    }
    return LabelledPetriNet(PetriNet(d), labels, optional_alphabet(doc));
}

json net_to_json(const LabelledPetriNet& ln)
{
    const PetriNet& n = ln.net();
    json out;
    out["places"] = names(n.places());
    out["events"] = names(n.events());
    auto rows = [&](bool pre) {
        json t = json::object();
        for (std::size_t e = 0; e < n.num_events(); ++e) {
            json row = json::object();
            const Marking& m = pre ? n.pre(e) : n.post(e);
            for (std::size_t p = 0; p < n.num_places(); ++p)
                if (m.tokens[p])
                    row[n.place(p).str()] = m.tokens[p];
            t[n.event(e).str()] = row;
        }
        return t;
    };
    out["pre"] = rows(true);
    out["post"] = rows(false);
    json m0 = json::object();
    for (std::size_t p = 0; p < n.num_places(); ++p)
        if (n.initial_marking().tokens[p])
            m0[n.place(p).str()] = n.initial_marking().tokens[p];
    out["initial_marking"] = m0;
    json labels = json::object();
    for (const auto& [e, l] : ln.labels())
        labels[e.str()] = l.str();
    out["labels"] = labels;
    out["alphabet"] = names(ln.alphabet());
    return out;
}

SimplicialScheme scheme_from_json(const json& doc)
{
    reject_unknown(doc, {"vertices", "facets"}, "");
    const json& fs = require(doc, "facets");
    if (!fs.is_array())
        field_error("facets", "expected an array of arrays");
    std::vector<std::vector<Label>> facets;
    for (std::size_t i = 0; i < fs.size(); ++i)
        facets.push_back(string_array<Label>(fs[i], "facets[" + std::to_string(i) + "]"));
    if (auto it = doc.find("vertices"); it != doc.end())
        return SimplicialScheme(string_array<Label>(*it, "vertices"), facets);
    return SimplicialScheme::from_facets(facets);
}

json scheme_to_json(const SimplicialScheme& k)
{
    json out;
    out["vertices"] = names(k.vertices());
    json fs = json::array();
    for (const auto& f : k.facets())
        fs.push_back(names(f));
    out["facets"] = fs;
    return out;
}

MorphismMaps morphism_from_json(const json& doc)
{
    reject_unknown(doc, {"sigma", "eta"}, "");
    MorphismMaps m;
    m.sigma = string_map<StateId, StateId>(require(doc, "sigma"), "sigma");
    if (auto it = doc.find("eta"); it != doc.end())
        m.eta = string_map<EventId, EventId>(*it, "eta");
    return m;
}

json morphism_to_json(const SystemMorphism& m)
{
    json out;
    json sigma = json::object();
    for (const auto& [s, t] : m.sigma_map())
        sigma[s.str()] = t.str();
    json eta = json::object();
    for (const auto& [e, f] : m.eta_map())
        eta[e.str()] = f.str();
    out["sigma"] = sigma;
    out["eta"] = eta;
    return out;
}

Span span_from_json(const json& doc, SystemPtr left_target, SystemPtr right_target)
{
    reject_unknown(doc, {"apex", "left", "right"}, "");
    SystemPtr apex;
    try {
        apex = std::make_shared<const LabelledAsyncSystem>(system_from_json(require(doc, "apex")));
    } catch (const InputError& e) {
        throw InputError(std::string("apex: ") + e.what());
    }
    auto leg = [&](const char* key, SystemPtr target) {
        try {
            MorphismMaps maps = morphism_from_json(require(doc, key));
            return SystemMorphism(apex, std::move(target), maps.sigma, maps.eta);
        } catch (const InputError& e) {
            throw InputError(std::string(key) + ": " + e.what());
        }
    };
    SystemMorphism left = leg("left", std::move(left_target));
    SystemMorphism right = leg("right", std::move(right_target));
    return Span(apex, std::move(left), std::move(right));
}

IntegerMatrix matrix_from_text(const std::string& text)
{
    std::istringstream in(text);
    std::vector<std::vector<std::string>> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok)
            tokens.push_back(tok);
        if (!tokens.empty())
            lines.push_back(std::move(tokens));
    }

    auto parse_int = [](const std::string& tok, std::size_t row) {
        try {
            return BigInt(tok);
        } catch (const std::exception&) {
            throw InputError("matrix row " + std::to_string(row + 1) + ": '" + tok + "' is not an integer");
        }
    };
    auto parse_dim = [](const std::string& tok) -> std::size_t {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("matrix header: '" + tok + "' is not a dimension");
        return std::stoul(tok);
    };

    std::optional<std::pair<std::size_t, std::size_t>> dims;
    std::size_t first = 0;
    if (!lines.empty()) {
        const auto& h = lines.front();
        if (h.size() == 3 && h[0].size() > 1 && h[0][0] == 'd') {
            dims = {parse_dim(h[1]), parse_dim(h[2])};
            first = 1;
        }
    }

    std::vector<std::vector<BigInt>> rows;
    for (std::size_t i = first; i < lines.size(); ++i) {
        std::vector<BigInt> row;
        for (const auto& tok : lines[i])
            row.push_back(parse_int(tok, i - first));
        rows.push_back(std::move(row));
    }
    if (dims) {
        if (rows.size() != dims->first)
            throw InputError("matrix header declares " + std::to_string(dims->first) + " rows, found " +
                             std::to_string(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].size() != dims->second)
                throw InputError("matrix row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) +
                                 " entries, header declares " + std::to_string(dims->second));
        return IntegerMatrix::from_rows(rows, dims->second);
    }
    return IntegerMatrix::from_rows(rows);
}

void write_matrix(std::ostream& os, std::size_t n, const IntegerMatrix& m)
{
    os << "d" << n << " " << m.rows() << " " << m.cols() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? " " : "") << m(r, c);
        os << "\n";
    }
}

namespace {

json bigint_json(const BigInt& v)
{
    if (v <= BigInt(std::numeric_limits<std::int64_t>::max()) && v >= BigInt(std::numeric_limits<std::int64_t>::min()))
        return json(static_cast<std::int64_t>(v));
    return json(v.str());
}

}  // namespace

json signature_to_json(const HomologySignature& sig)
{
    json degrees = json::array();
    for (std::size_t n = 0; n < sig.degrees().size(); ++n) {
        const auto& g = sig.degrees()[n];
        json torsion = json::array();
        for (const auto& t : g.torsion)
            torsion.push_back(bigint_json(t));
        degrees.push_back({{"degree", n}, {"betti", g.betti}, {"torsion", torsion}, {"group", g.to_string()}});
    }
    return degrees;
}

json smith_to_json(const SmithForm& f)
{
    json diag = json::array();
    for (const auto& d : f.diagonal)
        diag.push_back(bigint_json(d));
    return {{"diagonal", diag}, {"rank", f.rank}};
}

json report_to_json(const ValidationReport& r)
{
    json vs = json::array();
    for (const auto& v : r.violations)
        vs.push_back({{"kind", v.kind}, {"message", v.message}});
    return {{"valid", r.ok()}, {"violations", vs}};
}

json verdict_to_json(const Verdict& v)
{
    json out;
    out["verdict"] = to_string(v.kind);
    if (v.kind == Verdict::Kind::NotBisimilar) {
        out["witness"] = names(v.witness);
        out["length"] = v.length();
        out["side"] = to_string(v.side);
    }
    if (v.max_len_tried)
        out["max_len_tried"] = *v.max_len_tried;
    out["report"] = v.report;
    return out;
}

ExplorationLimits parse_limits(const std::string& text, ExplorationLimits base)
{
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty())
            continue;
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw InputError("limits: expected key=value, got '" + item + "'");
        std::string key = item.substr(0, eq);
        std::string value = item.substr(eq + 1);
        if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("limits: '" + value + "' is not a positive integer");
        auto n = std::stoull(value);
        if (n == 0)
            throw InputError("limits: " + key + " must be positive");
        if (key == "states" || key == "maxStates")
            base.max_states = n;
        else if (key == "tokens" || key == "maxTokens")
            base.max_tokens = n;
        else
            throw InputError("limits: unknown key '" + key + "' (expected states or tokens)");
    }
    return base;
}

}  // namespace concur::io
