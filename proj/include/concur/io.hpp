/**
 * Document formats: systems, nets, schemes, morphisms and spans as JSON,
 * integer matrices as text, and JSON renderings of results.
 */
#ifndef CONCUR_IO_HPP
#define CONCUR_IO_HPP

#include <iosfwd>
#include <map>
#include <string>

#include <json.hpp>

#include "concur/bisim.hpp"
#include "concur/homology.hpp"
#include "concur/lts.hpp"
#include "concur/petri.hpp"
#include "concur/simplicial.hpp"

namespace concur::io {

using json = nlohmann::ordered_json;

/// Parse a JSON document; syntax errors become InputError naming line and column.
json parse_json(const std::string& text, const std::string& origin);
std::string read_file(const std::string& path);
json read_json_file(const std::string& path);

enum class DocumentKind { System, Net, Scheme };
/// Guess the kind from distinguishing fields (`transitions`, `places`, `facets`).
DocumentKind detect_kind(const json& doc);
DocumentKind parse_kind(const std::string& name);

/// Description and labels as written, before any semantic checks.
struct SystemDocument {
    SystemDescription description;
    std::map<EventId, Label> labels;
    std::optional<std::vector<Label>> alphabet;
};

SystemDocument system_document_from_json(const json& doc);
LabelledAsyncSystem system_from_json(const json& doc);
json system_to_json(const LabelledAsyncSystem& a);

/// Accepts the map form (`pre`/`post` objects) and the matrix form (arrays in declared order).
LabelledPetriNet net_from_json(const json& doc);
json net_to_json(const LabelledPetriNet& n);

SimplicialScheme scheme_from_json(const json& doc);
json scheme_to_json(const SimplicialScheme& k);

struct MorphismMaps {
    std::map<StateId, StateId> sigma;
    std::map<EventId, EventId> eta;
};
MorphismMaps morphism_from_json(const json& doc);
json morphism_to_json(const SystemMorphism& m);

/// {"apex": system, "left": morphism, "right": morphism}; targets supplied by the caller.
Span span_from_json(const json& doc, SystemPtr left_target, SystemPtr right_target);

/**
 * Matrix text: optional header `d<n> <rows> <cols>`, then rows of
 * whitespace-separated integers. Without a header every non-empty line is
 * a row; `#` starts a comment.
 */
IntegerMatrix matrix_from_text(const std::string& text);
/// `d<n> <rows> <cols>` followed by the rows.
void write_matrix(std::ostream& os, std::size_t n, const IntegerMatrix& m);

json signature_to_json(const HomologySignature& sig);
json smith_to_json(const SmithForm& f);
json report_to_json(const ValidationReport& r);
json verdict_to_json(const Verdict& v);

/// Exploration limits from "states=N,tokens=N" (either key optional).
ExplorationLimits parse_limits(const std::string& text, ExplorationLimits base = {});

}  // namespace concur::io

#endif  // CONCUR_IO_HPP
