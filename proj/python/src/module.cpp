#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "concur/bisim.hpp"
#include "concur/cli.hpp"
#include "concur/construct.hpp"
#include "concur/homology.hpp"
#include "concur/io.hpp"
#include "concur/smith.hpp"

namespace py = pybind11;
using namespace concur;

namespace {

// Reports cross the boundary as JSON, decoded by the json module.
py::object to_python(const io::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

py::object signature(const HomologySignature& sig)
{
    py::dict d;
    d["text"] = sig.to_string();
    d["degrees"] = to_python(io::signature_to_json(sig));
    return d;
}

ExplorationLimits limits(std::size_t max_states, std::uint64_t max_tokens)
{
    ExplorationLimits l;
    l.max_states = max_states;
    l.max_tokens = max_tokens;
    return l;
}

py::object homology_of_file(const std::string& path, std::optional<std::string> state, std::size_t max_states,
                            std::uint64_t max_tokens)
{
    auto doc = io::read_json_file(path);
    switch (io::detect_kind(doc)) {
    case io::DocumentKind::Scheme:
        if (state)
            throw InputError("--state applies to systems and nets only");
        return signature(homology(io::scheme_from_json(doc)));
    case io::DocumentKind::Net: {
        auto ns = async_of_net(io::net_from_json(doc), limits(max_states, max_tokens));
        return signature(homology_of_system(state ? residual(ns.system, StateId(*state)) : ns.system));
    }
    case io::DocumentKind::System: {
        auto a = io::system_from_json(doc);
        return signature(homology_of_system(state ? residual(a, StateId(*state)) : a));
    }
    }
    return py::none();
}

py::list smith(const std::vector<std::vector<py::int_>>& rows)
{
    std::vector<std::vector<BigInt>> m;
    for (const auto& r : rows) {
        auto& out = m.emplace_back();
        for (const auto& x : r)
            out.emplace_back(py::str(py::handle(x)).cast<std::string>());
    }
    std::size_t cols = m.empty() ? 0 : m.front().size();
    IntegerMatrix mat(m.size(), cols);
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i].size() != cols)
            throw InputError("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j)
            mat(i, j) = m[i][j];
    }
    py::list diag;
    for (const auto& d : smith_normal_form(mat).diagonal)
        diag.append(py::int_(py::str(d.str())));
    return diag;
}

py::object refute(const std::string& left, const std::string& right, std::optional<std::size_t> max_len)
{
    auto a = io::system_from_json(io::read_json_file(left));
    auto b = io::system_from_json(io::read_json_file(right));
    return to_python(io::verdict_to_json(refute_bisimilar(a, b, max_len)));
}

py::object certify(const std::string& left, const std::string& right, const std::string& span)
{
    auto a = std::make_shared<const LabelledAsyncSystem>(io::system_from_json(io::read_json_file(left)));
    auto b = std::make_shared<const LabelledAsyncSystem>(io::system_from_json(io::read_json_file(right)));
    return to_python(io::verdict_to_json(certify_bisimilar(io::span_from_json(io::read_json_file(span), a, b))));
}

py::object verify(const std::string& fixture, std::size_t max_states, std::uint64_t max_tokens)
{
    auto c = verify_construction(fixture_scheme(fixture), limits(max_states, max_tokens));
    py::dict d;
    d["verified"] = c.ok;
    d["net"] = signature(c.net);
    d["subdivision"] = signature(c.subdivision);
    d["scheme"] = signature(c.scheme);
    d["places"] = c.places;
    d["events"] = c.events;
    d["markings"] = c.markings;
    return d;
}

std::vector<std::uint64_t> fire_event(const std::string& net_path, const std::string& event,
                                      std::optional<std::vector<std::uint64_t>> marking)
{
    auto n = io::net_from_json(io::read_json_file(net_path)).net();
    Marking m = marking ? Marking{*marking} : n.initial_marking();
    return fire(n, m, n.event_index(EventId(event))).tokens;
}

py::tuple run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out;
    std::ostringstream err;
    int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Homology of asynchronous systems and Petri nets";

    // Later registrations are tried first, so the base class goes first.
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<LimitError>(m, "LimitError", PyExc_RuntimeError);
    py::register_exception<FiringError>(m, "FiringError", PyExc_ValueError);

    ExplorationLimits defaults;
    m.def("homology", &homology_of_file, py::arg("path"), py::arg("state") = py::none(),
          py::arg("max_states") = defaults.max_states, py::arg("max_tokens") = defaults.max_tokens,
          "Homology signature of a system, net or scheme document.");
    m.def("fixture_homology", [](const std::string& f) { return signature(homology(fixture_scheme(f))); },
          py::arg("fixture"));
    m.def("smith_diagonal", &smith, py::arg("rows"), "Smith normal form diagonal of an integer matrix.");
    m.def("refute", &refute, py::arg("left"), py::arg("right"), py::arg("max_len") = py::none());
    m.def("certify", &certify, py::arg("left"), py::arg("right"), py::arg("span"));
    m.def("verify_construction", &verify, py::arg("fixture"), py::arg("max_states") = defaults.max_states,
          py::arg("max_tokens") = defaults.max_tokens);
    m.def("fire", &fire_event, py::arg("net"), py::arg("event"), py::arg("marking") = py::none(),
          "Marking after firing `event`, from the initial marking by default.");
    m.def("run_cli", &run_cli, py::arg("args"), "Run the concur CLI in-process; returns (code, stdout, stderr).");
}
