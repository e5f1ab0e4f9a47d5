#include "concur/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include "concur/bisim.hpp"
#include "concur/construct.hpp"
#include "concur/homology.hpp"
#include "concur/io.hpp"

namespace concur::cli {

using io::json;

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

namespace {

struct Input {
    std::string path;
    std::string text;
};

Input load(const std::string& path)
{
    return {path, io::read_file(path)};
}

/// Machine-readable record of one command run.
class RunReport {
  public:
    explicit RunReport(std::string command)
        : command_(std::move(command)), start_(std::chrono::steady_clock::now())
    {
    }

    void input(const Input& in) { inputs_.push_back({{"path", in.path}, {"sha256", sha256_hex(in.text)}}); }
    void warn(std::string w) { warnings_.push_back(std::move(w)); }
    const std::vector<std::string>& warnings() const { return warnings_; }
    json& results() { return results_; }

    json to_json() const
    {
        auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_);
        json out;
        out["command"] = command_;
        out["inputs"] = inputs_;
        out["results"] = results_;
        out["warnings"] = warnings_;
        out["timing_ms"] = elapsed.count();
        return out;
    }

  private:
    std::string command_;
    std::chrono::steady_clock::time_point start_;
    json inputs_ = json::array();
    json results_ = json::object();
    std::vector<std::string> warnings_;
};

struct LimitOptions {
    std::string spec;
    std::size_t max_states = 0;
    std::uint64_t max_tokens = 0;

    ExplorationLimits resolve() const
    {
        ExplorationLimits limits;
        if (const char* env = std::getenv("CONCUR_HOMOLOGY_LIMITS"))
            limits = io::parse_limits(env, limits);
        if (!spec.empty())
            limits = io::parse_limits(spec, limits);
        if (max_states)
            limits.max_states = max_states;
        if (max_tokens)
            limits.max_tokens = max_tokens;
        return limits;
    }
};

void add_limit_options(CLI::App* cmd, LimitOptions& opts)
{
    cmd->add_option("--limits", opts.spec, "Exploration limits, e.g. states=100000,tokens=64");
    cmd->add_option("--max-states", opts.max_states, "Maximum number of reachable markings")->check(CLI::PositiveNumber);
    cmd->add_option("--max-tokens", opts.max_tokens, "Maximum tokens in any place")->check(CLI::PositiveNumber);
}

io::DocumentKind kind_of(const json& doc, const std::string& type)
{
    return type.empty() ? io::detect_kind(doc) : io::parse_kind(type);
}

// ---------------------------------------------------------------- validate

int cmd_validate(const std::string& path, const std::string& type, bool as_json, std::ostream& out)
{
    RunReport run("validate");
    Input in = load(path);
    run.input(in);
    json doc = io::parse_json(in.text, path);

    ValidationReport report;
    std::string kind_name;
    switch (kind_of(doc, type)) {
    case io::DocumentKind::System: {
        kind_name = "lts";
        io::SystemDocument sd = io::system_document_from_json(doc);
        report = validate_system(sd.description);
        if (report.ok()) {
            try {
                LabelledAsyncSystem(AsyncSystem(sd.description), sd.labels, sd.alphabet);
            } catch (const InputError& e) {
                report.add("labels", e.what());
            }
        }
        break;
    }
    case io::DocumentKind::Net: {
        kind_name = "net";
        io::net_from_json(doc);
        break;
    }
    case io::DocumentKind::Scheme:
        kind_name = "scheme";
        io::scheme_from_json(doc);
        break;
    }

    if (as_json) {
        run.results() = io::report_to_json(report);
        run.results()["type"] = kind_name;
        out << run.to_json().dump(2) << "\n";
    } else {
        out << path << " (" << kind_name << "): " << report;
    }
    return report.ok() ? kOk : kFailure;
}

// ---------------------------------------------------------------- homology

struct HomologyOptions {
    std::string path;
    std::string type;
    std::string state;
    bool dump_matrices = false;
    bool as_json = false;
    LimitOptions limits;
};

int cmd_homology(const HomologyOptions& opt, std::ostream& out)
{
    RunReport run("homology");
    Input in = load(opt.path);
    run.input(in);
    json doc = io::parse_json(in.text, opt.path);

    SimplicialScheme scheme;
    std::ostringstream head;
    head << "homology of " << opt.path;
    json details = json::object();

    auto from_system = [&](const LabelledAsyncSystem& sys) {
        if (opt.state.empty())
            return scheme_of_system(sys);
        head << " at state " << opt.state;
        return scheme_of_system(residual(sys, StateId(opt.state)));
    };

    switch (kind_of(doc, opt.type)) {
    case io::DocumentKind::System: {
        auto sys = io::system_from_json(doc);
        auto report = validate_system(sys.system());
        if (!report.ok()) {
            std::ostringstream os;
            os << report;
            throw InputError("system is not a valid asynchronous system: " + os.str());
        }
        scheme = from_system(sys);
        break;
    }
    case io::DocumentKind::Net: {
        auto net = io::net_from_json(doc);
        ExplorationLimits limits = opt.limits.resolve();
        NetSystem ns = async_of_net(net, limits);
        for (const auto& e : ns.dropped_events)
            run.warn("event '" + e.str() + "' is never enabled and was dropped");
        details["markings"] = ns.system.system().num_states();
        details["events"] = ns.system.system().num_events();
        details["limits"] = {{"states", limits.max_states}, {"tokens", limits.max_tokens}};
        head << "\nreachable markings: " << ns.system.system().num_states();
        scheme = from_system(ns.system);
        break;
    }
    case io::DocumentKind::Scheme:
        if (!opt.state.empty())
            throw InputError("--state applies to systems and nets, not to schemes");
        scheme = io::scheme_from_json(doc);
        break;
    }

    ChainComplex cx = chain_complex(scheme);
    HomologySignature sig = homology(cx);

    if (opt.as_json) {
        json res = details;
        if (!opt.state.empty())
            res["state"] = opt.state;
        res["scheme"] = io::scheme_to_json(scheme);
        res["homology"] = io::signature_to_json(sig);
        if (opt.dump_matrices) {
            json ms = json::array();
            for (std::size_t n = 1; n <= cx.boundaries.size(); ++n) {
                std::ostringstream os;
                io::write_matrix(os, n, cx.boundaries[n - 1]);
                ms.push_back({{"degree", n}, {"matrix", os.str()}, {"smith", io::smith_to_json(cx.smith[n - 1])}});
            }
            res["matrices"] = ms;
        }
        run.results() = res;
        out << run.to_json().dump(2) << "\n";
        return kOk;
    }

    out << head.str() << "\n";
    for (const auto& w : run.warnings())
        out << "warning: " << w << "\n";
    std::vector<std::string> vs;
    for (const auto& v : scheme.vertices())
        vs.push_back(v.str());
    out << "vertices: " << (vs.empty() ? "(none)" : join(vs, " ")) << "\n";
    out << "simplices by degree:";
    for (std::size_t c : cx.cells)
        out << " " << c;
    out << (cx.cells.empty() ? " (none)" : "") << "\n";
    if (opt.dump_matrices) {
        for (std::size_t n = 1; n <= cx.boundaries.size(); ++n) {
            out << "order d" << n << " columns:";
            for (const auto& s : ordered_simplices(scheme, n)) {
                std::vector<std::string> parts;
                for (const auto& l : s)
                    parts.push_back(l.str());
                out << " (" << join(parts, ",") << ")";
            }
            out << "\n";
            io::write_matrix(out, n, cx.boundaries[n - 1]);
            out << "smith d" << n << ":";
            for (const auto& d : cx.smith[n - 1].diagonal)
                out << " " << d;
            out << " (rank " << cx.smith[n - 1].rank << ")\n";
        }
    }
    out << sig.to_text();
    return kOk;
}

// ---------------------------------------------------------------- bisim

struct BisimOptions {
    std::string left;
    std::string right;
    bool refute = false;
    std::optional<std::size_t> max_len;
    std::string certify;
    bool as_json = false;
};

int cmd_bisim(const BisimOptions& opt, std::ostream& out)
{
    RunReport run("bisim");
    Input a = load(opt.left);
    Input b = load(opt.right);
    run.input(a);
    run.input(b);
    auto left = std::make_shared<const LabelledAsyncSystem>(io::system_from_json(io::parse_json(a.text, a.path)));
    auto right = std::make_shared<const LabelledAsyncSystem>(io::system_from_json(io::parse_json(b.text, b.path)));

    Verdict verdict;
    if (!opt.certify.empty()) {
        Input s = load(opt.certify);
        run.input(s);
        Span span = io::span_from_json(io::parse_json(s.text, s.path), left, right);
        verdict = certify_bisimilar(span);
    } else {
        verdict = refute_bisimilar(*left, *right, opt.max_len);
    }

    if (opt.as_json) {
        run.results() = io::verdict_to_json(verdict);
        out << run.to_json().dump(2) << "\n";
    } else {
        out << "verdict: " << to_string(verdict.kind) << "\n";
        if (verdict.kind == Verdict::Kind::NotBisimilar) {
            std::vector<std::string> w;
            for (const auto& e : verdict.witness)
                w.push_back(e.str());
            out << "witness: " << (w.empty() ? "ε" : join(w, " ")) << " (length " << verdict.length() << ", "
                << to_string(verdict.side) << " side)\n";
        }
        out << verdict.report;
    }
    switch (verdict.kind) {
    case Verdict::Kind::Certified:
        return kOk;
    case Verdict::Kind::NotBisimilar:
        return kNotBisimilar;
    case Verdict::Kind::Inconclusive:
        return kInconclusive;
    }
    return kFailure;
}

// ---------------------------------------------------------------- construct

struct ConstructOptions {
    std::string expr;
    std::string scheme_path;
    std::string output;
    bool verify = false;
    bool as_json = false;
    LimitOptions limits;
};

int cmd_construct(const ConstructOptions& opt, std::ostream& out, std::ostream& err)
{
    RunReport run("construct");
    SimplicialScheme scheme;
    if (!opt.scheme_path.empty()) {
        Input in = load(opt.scheme_path);
        run.input(in);
        scheme = io::scheme_from_json(io::parse_json(in.text, in.path));
    } else if (!opt.expr.empty()) {
        scheme = fixture_scheme(opt.expr);
        run.results()["fixture"] = opt.expr;
    } else {
        throw InputError("construct needs a fixture expression or --scheme");
    }

    LabelledPetriNet net = petri_from_scheme(scheme);
    json net_doc = io::net_to_json(net);
    std::optional<ConstructionCheck> check;
    if (opt.verify)
        check = verify_construction(scheme, opt.limits.resolve());

    if (!opt.output.empty()) {
        std::ofstream f(opt.output);
        if (!f)
            throw InputError("cannot write '" + opt.output + "'");
        f << net_doc.dump(2) << "\n";
    }

    if (opt.as_json) {
        if (opt.output.empty())
            run.results()["net"] = net_doc;
        else
            run.results()["output"] = opt.output;
        if (check) {
            run.results()["verification"] = {{"verified", check->ok},
                                             {"places", check->places},
                                             {"events", check->events},
                                             {"markings", check->markings},
                                             {"net", io::signature_to_json(check->net)},
                                             {"subdivision", io::signature_to_json(check->subdivision)},
                                             {"scheme", io::signature_to_json(check->scheme)}};
        }
        out << run.to_json().dump(2) << "\n";
    } else {
        if (opt.output.empty())
            out << net_doc.dump(2) << "\n";
        if (check)
            (opt.output.empty() ? err : out) << check->report;
    }
    return (!check || check->ok) ? kOk : kFailure;
}

// ---------------------------------------------------------------- snf

int cmd_snf(const std::string& path, bool as_json, std::ostream& out)
{
    RunReport run("snf");
    Input in = load(path);
    run.input(in);
    IntegerMatrix m = io::matrix_from_text(in.text);
    SmithForm f = smith_normal_form(m);
    if (as_json) {
        run.results() = io::smith_to_json(f);
        run.results()["rows"] = m.rows();
        run.results()["cols"] = m.cols();
        out << run.to_json().dump(2) << "\n";
        return kOk;
    }
    out << "matrix: " << m.rows() << " x " << m.cols() << "\n";
    out << "diagonal:";
    for (const auto& d : f.diagonal)
        out << " " << d;
    out << "\nrank: " << f.rank << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Homology of asynchronous systems and Petri nets", "concur"};
    app.require_subcommand(1);

    std::string validate_path;
    std::string validate_type;
    bool validate_json = false;
    auto* validate = app.add_subcommand("validate", "Check a system, net or scheme document");
    validate->add_option("path", validate_path, "Input document")->required();
    validate->add_option("--type", validate_type, "lts, net or scheme (detected when omitted)");
    validate->add_flag("--json", validate_json, "Emit a JSON report");

    HomologyOptions hopt;
    auto* hom = app.add_subcommand("homology", "Homology groups of a system, net or scheme");
    hom->add_option("path", hopt.path, "Input document")->required();
    hom->add_option("--type", hopt.type, "lts, net or scheme (detected when omitted)");
    hom->add_option("--state", hopt.state, "Compute for the residual system at this state");
    hom->add_flag("--dump-matrices", hopt.dump_matrices, "Print boundary matrices and Smith forms");
    hom->add_flag("--json", hopt.as_json, "Emit a JSON report");
    add_limit_options(hom, hopt.limits);

    BisimOptions bopt;
    std::size_t max_len = 0;
    auto* bis = app.add_subcommand("bisim", "Refute or certify bisimilarity of two labelled systems");
    bis->add_option("left", bopt.left, "First system")->required();
    bis->add_option("right", bopt.right, "Second system")->required();
    auto* refute_flag = bis->add_flag("--refute", bopt.refute, "Compare residual homology layer by layer");
    auto* max_len_opt = bis->add_option("--max-len", max_len, "Largest word length to compare");
    auto* certify_opt = bis->add_option("--certify", bopt.certify, "Span document to check");
    bis->add_flag("--json", bopt.as_json, "Emit a JSON report");
    refute_flag->excludes(certify_opt);
    max_len_opt->excludes(certify_opt);

    ConstructOptions copt;
    auto* con = app.add_subcommand("construct", "Build a Petri net realising a scheme's homology");
    con->add_option("fixture", copt.expr, "Fixture expression: sphere:n, rp2, wedge(...), union(...)");
    con->add_option("--scheme", copt.scheme_path, "Scheme document instead of a fixture");
    con->add_option("-o,--output", copt.output, "Write the net here instead of stdout");
    con->add_flag("--verify", copt.verify, "Compare homology of net, subdivision and scheme");
    con->add_flag("--json", copt.as_json, "Emit a JSON report");
    add_limit_options(con, copt.limits);

    std::string snf_path;
    bool snf_json = false;
    auto* snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
    snf->add_option("path", snf_path, "Matrix file")->required();
    snf->add_flag("--json", snf_json, "Emit a JSON report");

    std::vector<std::string> argv_store{"concur"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFailure;
    }

    try {
        if (*validate)
            return cmd_validate(validate_path, validate_type, validate_json, out);
        if (*hom)
            return cmd_homology(hopt, out);
        if (*bis) {
            if (!bopt.refute && bopt.certify.empty())
                throw InputError("bisim needs --refute or --certify <span>");
            if (max_len_opt->count())
                bopt.max_len = max_len;
            return cmd_bisim(bopt, out);
        }
        if (*con) {
            if (!copt.expr.empty() && !copt.scheme_path.empty())
                throw InputError("give either a fixture expression or --scheme, not both");
            return cmd_construct(copt, out, err);
        }
        if (*snf)
            return cmd_snf(snf_path, snf_json, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
    return kFailure;
}

}  // namespace concur::cli
