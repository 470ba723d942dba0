#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "xvpa/datatypes.hpp"
#include "xvpa/errors.hpp"
#include "xvpa/events.hpp"
#include "xvpa/learner.hpp"
#include "xvpa/model_io.hpp"

using namespace xvpa;

namespace {

constexpr int kExitClean = 0;
constexpr int kExitAnomalies = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitUsage = 3;

/* Unreadable paths, unwritable outputs, broken stdin framing. */
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string id;
    std::string text;
};

std::string read_stream(std::istream& in) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/* Line framing escapes: "\n" embeds a newline, "\\" a backslash; anything
   else passes through verbatim. */
std::string unescape_line(std::string_view line) {
    std::string out;
    out.reserve(line.size());
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '\\' && i + 1 < line.size()) {
            char c = line[i + 1];
            if (c == 'n') {
                out.push_back('\n');
                ++i;
                continue;
            }
            if (c == '\\') {
                out.push_back('\\');
                ++i;
                continue;
            }
        }
        out.push_back(line[i]);
    }
    return out;
}

std::vector<Source> read_stdin_sources(const std::string& framing) {
    std::string all = read_stream(std::cin);
    std::vector<Source> out;
    std::size_t n = 0;
    if (framing == "lines") {
        std::size_t start = 0;
        while (start < all.size()) {
            std::size_t nl = all.find('\n', start);
            std::size_t end = nl == std::string::npos ? all.size() : nl;
            ++n;
            out.push_back({"stdin:" + std::to_string(n),
                           unescape_line(std::string_view(all).substr(start, end - start))});
            start = end + 1;
        }
        return out;
    }
    /* Length-prefixed: decimal byte count, newline, payload, optional newline. */
    std::size_t at = 0;
    while (at < all.size()) {
        std::size_t nl = all.find('\n', at);
        if (nl == std::string::npos)
            throw InputError("stdin record at byte " + std::to_string(at) +
                             ": missing newline after length");
        std::string digits = all.substr(at, nl - at);
        if (digits.empty() || digits.size() > 18 ||
            digits.find_first_not_of("0123456789") != std::string::npos)
            throw InputError("stdin record at byte " + std::to_string(at) + ": bad length '" +
                             digits + "'");
        std::size_t len = std::stoull(digits);
        at = nl + 1;
        if (at + len > all.size())
            throw InputError("stdin record truncated: expected " + std::to_string(len) +
                             " payload bytes");
        ++n;
        out.push_back({"stdin:" + std::to_string(n), all.substr(at, len)});
        at += len;
        if (at < all.size() && all[at] == '\n') ++at;
    }
    return out;
}

std::vector<Source> gather_sources(const std::vector<std::string>& inputs,
                                   const std::string& framing) {
    std::vector<Source> out;
    for (const std::string& path : inputs) {
        if (path == "-") {
            std::vector<Source> piped = read_stdin_sources(framing);
            out.insert(out.end(), piped.begin(), piped.end());
        } else {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw InputError("cannot read '" + path + "'");
            out.push_back({path, read_stream(in)});
        }
    }
    return out;
}

void write_file(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw InputError("cannot write '" + path + "'");
}

std::string expected_text(const std::set<ExpectedSymbol>& expected) {
    std::string out = "{";
    bool first = true;
    for (const ExpectedSymbol& s : expected) {
        if (!first) out += ", ";
        first = false;
        out += to_string(s);
    }
    return out + "}";
}

struct LearnOpts {
    std::vector<std::string> inputs;
    std::string model_path;
    std::string trace_prefix;
    std::string framing = "lines";
    std::size_t k = 1;
    std::size_t l = 2;
    StreamConfig stream;
};

int run_learn(const LearnOpts& o) {
    std::vector<Source> sources;
    Corpus corpus;
    Xvpa model;
    MergeParams params{o.k, o.l};
    try {
        sources = gather_sources(o.inputs, o.framing);
        for (const Source& s : sources) {
            try {
                corpus.push_back(tokenize(s.text, o.stream));
            } catch (const Error& ex) {
                std::cerr << "learn: " << s.id << ": " << ex.what() << "\n";
                return kExitBadInput;
            }
        }
        const DatatypeSystem& d = DatatypeSystem::instance();
        Vppa merged = build_merged(corpus, d, params);
        if (!o.trace_prefix.empty()) {
            write_file(o.trace_prefix + ".vppa.dot", vppa_dot(build_vppa(corpus, d)));
            write_file(o.trace_prefix + ".merged.dot", vppa_dot(merged));
        }
        model = minimize(to_xvpa(merged, d));

        std::string bytes = save(model, params);
        std::ostream& info = o.model_path == "-" ? std::cerr : std::cout;
        if (o.model_path == "-")
            std::cout << bytes;
        else
            write_file(o.model_path, bytes);
        std::size_t states = 0;
        for (const auto& [id, m] : model.modules) states += m.states.size();
        info << "documents: " << corpus.size() << "\n";
        info << "alphabet: " << model.sigma.size() << "\n";
        info << "modules: " << model.modules.size() << "\n";
        info << "states: " << states << "\n";
        info << "k: " << params.k << "\n";
        info << "l: " << params.l << "\n";
        if (o.model_path != "-") info << "model: " << o.model_path << "\n";
        return kExitClean;
    } catch (const std::exception& ex) {
        std::cerr << "learn: " << ex.what() << "\n";
        return kExitBadInput;
    }
}

struct ValidateOpts {
    std::vector<std::string> inputs;
    std::string model_path;
    std::string framing = "lines";
    std::string format = "text";
    bool strict = false;
    StreamConfig stream;
};

int run_validate(const ValidateOpts& o) {
    LoadedModel model;
    try {
        std::ifstream in(o.model_path, std::ios::binary);
        if (!in) throw InputError("cannot read '" + o.model_path + "'");
        model = load(read_stream(in));
    } catch (const InvalidModel& ex) {
        std::cerr << "validate: " << o.model_path << ": " << ex.what() << "\n";
        for (const std::string& v : ex.violations) std::cerr << "  " << v << "\n";
        return kExitBadInput;
    } catch (const std::exception& ex) {
        std::cerr << "validate: " << o.model_path << ": " << ex.what() << "\n";
        return kExitBadInput;
    }

    std::vector<Source> sources;
    try {
        sources = gather_sources(o.inputs, o.framing);
    } catch (const std::exception& ex) {
        std::cerr << "validate: " << ex.what() << "\n";
        return kExitBadInput;
    }

    const DatatypeSystem& d = DatatypeSystem::instance();
    DataMode mode = o.strict ? DataMode::FirstTypeStrict : DataMode::Existential;
    std::size_t accepted = 0;
    std::size_t by_category[3] = {0, 0, 0};
    for (const Source& s : sources) {
        DocumentVerdict v = validate_document(model.automaton, s.text, d, o.stream, mode);
        if (v.verdict.accepted)
            ++accepted;
        else
            ++by_category[static_cast<std::size_t>(v.verdict.anomalies.front().category)];
        if (o.format == "ndjson") {
            nlohmann::json rec;
            rec["source"] = s.id;
            rec["accepted"] = v.verdict.accepted;
            rec["events"] = v.events;
            rec["peak_depth"] = v.peak_stack;
            rec["anomalies"] = nlohmann::json::array();
            for (const Anomaly& an : v.verdict.anomalies) {
                nlohmann::json ja;
                ja["position"] = an.position;
                ja["category"] = std::string(category_name(an.category));
                ja["observed"] = an.observed;
                ja["expected"] = nlohmann::json::array();
                for (const ExpectedSymbol& e : an.expected)
                    ja["expected"].push_back(to_string(e));
                rec["anomalies"].push_back(ja);
            }
            std::cout << rec.dump() << "\n";
        } else {
            if (v.verdict.accepted) {
                std::cout << s.id << ": ok (events=" << v.events << ")\n";
            } else {
                const Anomaly& an = v.verdict.anomalies.front();
                std::cout << s.id << ": " << category_name(an.category) << " @"
                          << an.position << ": observed " << an.observed << "; expected "
                          << expected_text(an.expected) << "\n";
            }
        }
    }
    std::size_t total = sources.size();
    if (o.format == "ndjson") {
        nlohmann::json agg;
        agg["aggregate"] = {{"total", total},
                            {"accepted", accepted},
                            {"structural", by_category[0]},
                            {"datatype", by_category[1]},
                            {"malformed", by_category[2]}};
        std::cout << agg.dump() << "\n";
    } else {
        std::cout << "total=" << total << " accepted=" << accepted
                  << " structural=" << by_category[0] << " datatype=" << by_category[1]
                  << " malformed=" << by_category[2] << "\n";
    }
    if (by_category[2] > 0) return kExitBadInput;
    if (accepted < total) return kExitAnomalies;
    return kExitClean;
}

struct InspectOpts {
    std::string model_path;
    bool dot = false;
};

int run_inspect(const InspectOpts& o) {
    LoadedModel model;
    try {
        std::ifstream in(o.model_path, std::ios::binary);
        if (!in) throw InputError("cannot read '" + o.model_path + "'");
        model = load(read_stream(in));
    } catch (const std::exception& ex) {
        std::cerr << "inspect: " << o.model_path << ": " << ex.what() << "\n";
        return kExitBadInput;
    }
    const Xvpa& a = model.automaton;
    if (o.dot) {
        std::cout << export_dot(a);
        return kExitClean;
    }
    std::size_t states = 0, calls = 0, returns = 0, internals = 0;
    for (const auto& [id, m] : a.modules) {
        states += m.states.size();
        calls += m.calls.size();
        returns += m.returns.size();
        internals += m.internals.size();
    }
    std::cout << "modules: " << a.modules.size() << "\n";
    std::cout << "states: " << states << "\n";
    std::cout << "calls: " << calls << "\n";
    std::cout << "returns: " << returns << "\n";
    std::cout << "internals: " << internals << "\n";
    std::cout << "finals: " << a.finals.size() << "\n";
    std::cout << "m0: " << to_string(a.m0) << "\n";
    std::cout << "k: " << model.params.k << "\n";
    std::cout << "l: " << model.params.l << "\n";
    std::cout << "sigma:";
    for (const ElementName& c : a.sigma) std::cout << " " << c;
    std::cout << "\n";
    std::cout << "mu:\n";
    for (const auto& [id, tag] : a.mu)
        std::cout << "  " << to_string(id) << " -> " << tag << "\n";
    return kExitClean;
}

int run_datatype(const std::string& value) {
    const DatatypeSystem& d = DatatypeSystem::instance();
    DatatypeSet minimal = d.types(value);
    DatatypeSet closure = d.cl_inverse(minimal);
    std::cout << "value: " << value << "\n";
    std::cout << "types:";
    for (Datatype t : d.canonical_order())
        if (minimal.contains(t)) std::cout << " " << datatype_name(t);
    std::cout << "\n";
    std::cout << "first: " << datatype_name(d.first_type(value)) << "\n";
    std::cout << "closure:";
    for (Datatype t : d.canonical_order())
        if (closure.contains(t)) std::cout << " " << datatype_name(t);
    std::cout << "\n";
    return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Module-typed visibly pushdown automata: learn document models "
                 "from example corpora and validate documents against them."};
    app.require_subcommand(1);

    LearnOpts learn;
    CLI::App* cmd_learn = app.add_subcommand(
        "learn", "Learn a model from well-formed documents");
    cmd_learn->add_option("inputs", learn.inputs, "Document files, or - for stdin records")
        ->required();
    cmd_learn->add_option("--model", learn.model_path, "Output model path, or - for stdout")
        ->required();
    cmd_learn->add_option("--k", learn.k, "Sibling-suffix length")
        ->check(CLI::PositiveNumber);
    cmd_learn->add_option("--l", learn.l, "Ancestor-suffix length")
        ->check(CLI::PositiveNumber);
    cmd_learn->add_option("--max-depth", learn.stream.max_depth, "Element nesting limit")
        ->check(CLI::PositiveNumber);
    cmd_learn->add_flag_function(
        "--keep-whitespace",
        [&](std::int64_t) { learn.stream.keep_whitespace_text = true; },
        "Keep whitespace-only text nodes");
    cmd_learn->add_option("--trace", learn.trace_prefix,
                          "Write PREFIX.vppa.dot and PREFIX.merged.dot intermediates");
    cmd_learn->add_option("--stdin-framing", learn.framing, "Record framing for stdin")
        ->check(CLI::IsMember({"lines", "lp"}));

    ValidateOpts validate;
    CLI::App* cmd_validate = app.add_subcommand(
        "validate", "Validate documents against a learned model");
    cmd_validate->add_option("inputs", validate.inputs,
                             "Document files, or - for stdin records")
        ->required();
    cmd_validate->add_option("--model", validate.model_path, "Model path")->required();
    cmd_validate->add_flag("--strict-first-type", validate.strict,
                           "Type data by first matching datatype only");
    cmd_validate->add_option("--max-depth", validate.stream.max_depth,
                             "Element nesting limit")
        ->check(CLI::PositiveNumber);
    cmd_validate->add_flag_function(
        "--keep-whitespace",
        [&](std::int64_t) { validate.stream.keep_whitespace_text = true; },
        "Keep whitespace-only text nodes");
    cmd_validate->add_option("--format", validate.format, "Report format")
        ->check(CLI::IsMember({"text", "ndjson"}));
    cmd_validate->add_option("--stdin-framing", validate.framing,
                             "Record framing for stdin")
        ->check(CLI::IsMember({"lines", "lp"}));

    InspectOpts inspect;
    CLI::App* cmd_inspect = app.add_subcommand("inspect", "Describe a model file");
    cmd_inspect->add_option("--model", inspect.model_path, "Model path")->required();
    cmd_inspect->add_flag("--dot", inspect.dot, "Emit Graphviz instead of statistics");

    std::string datatype_value;
    CLI::App* cmd_datatype = app.add_subcommand(
        "datatype", "Show minimal types and closures of a text value");
    cmd_datatype->add_option("value", datatype_value, "Text value to type")
        ->required()
        ->option_text("TEXT");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (cmd_learn->parsed()) return run_learn(learn);
    if (cmd_validate->parsed()) return run_validate(validate);
    if (cmd_inspect->parsed()) return run_inspect(inspect);
    return run_datatype(datatype_value);
}
