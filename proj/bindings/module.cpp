#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <string_view>
#include <vector>

#include "xvpa/datatypes.hpp"
#include "xvpa/errors.hpp"
#include "xvpa/events.hpp"
#include "xvpa/learner.hpp"
#include "xvpa/model_io.hpp"

namespace py = pybind11;

namespace {

using namespace xvpa;

struct PyModel {
    Xvpa automaton;
    MergeParams params;
};

StreamConfig stream_config(std::size_t max_depth, bool keep_whitespace) {
    StreamConfig cfg;
    cfg.max_depth = max_depth;
    cfg.keep_whitespace_text = keep_whitespace;
    return cfg;
}

py::dict verdict_dict(const DocumentVerdict& v) {
    py::dict out;
    out["accepted"] = v.verdict.accepted;
    out["events"] = v.events;
    out["peak_depth"] = v.peak_stack;
    py::list anomalies;
    for (const Anomaly& a : v.verdict.anomalies) {
        py::dict ja;
        ja["position"] = a.position;
        ja["category"] = std::string(category_name(a.category));
        ja["observed"] = a.observed;
        py::list expected;
        for (const ExpectedSymbol& e : a.expected) expected.append(to_string(e));
        ja["expected"] = expected;
        anomalies.append(ja);
    }
    out["anomalies"] = anomalies;
    return out;
}

std::vector<std::string> canonical_names(DatatypeSet s) {
    std::vector<std::string> out;
    for (Datatype t : DatatypeSystem::instance().canonical_order())
        if (s.contains(t)) out.emplace_back(datatype_name(t));
    return out;
}

}  // namespace

PYBIND11_MODULE(_xvpa, m) {
    m.doc() = "Learn module-typed visibly pushdown document models from example "
              "corpora and validate documents against them.";

    py::register_exception<Error>(m, "XvpaError");

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("k", [](const PyModel& self) { return self.params.k; })
        .def_property_readonly("l", [](const PyModel& self) { return self.params.l; })
        .def_property_readonly(
            "module_count", [](const PyModel& self) { return self.automaton.modules.size(); })
        .def_property_readonly("state_count",
                               [](const PyModel& self) {
                                   std::size_t n = 0;
                                   for (const auto& [id, mod] : self.automaton.modules)
                                       n += mod.states.size();
                                   return n;
                               })
        .def_property_readonly("root",
                               [](const PyModel& self) { return to_string(self.automaton.m0); })
        .def_property_readonly("alphabet",
                               [](const PyModel& self) {
                                   return std::vector<std::string>(
                                       self.automaton.sigma.begin(),
                                       self.automaton.sigma.end());
                               })
        .def(
            "validate",
            [](const PyModel& self, std::string_view document, bool strict,
               std::size_t max_depth, bool keep_whitespace) {
                return verdict_dict(validate_document(
                    self.automaton, document, DatatypeSystem::instance(),
                    stream_config(max_depth, keep_whitespace),
                    strict ? DataMode::FirstTypeStrict : DataMode::Existential));
            },
            py::arg("document"), py::kw_only(), py::arg("strict") = false,
            py::arg("max_depth") = 1024, py::arg("keep_whitespace") = false,
            "Validate one document; returns a verdict dict with any anomaly.")
        .def("save", [](const PyModel& self) { return xvpa::save(self.automaton, self.params); },
             "Serialize to canonical JSON text.")
        .def("to_dot", [](const PyModel& self) { return export_dot(self.automaton); },
             "Render the module graph as Graphviz text.")
        .def(
            "__eq__",
            [](const PyModel& a, const PyModel& b) {
                return a.automaton == b.automaton && a.params.k == b.params.k &&
                       a.params.l == b.params.l;
            },
            py::is_operator());

    m.def(
        "infer",
        [](const std::vector<std::string>& documents, std::size_t k, std::size_t l,
           std::size_t max_depth, bool keep_whitespace) {
            StreamConfig cfg = stream_config(max_depth, keep_whitespace);
            Corpus corpus;
            corpus.reserve(documents.size());
            for (const std::string& doc : documents) corpus.push_back(tokenize(doc, cfg));
            MergeParams params{k, l};
            return PyModel{xvpa::infer(corpus, DatatypeSystem::instance(), params), params};
        },
        py::arg("documents"), py::kw_only(), py::arg("k") = 1, py::arg("l") = 2,
        py::arg("max_depth") = 1024, py::arg("keep_whitespace") = false,
        "Learn a model from well-formed example documents.");

    m.def(
        "load",
        [](std::string_view bytes) {
            LoadedModel lm = xvpa::load(bytes);
            return PyModel{std::move(lm.automaton), lm.params};
        },
        py::arg("bytes"), "Load a model from serialized JSON text.");

    m.def(
        "types",
        [](std::string_view text) {
            return canonical_names(DatatypeSystem::instance().types(text));
        },
        py::arg("text"), "Minimal datatypes whose lexical space contains the text.");
    m.def(
        "first_type",
        [](std::string_view text) {
            return std::string(datatype_name(DatatypeSystem::instance().first_type(text)));
        },
        py::arg("text"), "Canonically least minimal datatype of the text.");
    m.def(
        "type_closure",
        [](std::string_view text) {
            const DatatypeSystem& d = DatatypeSystem::instance();
            return canonical_names(d.cl_inverse(d.types(text)));
        },
        py::arg("text"), "Downward closure of the text's minimal datatypes.");
}
