#include "xvpa/model_io.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xvpa/datatypes.hpp"
#include "xvpa/errors.hpp"

namespace xvpa {

using nlohmann::json;

namespace {

constexpr int kFormatVersion = 1;

json state_ref(const ModuleState& s) { return json::array({s.owner, s.lsib}); }

/* Close tag rendered with a combining macron over its final character. */
std::string barred(const ElementName& tag) { return tag + "\xcc\x84"; }

const json& field(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) throw ParseError(std::string("model file: missing key '") + key + "'");
    return *it;
}

void check_keys(const json& obj, std::initializer_list<const char*> keys,
                const char* what) {
    if (!obj.is_object())
        throw ParseError(std::string("model file: ") + what + " must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::none_of(keys.begin(), keys.end(),
                         [&](const char* k) { return it.key() == k; }))
            throw ParseError(std::string("model file: unknown key '") + it.key() + "' in " +
                             what);
}

std::string as_name(const json& j, const char* what) {
    if (!j.is_string())
        throw ParseError(std::string("model file: ") + what + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> as_name_list(const json& j, const char* what) {
    if (!j.is_array())
        throw ParseError(std::string("model file: ") + what + " must be an array");
    std::vector<std::string> out;
    for (const json& e : j) out.push_back(as_name(e, what));
    return out;
}

std::size_t as_param(const json& j, const char* what) {
    if (!j.is_number_unsigned())
        throw ParseError(std::string("model file: ") + what +
                         " must be a non-negative integer");
    std::size_t v = j.get<std::size_t>();
    if (v == 0)
        throw ParseError(std::string("model file: ") + what + " must be at least 1");
    return v;
}

ModuleState as_state(const json& j, const TypeId& owner, const char* what) {
    return ModuleState{owner, as_name_list(j, what)};
}

ModuleState as_state_ref(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw ParseError(std::string("model file: ") + what +
                         " must be a [module, state] pair");
    return ModuleState{as_name_list(j[0], what), as_name_list(j[1], what)};
}

}  // namespace

std::string save(const Xvpa& a, MergeParams params) {
    std::vector<std::string> violations = structural_violations(a);
    if (!violations.empty()) throw InvalidModel(std::move(violations));

    json j;
    j["format_version"] = kFormatVersion;
    j["k"] = params.k;
    j["l"] = params.l;
    j["datatypes_version"] = std::string(DatatypeSystem::version);
    j["sigma"] = a.sigma;
    j["m0"] = a.m0;
    j["finals"] = json::array();
    for (const ModuleState& s : a.finals) j["finals"].push_back(state_ref(s));

    j["modules"] = json::array();
    for (const auto& [id, m] : a.modules) {
        json jm;
        jm["id"] = id;
        jm["tag"] = a.mu.at(id);
        jm["entry"] = m.entry.lsib;
        jm["states"] = json::array();
        for (const ModuleState& s : m.states) jm["states"].push_back(s.lsib);
        jm["exits"] = json::array();
        for (const ModuleState& s : m.exits) jm["exits"].push_back(s.lsib);
        jm["calls"] = json::array();
        for (const CallEdge& c : m.calls)
            jm["calls"].push_back(
                json{{"from", c.from.lsib}, {"tag", c.tag}, {"to", c.to_module}});
        jm["returns"] = json::array();
        for (const ReturnEdge& r : m.returns)
            jm["returns"].push_back(json{{"from", r.from.lsib},
                                         {"stack", state_ref(r.stack)},
                                         {"tag", r.tag},
                                         {"to", state_ref(r.to)}});
        /* File order is lexicographic in the rendered fields, so internal
           edges sort by datatype name rather than enum rank. */
        std::vector<std::tuple<std::vector<std::string>, std::string_view,
                               std::vector<std::string>>>
            ints;
        for (const InternalEdge& e : m.internals)
            ints.emplace_back(e.from.lsib, datatype_name(e.dt), e.to.lsib);
        std::sort(ints.begin(), ints.end());
        jm["internals"] = json::array();
        for (const auto& [from, name, to] : ints)
            jm["internals"].push_back(
                json{{"from", from}, {"type", std::string(name)}, {"to", to}});
        j["modules"].push_back(std::move(jm));
    }
    return j.dump(2) + "\n";
}

LoadedModel load(std::string_view bytes) {
    json j;
    try {
        j = json::parse(bytes);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("model file: ") + ex.what());
    }
    check_keys(j, {"format_version", "k", "l", "sigma", "datatypes_version", "m0",
                   "modules", "finals"},
               "top level");

    const json& ver = field(j, "format_version");
    if (!ver.is_number_integer())
        throw ParseError("model file: format_version must be an integer");
    if (ver.get<long long>() != kFormatVersion)
        throw VersionMismatch("unsupported model format_version " + ver.dump());
    std::string dts_ver = as_name(field(j, "datatypes_version"), "datatypes_version");
    if (dts_ver != DatatypeSystem::version)
        throw VersionMismatch("model built against datatype system '" + dts_ver +
                              "', this build provides '" +
                              std::string(DatatypeSystem::version) + "'");

    LoadedModel out;
    out.params.k = as_param(field(j, "k"), "k");
    out.params.l = as_param(field(j, "l"), "l");
    Xvpa& a = out.automaton;
    for (const std::string& name : as_name_list(field(j, "sigma"), "sigma"))
        a.sigma.insert(name);
    a.m0 = as_name_list(field(j, "m0"), "m0");
    for (const json& f : field(j, "finals"))
        a.finals.insert(as_state_ref(f, "final state"));

    const json& mods = field(j, "modules");
    if (!mods.is_array()) throw ParseError("model file: modules must be an array");
    for (const json& jm : mods) {
        check_keys(jm, {"id", "tag", "entry", "states", "exits", "calls", "returns",
                        "internals"},
                   "module");
        TypeId id = as_name_list(field(jm, "id"), "module id");
        Module m;
        m.entry = as_state(field(jm, "entry"), id, "entry");
        for (const json& s : field(jm, "states")) m.states.insert(as_state(s, id, "state"));
        for (const json& s : field(jm, "exits")) m.exits.insert(as_state(s, id, "exit"));
        for (const json& jc : field(jm, "calls")) {
            check_keys(jc, {"from", "tag", "to"}, "call");
            m.calls.insert(CallEdge{as_state(field(jc, "from"), id, "call source"),
                                    as_name(field(jc, "tag"), "call tag"),
                                    as_name_list(field(jc, "to"), "call target")});
        }
        for (const json& jr : field(jm, "returns")) {
            check_keys(jr, {"from", "stack", "tag", "to"}, "return");
            m.returns.insert(ReturnEdge{as_state(field(jr, "from"), id, "return source"),
                                        as_state_ref(field(jr, "stack"), "return stack"),
                                        as_name(field(jr, "tag"), "return tag"),
                                        as_state_ref(field(jr, "to"), "return target")});
        }
        for (const json& je : field(jm, "internals")) {
            check_keys(je, {"from", "type", "to"}, "internal");
            std::string name = as_name(field(je, "type"), "internal type");
            std::optional<Datatype> dt = datatype_from_name(name);
            if (!dt) throw ParseError("model file: unknown datatype name '" + name + "'");
            m.internals.insert(InternalEdge{as_state(field(je, "from"), id, "internal source"),
                                            *dt,
                                            as_state(field(je, "to"), id, "internal target")});
        }
        if (!a.modules.emplace(id, std::move(m)).second)
            throw ParseError("model file: duplicate module id '" + to_string(id) + "'");
        a.mu.emplace(id, as_name(field(jm, "tag"), "module tag"));
    }

    std::vector<std::string> violations = structural_violations(a);
    if (!violations.empty()) throw InvalidModel(std::move(violations));
    return out;
}

std::string export_dot(const Xvpa& a) {
    std::ostringstream out;
    out << "digraph xvpa {\n  rankdir=LR;\n  node [shape=circle];\n";
    std::map<ModuleState, std::string> id_of;
    std::size_t next = 0;
    std::size_t cluster = 0;
    for (const auto& [mid, m] : a.modules) {
        out << "  subgraph cluster_" << cluster++ << " {\n";
        out << "    label=\"" << to_string(mid) << "\";\n";
        for (const ModuleState& s : m.states) {
            std::string id = "n" + std::to_string(next++);
            id_of.emplace(s, id);
            out << "    " << id << " [label=\"" << to_string(s) << "\"";
            if (m.exits.count(s)) out << ", shape=doublecircle";
            if (s == m.entry) out << ", style=bold";
            out << "];\n";
        }
        out << "  }\n";
    }
    out << "  q0 [label=\"q0\", style=bold];\n";
    out << "  qf [label=\"qf\", shape=doublecircle];\n";

    const ElementName& root = a.mu.at(a.m0);
    out << "  q0 -> " << id_of.at(a.modules.at(a.m0).entry) << " [label=\"" << root
        << "/q0\"];\n";
    for (const auto& [mid, m] : a.modules) {
        for (const CallEdge& c : m.calls)
            out << "  " << id_of.at(c.from) << " -> "
                << id_of.at(a.modules.at(c.to_module).entry) << " [label=\"" << c.tag << "/"
                << to_string(c.from) << "\"];\n";
        for (const InternalEdge& e : m.internals)
            out << "  " << id_of.at(e.from) << " -> " << id_of.at(e.to) << " [label=\""
                << datatype_name(e.dt) << "\"];\n";
        for (const ReturnEdge& r : m.returns)
            out << "  " << id_of.at(r.from) << " -> " << id_of.at(r.to) << " [label=\""
                << barred(r.tag) << "/" << to_string(r.stack) << "\"];\n";
    }
    for (const ModuleState& f : a.finals)
        out << "  " << id_of.at(f) << " -> qf [label=\"" << barred(root) << "/q0\"];\n";
    out << "}\n";
    return out.str();
}

std::string vppa_dot(const Vppa& v) {
    std::ostringstream out;
    out << "digraph vppa {\n  rankdir=LR;\n  node [shape=circle];\n";
    std::map<VppaState, std::string> id_of;
    std::size_t next = 0;
    for (const VppaState& s : v.states) {
        std::string id = "n" + std::to_string(next++);
        id_of.emplace(s, id);
        out << "  " << id << " [label=\"" << to_string(s) << "\"";
        if (v.finals.count(s)) out << ", shape=doublecircle";
        if (s.anc.empty() && s.lsib.empty()) out << ", style=bold";
        out << "];\n";
    }
    for (const VppaCall& c : v.calls)
        out << "  " << id_of.at(c.from) << " -> " << id_of.at(c.to) << " [label=\"" << c.tag
            << "/" << to_string(c.from) << "\"];\n";
    for (const auto& [key, types] : v.type_dict) {
        out << "  " << id_of.at(key.first) << " -> " << id_of.at(key.second) << " [label=\"";
        bool first = true;
        for (Datatype d : types) {
            if (!first) out << ",";
            first = false;
            out << datatype_name(d);
        }
        out << "\"];\n";
    }
    for (const VppaReturn& r : v.returns)
        out << "  " << id_of.at(r.from) << " -> " << id_of.at(r.to) << " [label=\""
            << barred(r.tag) << "/" << to_string(r.stack) << "\"];\n";
    out << "}\n";
    return out.str();
}

}  // namespace xvpa
