#pragma once

// Typed-module pushdown model: per-tag modules with call/return/internal
// edges, a streaming validator over typed events, structural integrity
// checks, and per-module DFA extraction used by module minimization.

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xvpa/datatypes.hpp"
#include "xvpa/events.hpp"

namespace xvpa {

// Module identity: a suffix of the ancestor tag string. Nonempty for every
// real module; the empty id is reserved for the start/final wrapper.
using TypeId = std::vector<ElementName>;

// Placeholder sibling symbol standing for one text datum.
inline constexpr std::string_view kContentMark = "$";

// State inside a module: the owning module plus a suffix of the left-sibling
// string (element names and content marks). Entry states have empty lsib.
struct ModuleState {
    TypeId owner;
    std::vector<std::string> lsib;

    friend auto operator<=>(const ModuleState&, const ModuleState&) = default;
};

struct CallEdge {
    ModuleState from;
    ElementName tag;
    TypeId to_module;  // the call pushes `from` and enters the target entry

    friend auto operator<=>(const CallEdge&, const CallEdge&) = default;
};

struct ReturnEdge {
    ModuleState from;   // an exit of the owning module
    ModuleState stack;  // popped symbol: the state that made the call
    ElementName tag;
    ModuleState to;

    friend auto operator<=>(const ReturnEdge&, const ReturnEdge&) = default;
};

struct InternalEdge {
    ModuleState from;
    Datatype dt;
    ModuleState to;

    friend auto operator<=>(const InternalEdge&, const InternalEdge&) = default;
};

// One module: states sharing an ancestor-suffix identity, its single entry,
// its exit set, and the edges originating in the module.
struct Module {
    std::set<ModuleState> states;
    ModuleState entry;
    std::set<ModuleState> exits;
    std::set<CallEdge> calls;
    std::set<ReturnEdge> returns;
    std::set<InternalEdge> internals;

    friend bool operator==(const Module&, const Module&) = default;
};

// The full model. finals == exits of m0; the start/final wrapper states and
// their two edges are implied and materialized by the validator.
struct Xvpa {
    std::set<ElementName> sigma;
    std::map<TypeId, Module> modules;
    std::map<TypeId, ElementName> mu;  // tag under which each module is called
    TypeId m0;
    std::set<ModuleState> finals;

    friend bool operator==(const Xvpa&, const Xvpa&) = default;
};

enum class AnomalyCategory { Structural, Datatype, Malformed };

std::string_view category_name(AnomalyCategory c);

// One admissible next symbol at a failing configuration: an open/close tag or
// a datatype name for content.
struct ExpectedSymbol {
    TypedEventKind kind = TypedEventKind::Open;
    std::string name;

    friend auto operator<=>(const ExpectedSymbol&, const ExpectedSymbol&) = default;
};

std::string to_string(const ExpectedSymbol& s);

struct Anomaly {
    std::size_t position = 0;  // 1-based event ordinal
    AnomalyCategory category = AnomalyCategory::Structural;
    std::string observed;
    std::set<ExpectedSymbol> expected;
};

// accepted iff anomalies is empty; validation stops at the first anomaly.
struct Verdict {
    bool accepted = false;
    std::vector<Anomaly> anomalies;
};

// Existential accepts a datum if any of its minimal datatypes has an internal
// edge; FirstTypeStrict tries only the canonically least minimal datatype.
enum class DataMode { Existential, FirstTypeStrict };

// Live configuration of one validation run. The bottom stack marker (the
// wrapper start state) is implicit, so unmatched-open depth is stack size
// plus one while inside a module.
struct RunState {
    enum class Phase { Start, Inside, Done };
    Phase phase = Phase::Start;
    ModuleState current;  // meaningful only while phase == Inside
    std::vector<ModuleState> stack;
    std::size_t position = 0;  // events consumed
};

// Streaming validator: feed events one at a time, then finish. A run stops
// consuming at the first anomaly. Confine each run to one thread; any number
// of runs may share one immutable Xvpa.
class ValidationRun {
public:
    explicit ValidationRun(const Xvpa& a, DataMode mode = DataMode::Existential);

    // Consumes one event; returns false once the verdict is decided.
    bool feed(const TypedEvent& ev);
    // Declares end of input and yields the verdict.
    Verdict finish();

    bool alive() const { return !decided_; }
    const RunState& state() const { return run_; }
    std::size_t peak_stack() const { return peak_stack_; }

private:
    void fail(AnomalyCategory cat, std::string observed);
    std::set<ExpectedSymbol> expected_here() const;
    void step_open(const TypedEvent& ev);
    void step_data(const TypedEvent& ev);
    void step_close(const TypedEvent& ev);

    const Xvpa* a_;
    DataMode mode_;
    RunState run_;
    Verdict verdict_;
    bool decided_ = false;
    std::size_t peak_stack_ = 0;
};

Verdict validate(const Xvpa& a, std::span<const TypedEvent> events,
                 DataMode mode = DataMode::Existential);

// Verdict plus the resource high-water marks of one whole-document run.
struct DocumentVerdict {
    Verdict verdict;
    std::size_t events = 0;
    std::size_t peak_stack = 0;
    std::size_t peak_text_bytes = 0;
};

// Tokenizes, types and validates a document in one streaming pass; document
// syntax errors become a malformed anomaly instead of an exception.
DocumentVerdict validate_document(const Xvpa& a, std::string_view document,
                                  const DatatypeSystem& dts, StreamConfig config = {},
                                  DataMode mode = DataMode::Existential);

// Empty iff every return of a module is shared by all exits of that module.
std::vector<std::string> check_single_exit(const Xvpa& a);

// True iff call and internal edges are deterministic per (state, symbol).
// Returns are deterministic by keying; duplicates cannot be represented.
bool is_deterministic(const Xvpa& a);

// Referential integrity plus the two checks above; empty iff sound.
std::vector<std::string> structural_violations(const Xvpa& a);

// DFA alphabet symbol: a called module (standing for its whole sub-language)
// or a datatype.
struct DfaSymbol {
    bool is_module = false;
    TypeId module;
    Datatype dt = Datatype::String;

    static DfaSymbol call(TypeId m) { return {true, std::move(m), Datatype::String}; }
    static DfaSymbol data(Datatype d) { return {false, {}, d}; }

    friend auto operator<=>(const DfaSymbol&, const DfaSymbol&) = default;
};

// Partial DFA: missing edges mean an implicit dead state.
struct Dfa {
    std::size_t start = 0;
    std::vector<bool> accepting;  // indexed by state
    std::map<std::pair<std::size_t, DfaSymbol>, std::size_t> edges;
};

// Content-model DFA of one module: states are the module states, start is the
// entry, accepting are the exits; calls collapse to one edge via the callee's
// unique return target. Throws SingleExitRequired if the property fails.
Dfa module_dfa(const Xvpa& a, const TypeId& m);

bool dfa_equivalent(const Dfa& d1, const Dfa& d2);

// Display helpers shared by diagnostics and DOT export.
std::string to_string(const TypeId& m);
std::string to_string(const ModuleState& q);

}  // namespace xvpa
