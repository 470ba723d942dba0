#include "xvpa/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "xvpa/errors.hpp"

namespace xvpa {

namespace {

/* First call edge from q on tag c, if any. */
const CallEdge* find_call(const Module& m, const ModuleState& q, const ElementName& c) {
    auto it = m.calls.lower_bound(CallEdge{q, c, {}});
    if (it != m.calls.end() && it->from == q && it->tag == c) return &*it;
    return nullptr;
}

/* Internal edge from q on datatype d, if any. */
const InternalEdge* find_internal(const Module& m, const ModuleState& q, Datatype d) {
    auto it = m.internals.lower_bound(InternalEdge{q, d, {}});
    if (it != m.internals.end() && it->from == q && it->dt == d) return &*it;
    return nullptr;
}

/* Return edge for (exit q, stack symbol p, tag c), if any. */
const ReturnEdge* find_return(const Module& m, const ModuleState& q, const ModuleState& p,
                              const ElementName& c) {
    auto it = m.returns.lower_bound(ReturnEdge{q, p, c, {}});
    if (it != m.returns.end() && it->from == q && it->stack == p && it->tag == c) return &*it;
    return nullptr;
}

std::string join(const std::vector<std::string>& parts) {
    if (parts.empty()) return "\xce\xb5";  // epsilon
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out += '.';
        out += p;
    }
    return out;
}

}  // namespace

std::string_view category_name(AnomalyCategory c) {
    switch (c) {
    case AnomalyCategory::Structural: return "structural";
    case AnomalyCategory::Datatype: return "datatype";
    default: return "malformed";
    }
}

std::string to_string(const TypeId& m) { return join(m); }

std::string to_string(const ModuleState& q) {
    return "(" + join(q.owner) + ", " + join(q.lsib) + ")";
}

std::string to_string(const ExpectedSymbol& s) {
    switch (s.kind) {
    case TypedEventKind::Open: return "<" + s.name + ">";
    case TypedEventKind::Close: return "</" + s.name + ">";
    default: return "data{" + s.name + "}";
    }
}

ValidationRun::ValidationRun(const Xvpa& a, DataMode mode) : a_(&a), mode_(mode) {}

void ValidationRun::fail(AnomalyCategory cat, std::string observed) {
    verdict_.anomalies.push_back({run_.position, cat, std::move(observed), expected_here()});
    decided_ = true;
}

std::set<ExpectedSymbol> ValidationRun::expected_here() const {
    std::set<ExpectedSymbol> out;
    if (run_.phase == RunState::Phase::Start) {
        out.insert({TypedEventKind::Open, a_->mu.at(a_->m0)});
        return out;
    }
    if (run_.phase == RunState::Phase::Done) return out;
    const Module& m = a_->modules.at(run_.current.owner);
    for (auto it = m.calls.lower_bound(CallEdge{run_.current, "", {}});
         it != m.calls.end() && it->from == run_.current; ++it)
        out.insert({TypedEventKind::Open, it->tag});
    for (auto it = m.internals.lower_bound(InternalEdge{run_.current, Datatype::String, {}});
         it != m.internals.end() && it->from == run_.current; ++it)
        out.insert({TypedEventKind::Data, std::string(datatype_name(it->dt))});
    const ElementName& close_tag = a_->mu.at(run_.current.owner);
    if (run_.stack.empty()) {
        if (a_->finals.count(run_.current)) out.insert({TypedEventKind::Close, close_tag});
    } else if (find_return(m, run_.current, run_.stack.back(), close_tag)) {
        out.insert({TypedEventKind::Close, close_tag});
    }
    return out;
}

void ValidationRun::step_open(const TypedEvent& ev) {
    if (run_.phase == RunState::Phase::Done) {
        fail(AnomalyCategory::Malformed, to_string(ev));
        return;
    }
    if (run_.phase == RunState::Phase::Start) {
        if (ev.name != a_->mu.at(a_->m0)) {
            fail(AnomalyCategory::Structural, to_string(ev));
            return;
        }
        run_.phase = RunState::Phase::Inside;
        run_.current = a_->modules.at(a_->m0).entry;
        return;
    }
    const Module& m = a_->modules.at(run_.current.owner);
    const CallEdge* call = find_call(m, run_.current, ev.name);
    if (!call) {
        fail(AnomalyCategory::Structural, to_string(ev));
        return;
    }
    run_.stack.push_back(run_.current);
    run_.current = a_->modules.at(call->to_module).entry;
}

void ValidationRun::step_data(const TypedEvent& ev) {
    if (run_.phase == RunState::Phase::Done) {
        fail(AnomalyCategory::Malformed, to_string(ev));
        return;
    }
    if (run_.phase == RunState::Phase::Start) {
        fail(AnomalyCategory::Structural, to_string(ev));
        return;
    }
    const Module& m = a_->modules.at(run_.current.owner);
    const InternalEdge* hit = nullptr;
    if (mode_ == DataMode::FirstTypeStrict) {
        /* Only the canonically least minimal datatype is tried. */
        std::optional<Datatype> least;
        for (Datatype d : ev.minimal_types)
            if (!least || DatatypeSystem::instance().canonical_rank(d) <
                              DatatypeSystem::instance().canonical_rank(*least))
                least = d;
        if (least) hit = find_internal(m, run_.current, *least);
    } else {
        for (Datatype d : ev.minimal_types)
            if ((hit = find_internal(m, run_.current, d))) break;
    }
    if (!hit) {
        fail(AnomalyCategory::Datatype, to_string(ev));
        return;
    }
    run_.current = hit->to;
}

void ValidationRun::step_close(const TypedEvent& ev) {
    if (run_.phase != RunState::Phase::Inside) {
        fail(AnomalyCategory::Malformed, to_string(ev));
        return;
    }
    const ElementName& open_tag = a_->mu.at(run_.current.owner);
    if (ev.name != open_tag) {
        /* Ill-matched input: the close does not match the unmatched open. */
        fail(AnomalyCategory::Malformed, to_string(ev));
        return;
    }
    if (run_.stack.empty()) {
        if (!a_->finals.count(run_.current)) {
            fail(AnomalyCategory::Structural, to_string(ev));
            return;
        }
        run_.phase = RunState::Phase::Done;
        return;
    }
    const Module& m = a_->modules.at(run_.current.owner);
    const ReturnEdge* ret = find_return(m, run_.current, run_.stack.back(), ev.name);
    if (!ret) {
        fail(AnomalyCategory::Structural, to_string(ev));
        return;
    }
    run_.stack.pop_back();
    run_.current = ret->to;
}

bool ValidationRun::feed(const TypedEvent& ev) {
    if (decided_) return false;
    ++run_.position;
    switch (ev.kind) {
    case TypedEventKind::Open: step_open(ev); break;
    case TypedEventKind::Data: step_data(ev); break;
    case TypedEventKind::Close: step_close(ev); break;
    }
    if (!decided_ && run_.phase == RunState::Phase::Inside)
        peak_stack_ = std::max(peak_stack_, run_.stack.size() + 1);
    return !decided_;
}

Verdict ValidationRun::finish() {
    if (decided_) {
        verdict_.accepted = verdict_.anomalies.empty();
        return verdict_;
    }
    decided_ = true;
    if (run_.phase != RunState::Phase::Done)
        verdict_.anomalies.push_back(
            {run_.position + 1, AnomalyCategory::Malformed, "end of input", expected_here()});
    verdict_.accepted = verdict_.anomalies.empty();
    return verdict_;
}

Verdict validate(const Xvpa& a, std::span<const TypedEvent> events, DataMode mode) {
    ValidationRun run(a, mode);
    for (const TypedEvent& ev : events)
        if (!run.feed(ev)) break;
    return run.finish();
}

DocumentVerdict validate_document(const Xvpa& a, std::string_view document,
                                  const DatatypeSystem& dts, StreamConfig config,
                                  DataMode mode) {
    DocumentVerdict out;
    ValidationRun run(a, mode);
    std::optional<Anomaly> syntax_error;
    std::optional<XmlTokenizer> tok;
    try {
        tok.emplace(document, config);
        while (auto ev = tok->next()) {
            ++out.events;
            if (!run.feed(abstract_event(*ev, dts))) break;
        }
    } catch (const Error& ex) {
        syntax_error = Anomaly{out.events + 1, AnomalyCategory::Malformed, ex.what(), {}};
    }
    if (tok) out.peak_text_bytes = tok->peak_text_bytes();
    out.peak_stack = run.peak_stack();
    if (syntax_error) {
        out.verdict.accepted = false;
        out.verdict.anomalies.push_back(std::move(*syntax_error));
    } else {
        out.verdict = run.finish();
    }
    return out;
}

std::vector<std::string> check_single_exit(const Xvpa& a) {
    std::vector<std::string> out;
    for (const auto& [id, m] : a.modules) {
        std::set<ReturnEdge> missing;
        for (const ReturnEdge& r : m.returns)
            for (const ModuleState& x : m.exits) {
                ReturnEdge want{x, r.stack, r.tag, r.to};
                if (!m.returns.count(want)) missing.insert(want);
            }
        for (const ReturnEdge& r : missing)
            out.push_back("module " + to_string(id) + ": exit " + to_string(r.from) +
                          " missing return on " + r.tag + " with stack " + to_string(r.stack) +
                          " to " + to_string(r.to));
    }
    return out;
}

bool is_deterministic(const Xvpa& a) {
    for (const auto& [id, m] : a.modules) {
        for (auto it = m.calls.begin(); it != m.calls.end(); ++it) {
            auto next = std::next(it);
            if (next != m.calls.end() && next->from == it->from && next->tag == it->tag)
                return false;
        }
        for (auto it = m.internals.begin(); it != m.internals.end(); ++it) {
            auto next = std::next(it);
            if (next != m.internals.end() && next->from == it->from && next->dt == it->dt)
                return false;
        }
    }
    return true;
}

std::vector<std::string> structural_violations(const Xvpa& a) {
    std::vector<std::string> out;
    auto bad = [&out](std::string msg) { out.push_back(std::move(msg)); };

    if (!a.modules.count(a.m0)) bad("start module " + to_string(a.m0) + " does not exist");
    for (const auto& [id, _] : a.modules)
        if (!a.mu.count(id)) bad("module " + to_string(id) + " has no tag");
    for (const auto& [id, tag] : a.mu) {
        if (!a.modules.count(id)) bad("tag entry for unknown module " + to_string(id));
        if (!a.sigma.count(tag)) bad("tag " + tag + " missing from the alphabet");
    }

    auto has_state = [&a](const ModuleState& q) {
        auto it = a.modules.find(q.owner);
        return it != a.modules.end() && it->second.states.count(q) > 0;
    };

    for (const auto& [id, m] : a.modules) {
        const std::string where = "module " + to_string(id) + ": ";
        if (id.empty()) bad("module with empty id");
        for (const ModuleState& q : m.states)
            if (q.owner != id) bad(where + "state " + to_string(q) + " owned elsewhere");
        if (!m.states.count(m.entry)) bad(where + "entry is not a state");
        if (!m.entry.lsib.empty()) bad(where + "entry has nonempty sibling suffix");
        for (const ModuleState& q : m.exits)
            if (!m.states.count(q)) bad(where + "exit " + to_string(q) + " is not a state");
        for (const CallEdge& c : m.calls) {
            if (!m.states.count(c.from)) bad(where + "call from unknown state " + to_string(c.from));
            auto mu_it = a.mu.find(c.to_module);
            if (!a.modules.count(c.to_module) || mu_it == a.mu.end())
                bad(where + "call into unknown module " + to_string(c.to_module));
            else if (mu_it->second != c.tag)
                bad(where + "call on " + c.tag + " into module of tag " + mu_it->second);
        }
        for (const InternalEdge& e : m.internals) {
            if (!m.states.count(e.from) || !m.states.count(e.to))
                bad(where + "internal edge outside the module");
        }
        std::set<ModuleState> returning;
        for (const ReturnEdge& r : m.returns) {
            returning.insert(r.from);
            if (!m.exits.count(r.from))
                bad(where + "return from non-exit " + to_string(r.from));
            if (!has_state(r.stack))
                bad(where + "return pops unknown state " + to_string(r.stack));
            if (!has_state(r.to))
                bad(where + "return into unknown state " + to_string(r.to));
            else if (r.to.owner != r.stack.owner)
                bad(where + "return target " + to_string(r.to) + " outside the caller module");
        }
        for (auto it = m.returns.begin(); it != m.returns.end(); ++it) {
            auto next = std::next(it);
            if (next != m.returns.end() && next->from == it->from &&
                next->stack == it->stack && next->tag == it->tag)
                bad(where + "nondeterministic return from " + to_string(it->from));
        }
        if (id != a.m0)
            for (const ModuleState& x : m.exits)
                if (!returning.count(x))
                    bad(where + "exit " + to_string(x) + " has no outgoing return");
    }

    if (auto it = a.modules.find(a.m0); it != a.modules.end()) {
        if (a.finals != it->second.exits)
            bad("final states differ from the exits of the start module");
    }
    if (!is_deterministic(a)) bad("nondeterministic call or internal edges");
    for (std::string& v : check_single_exit(a)) out.push_back(std::move(v));
    return out;
}

Dfa module_dfa(const Xvpa& a, const TypeId& m) {
    if (auto v = check_single_exit(a); !v.empty()) throw SingleExitRequired(v.front());
    const Module& mod = a.modules.at(m);

    std::map<ModuleState, std::size_t> index;
    for (const ModuleState& q : mod.states) index.emplace(q, index.size());

    Dfa d;
    d.start = index.at(mod.entry);
    d.accepting.assign(index.size(), false);
    for (const ModuleState& q : mod.exits) d.accepting[index.at(q)] = true;
    for (const InternalEdge& e : mod.internals)
        d.edges[{index.at(e.from), DfaSymbol::data(e.dt)}] = index.at(e.to);
    for (const CallEdge& c : mod.calls) {
        /* Single-exit makes the callee's return target unique per call site. */
        const Module& callee = a.modules.at(c.to_module);
        for (const ReturnEdge& r : callee.returns)
            if (r.stack == c.from && r.tag == c.tag) {
                d.edges[{index.at(c.from), DfaSymbol::call(c.to_module)}] = index.at(r.to);
                break;
            }
    }
    return d;
}

bool dfa_equivalent(const Dfa& d1, const Dfa& d2) {
    const std::size_t n1 = d1.accepting.size();
    const std::size_t n2 = d2.accepting.size();
    const std::size_t dead = n1 + n2;

    std::vector<std::size_t> parent(dead + 1);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    auto accepting = [&](std::size_t x) {
        if (x < n1) return bool(d1.accepting[x]);
        if (x < dead) return bool(d2.accepting[x - n1]);
        return false;
    };
    auto succ = [&](std::size_t x, const DfaSymbol& s) {
        if (x < n1) {
            auto it = d1.edges.find({x, s});
            return it == d1.edges.end() ? dead : it->second;
        }
        if (x < dead) {
            auto it = d2.edges.find({x - n1, s});
            return it == d2.edges.end() ? dead : it->second + n1;
        }
        return dead;
    };
    auto symbols_of = [&](std::size_t x, std::set<DfaSymbol>& into) {
        const Dfa* d = x < n1 ? &d1 : x < dead ? &d2 : nullptr;
        if (!d) return;
        std::size_t local = x < n1 ? x : x - n1;
        for (auto it = d->edges.lower_bound({local, DfaSymbol{}});
             it != d->edges.end() && it->first.first == local; ++it)
            into.insert(it->first.second);
    };

    std::vector<std::pair<std::size_t, std::size_t>> todo{
        {d1.start, d2.start + n1}};
    while (!todo.empty()) {
        auto [p, q] = todo.back();
        todo.pop_back();
        if (accepting(p) != accepting(q)) return false;
        std::size_t rp = find(p), rq = find(q);
        if (rp == rq) continue;
        parent[rp] = rq;
        std::set<DfaSymbol> symbols;
        symbols_of(p, symbols);
        symbols_of(q, symbols);
        for (const DfaSymbol& s : symbols) todo.push_back({succ(p, s), succ(q, s)});
    }
    return true;
}

}  // namespace xvpa
