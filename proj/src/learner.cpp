#include "xvpa/learner.hpp"

#include <algorithm>
#include <stdexcept>

#include "xvpa/errors.hpp"

namespace xvpa {

namespace {

std::vector<std::string> suffix(const std::vector<std::string>& xs, std::size_t n) {
    if (xs.size() <= n) return xs;
    return std::vector<std::string>(xs.end() - static_cast<std::ptrdiff_t>(n), xs.end());
}

void check_params(MergeParams p) {
    if (p.k < 1 || p.l < 1) throw std::invalid_argument("merge parameters must be at least 1");
}

/* One document walk shared by the exact and the merged construction: with
   truncation params the successor states are built directly as suffix
   images, which commutes with merging because every successor component is
   a function of the source's suffixes alone. */
void ingest(Vppa& v, std::span<const Event> events, const DatatypeSystem& dts,
            const MergeParams* trunc) {
    if (events.empty()) throw MalformedEvents("document has no events", 1);
    const std::size_t k = trunc ? trunc->k : SIZE_MAX;
    const std::size_t l = trunc ? trunc->l : SIZE_MAX;

    VppaState cur;
    std::vector<VppaState> stack;
    std::size_t pos = 0;
    for (const Event& e : events) {
        ++pos;
        switch (e.kind) {
        case EventKind::Open: {
            v.sigma.insert(e.value);
            VppaState next{cur.anc, {}};
            next.anc.push_back(e.value);
            next.anc = suffix(next.anc, l);
            v.calls.insert({cur, e.value, next});
            v.states.insert(next);
            stack.push_back(std::move(cur));
            cur = std::move(next);
            break;
        }
        case EventKind::Text: {
            VppaState next{cur.anc, cur.lsib};
            next.lsib.push_back(std::string(kContentMark));
            next.lsib = suffix(next.lsib, k);
            v.type_dict[{cur, next}] |= dts.types(e.value);
            v.states.insert(next);
            cur = std::move(next);
            break;
        }
        case EventKind::Close: {
            if (stack.empty()) throw MalformedEvents("close without open", pos);
            if (cur.anc.empty() || cur.anc.back() != e.value)
                throw MalformedEvents("mismatched close tag", pos);
            VppaState p = std::move(stack.back());
            stack.pop_back();
            VppaState next{p.anc, p.lsib};
            next.lsib.push_back(e.value);
            next.lsib = suffix(next.lsib, k);
            v.returns.insert({cur, p, e.value, next});
            v.states.insert(next);
            cur = std::move(next);
            break;
        }
        }
    }
    if (!stack.empty()) throw MalformedEvents("unclosed elements at end of document", pos + 1);
    v.finals.insert(cur);
}

Vppa build(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts,
           const MergeParams* trunc) {
    if (corpus.empty()) throw EmptyCorpus();
    Vppa v;
    v.states.insert(VppaState{});
    for (const auto& doc : corpus) ingest(v, doc, dts, trunc);
    return v;
}

}  // namespace

std::string to_string(const VppaState& q) { return to_string(ModuleState{q.anc, q.lsib}); }

Vppa build_vppa(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts) {
    return build(corpus, dts, nullptr);
}

VppaState f_kl(const VppaState& q, MergeParams p) {
    return {suffix(q.anc, p.l), suffix(q.lsib, p.k)};
}

Vppa merge(const Vppa& v, MergeParams p) {
    check_params(p);
    Vppa m;
    m.sigma = v.sigma;
    for (const VppaState& q : v.states) m.states.insert(f_kl(q, p));
    for (const VppaState& q : v.finals) m.finals.insert(f_kl(q, p));
    for (const VppaCall& c : v.calls)
        m.calls.insert({f_kl(c.from, p), c.tag, f_kl(c.to, p)});
    for (const VppaReturn& r : v.returns)
        m.returns.insert({f_kl(r.from, p), f_kl(r.stack, p), r.tag, f_kl(r.to, p)});
    for (const auto& [key, types] : v.type_dict)
        m.type_dict[{f_kl(key.first, p), f_kl(key.second, p)}] |= types;
    return m;
}

Vppa build_merged(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts,
                  MergeParams p) {
    check_params(p);
    return build(corpus, dts, &p);
}

Xvpa to_xvpa(const Vppa& v, const DatatypeSystem& dts) {
    std::set<ElementName> root_tags;
    TypeId m0;
    for (const VppaCall& c : v.calls) {
        if (!c.from.anc.empty()) continue;
        if (!c.from.lsib.empty())
            throw InconsistentRoot("document continues after the root element closed");
        root_tags.insert(c.tag);
        m0 = c.to.anc;
    }
    if (root_tags.empty()) throw InconsistentRoot("corpus defines no root element");
    if (root_tags.size() > 1) {
        std::string msg = "corpus documents use different root tags:";
        for (const ElementName& t : root_tags) msg += " " + t;
        throw InconsistentRoot(msg);
    }
    for (const auto& [key, types] : v.type_dict)
        if (key.first.anc.empty())
            throw InconsistentRoot("text content at the top level cannot enter a typed module");

    Xvpa x;
    x.sigma = v.sigma;
    x.m0 = m0;

    for (const VppaState& q : v.states) {
        if (q.anc.empty()) continue;  // root context becomes the wrapper
        Module& m = x.modules[q.anc];
        m.states.insert({q.anc, q.lsib});
    }
    for (auto& [id, m] : x.modules) {
        m.entry = ModuleState{id, {}};
        m.states.insert(m.entry);
        x.mu[id] = id.back();
    }

    for (const VppaCall& c : v.calls) {
        if (c.from.anc.empty()) continue;  // the wrapper call is implicit
        x.modules.at(c.from.anc).calls.insert({{c.from.anc, c.from.lsib}, c.tag, c.to.anc});
    }
    for (const VppaReturn& r : v.returns) {
        Module& m = x.modules.at(r.from.anc);
        m.exits.insert({r.from.anc, r.from.lsib});
        if (r.stack.anc.empty()) continue;  // return to the wrapper: captured by finals
        m.returns.insert(
            {{r.from.anc, r.from.lsib}, {r.stack.anc, r.stack.lsib}, r.tag, {r.to.anc, r.to.lsib}});
    }
    for (const auto& [key, types] : v.type_dict) {
        Module& m = x.modules.at(key.first.anc);
        for (Datatype d : dts.cl_inverse(types))
            m.internals.insert(
                {{key.first.anc, key.first.lsib}, d, {key.second.anc, key.second.lsib}});
    }

    /* Single-exit completion: every return is replicated onto every exit of
       its module, so the module language is call-site independent. */
    for (auto& [id, m] : x.modules) {
        std::set<ReturnEdge> completed = m.returns;
        for (const ReturnEdge& r : m.returns)
            for (const ModuleState& exit : m.exits)
                completed.insert({exit, r.stack, r.tag, r.to});
        m.returns = std::move(completed);
    }

    x.finals = x.modules.at(x.m0).exits;
    return x;
}

namespace {

Dfa substitute(Dfa d, const TypeId& from, const TypeId& to) {
    std::map<std::pair<std::size_t, DfaSymbol>, std::size_t> edges;
    for (const auto& [key, target] : d.edges) {
        auto k = key;
        if (k.second.is_module && k.second.module == from) k.second.module = to;
        edges[k] = target;
    }
    d.edges = std::move(edges);
    return d;
}

/* Removes return tuples that pop into states of a deleted module. */
void strip_dead_returns(Xvpa& a, const TypeId& gone) {
    for (auto& [id, mod] : a.modules) {
        std::set<ReturnEdge> keep;
        for (const ReturnEdge& r : mod.returns)
            if (r.stack.owner != gone && r.to.owner != gone) keep.insert(r);
        mod.returns = std::move(keep);
    }
}

void merge_modules(Xvpa& a, const TypeId& keep_id, const TypeId& drop_id) {
    Module dropped = std::move(a.modules.at(drop_id));
    a.modules.erase(drop_id);
    a.mu.erase(drop_id);
    for (auto& [id, mod] : a.modules) {
        std::set<CallEdge> calls;
        for (CallEdge c : mod.calls) {
            if (c.to_module == drop_id) c.to_module = keep_id;
            calls.insert(std::move(c));
        }
        mod.calls = std::move(calls);
    }
    /* Callers of the dropped module now enter the kept one, so its exits
       take over the dropped return behavior. */
    Module& keep = a.modules.at(keep_id);
    for (const ReturnEdge& r : dropped.returns)
        if (r.stack.owner != drop_id)
            for (const ModuleState& exit : keep.exits)
                keep.returns.insert({exit, r.stack, r.tag, r.to});
    strip_dead_returns(a, drop_id);
    if (a.m0 == drop_id) a.m0 = keep_id;
    a.finals = a.modules.at(a.m0).exits;
}

void prune_unreachable(Xvpa& a) {
    if (!a.modules.count(a.m0)) return;
    std::set<TypeId> live{a.m0};
    std::vector<TypeId> todo{a.m0};
    while (!todo.empty()) {
        TypeId m = std::move(todo.back());
        todo.pop_back();
        for (const CallEdge& c : a.modules.at(m).calls)
            if (a.modules.count(c.to_module) && live.insert(c.to_module).second)
                todo.push_back(c.to_module);
    }
    std::vector<TypeId> gone;
    for (const auto& [id, _] : a.modules)
        if (!live.count(id)) gone.push_back(id);
    for (const TypeId& id : gone) {
        a.modules.erase(id);
        a.mu.erase(id);
    }
    for (const TypeId& id : gone) strip_dead_returns(a, id);
    a.finals = a.modules.at(a.m0).exits;
}

}  // namespace

Xvpa minimize(Xvpa a) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<TypeId> ids;
        for (const auto& [id, _] : a.modules) ids.push_back(id);
        for (std::size_t i = 0; i < ids.size() && !changed; ++i)
            for (std::size_t j = i + 1; j < ids.size() && !changed; ++j) {
                if (a.mu.at(ids[i]) != a.mu.at(ids[j])) continue;
                /* Compare under the hypothesis that the two modules are one,
                   so self-recursive duplicates also merge. */
                Dfa di = substitute(module_dfa(a, ids[i]), ids[j], ids[i]);
                Dfa dj = substitute(module_dfa(a, ids[j]), ids[j], ids[i]);
                if (!dfa_equivalent(di, dj)) continue;
                merge_modules(a, ids[i], ids[j]);
                changed = true;
            }
    }
    prune_unreachable(a);
    return a;
}

Xvpa infer(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts,
           MergeParams p) {
    check_params(p);
    return minimize(to_xvpa(build_merged(corpus, dts, p), dts));
}

}  // namespace xvpa
