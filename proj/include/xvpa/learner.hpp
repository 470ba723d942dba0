#pragma once

// Grammatical-inference pipeline: prefix acceptor construction from event
// streams, suffix-based state merging, conversion into typed modules with
// single-exit completion, and module minimization.

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "xvpa/automaton.hpp"
#include "xvpa/datatypes.hpp"
#include "xvpa/events.hpp"

namespace xvpa {

// Prefix-context state: the unmatched-open-tag string and the left-sibling
// string (closed sibling tags and content marks) under the current parent.
// The root state is (empty, empty).
struct VppaState {
    std::vector<std::string> anc;
    std::vector<std::string> lsib;

    friend auto operator<=>(const VppaState&, const VppaState&) = default;
};

struct VppaCall {
    VppaState from;  // also the pushed stack symbol
    ElementName tag;
    VppaState to;

    friend auto operator<=>(const VppaCall&, const VppaCall&) = default;
};

struct VppaReturn {
    VppaState from;
    VppaState stack;
    ElementName tag;
    VppaState to;

    friend auto operator<=>(const VppaReturn&, const VppaReturn&) = default;
};

// Deterministic prefix acceptor over well-matched documents. type_dict keeps
// the minimal-datatype antichains observed between two states; the internal
// edge set is materialized as the downward closure of each entry only at
// module conversion.
struct Vppa {
    std::set<ElementName> sigma;
    std::set<VppaState> states;  // always contains the root state
    std::set<VppaState> finals;
    std::set<VppaCall> calls;
    std::set<VppaReturn> returns;
    std::map<std::pair<VppaState, VppaState>, DatatypeSet> type_dict;

    friend bool operator==(const Vppa&, const Vppa&) = default;
};

// Suffix lengths of the distinguishing function: l bounds the ancestor
// suffix, k the sibling suffix. Both must be at least 1.
struct MergeParams {
    std::size_t k = 1;
    std::size_t l = 2;
};

using Corpus = std::vector<std::vector<Event>>;

// Exact prefix acceptor of the corpus. Throws EmptyCorpus, and
// MalformedEvents for ill-matched or empty event sequences.
Vppa build_vppa(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts);

// Suffix projection; states with equal images are merged. Idempotent.
VppaState f_kl(const VppaState& q, MergeParams p);

// Maps every state and edge of v through f_kl; type_dict entries with equal
// merged keys are unioned. The image stays deterministic.
Vppa merge(const Vppa& v, MergeParams p);

// Single-pass equivalent of merge(build_vppa(corpus, dts), p): states are
// created directly as suffix images.
Vppa build_merged(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts,
                  MergeParams p);

// Partitions states into modules by ancestor suffix, derives exits from
// outgoing returns, completes returns across each module's exits, and sets
// finals to the exits of the start module. Throws InconsistentRoot when the
// corpus had more than one root context or root tag.
Xvpa to_xvpa(const Vppa& merged, const DatatypeSystem& dts);

// Fixpoint module merging: while two modules share their tag and have
// language-equivalent content DFAs, redirect the lexicographically later one
// onto the earlier and delete it; finally drops unreachable modules.
Xvpa minimize(Xvpa a);

// The whole pipeline: minimize(to_xvpa(build_merged(corpus, dts, p))).
Xvpa infer(std::span<const std::vector<Event>> corpus, const DatatypeSystem& dts,
           MergeParams p = {});

std::string to_string(const VppaState& q);

}  // namespace xvpa
