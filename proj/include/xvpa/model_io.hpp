#pragma once

#include <string>
#include <string_view>

#include "xvpa/automaton.hpp"
#include "xvpa/learner.hpp"

namespace xvpa {

/* A model file carries the automaton plus the parameters that produced it. */
struct LoadedModel {
    Xvpa automaton;
    MergeParams params;
};

/* Canonical JSON rendering: equal models yield identical bytes. Throws
   InvalidModel when the automaton fails its structural checks. */
std::string save(const Xvpa& a, MergeParams params);

/* Throws ParseError on malformed or ill-shaped bytes, VersionMismatch on an
   unsupported format or datatype-system pin, InvalidModel when the decoded
   automaton fails its structural checks. */
LoadedModel load(std::string_view bytes);

/* Graphviz rendering, one cluster per module plus the start and final wrapper
   states of the corresponding VPA. Deterministic output. */
std::string export_dot(const Xvpa& a);

/* Flat Graphviz rendering of a prefix acceptor or merged automaton. */
std::string vppa_dot(const Vppa& v);

}  // namespace xvpa
