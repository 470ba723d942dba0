#ifndef XVPA_ERRORS_HPP
#define XVPA_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace xvpa {

/* Common base so callers can catch everything this library throws. */
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/* Byte-level XML syntax error. offset is a byte position into the
   (possibly transcoded) document. */
class MalformedXml : public Error {
public:
    MalformedXml(std::string msg, std::size_t offset)
        : Error(std::move(msg) + " at byte " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

/* Element nesting exceeded StreamConfig::max_depth. */
class DepthExceeded : public Error {
public:
    DepthExceeded(std::size_t depth, std::size_t offset)
        : Error("nesting depth " + std::to_string(depth) +
                " exceeds configured maximum, at byte " + std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

/* Any DOCTYPE declaration is rejected outright; no DTD processing exists. */
class DtdRejected : public Error {
public:
    explicit DtdRejected(std::size_t offset)
        : Error("DOCTYPE declarations are not processed, at byte " +
                std::to_string(offset)),
          offset(offset) {}
    std::size_t offset;
};

/* A synthetic event sequence violated well-matchedness (close without open,
   mismatched close tag, trailing open elements, empty document). position is
   the 1-based event ordinal at fault. */
class MalformedEvents : public Error {
public:
    MalformedEvents(std::string msg, std::size_t position)
        : Error(std::move(msg) + " at event " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus contains no documents") {}
};

/* Training documents disagree on the root element name. */
class InconsistentRoot : public Error {
public:
    explicit InconsistentRoot(std::string msg) : Error(std::move(msg)) {}
};

/* Operation precondition: the automaton must satisfy the single-exit
   property (all exits of a module share one return behavior). */
class SingleExitRequired : public Error {
public:
    explicit SingleExitRequired(std::string msg) : Error(std::move(msg)) {}
};

/* Model file is not syntactically valid JSON (or not readable). */
class ParseError : public Error {
public:
    explicit ParseError(std::string msg) : Error(std::move(msg)) {}
};

/* Model file was written by an incompatible format or datatype system. */
class VersionMismatch : public Error {
public:
    explicit VersionMismatch(std::string msg) : Error(std::move(msg)) {}
};

/* Structurally invalid automaton: dangling references, nondeterminism,
   single-exit violations, tag/module inconsistencies. */
class InvalidModel : public Error {
public:
    explicit InvalidModel(std::vector<std::string> violations)
        : Error(violations.empty() ? std::string("invalid model")
                                   : "invalid model: " + violations.front() +
                                         (violations.size() > 1 ? " (+" +
                                              std::to_string(violations.size() - 1) +
                                              " more)"
                                                                : "")),
          violations(std::move(violations)) {}
    std::vector<std::string> violations;
};

} // namespace xvpa

#endif
