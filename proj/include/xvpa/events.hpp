#ifndef XVPA_EVENTS_HPP
#define XVPA_EVENTS_HPP

#include <cstddef>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xvpa/datatypes.hpp"
#include "xvpa/errors.hpp"

namespace xvpa {

/* Encoded element name: attributes carry an '@' prefix, namespaced names
   are rendered "{namespace-uri}localname". */
using ElementName = std::string;

enum class EventKind { Open, Text, Close };

struct Event {
    EventKind kind;
    std::string value; // element name for Open/Close, datum for Text

    static Event open(std::string name) { return {EventKind::Open, std::move(name)}; }
    static Event text(std::string datum) { return {EventKind::Text, std::move(datum)}; }
    static Event close(std::string name) { return {EventKind::Close, std::move(name)}; }
    bool operator==(const Event&) const = default;
};

std::string to_string(const Event& e);

enum class TypedEventKind { Open, Data, Close };

struct TypedEvent {
    TypedEventKind kind;
    std::string name;          // Open/Close
    DatatypeSet minimal_types; // Data: antichain of minimal matching datatypes

    static TypedEvent open(std::string n) { return {TypedEventKind::Open, std::move(n), {}}; }
    static TypedEvent data(DatatypeSet s) { return {TypedEventKind::Data, {}, s}; }
    static TypedEvent close(std::string n) { return {TypedEventKind::Close, std::move(n), {}}; }
    bool operator==(const TypedEvent&) const = default;
};

std::string to_string(const TypedEvent& e);

struct StreamConfig {
    std::size_t max_depth = 1024;    // maximum element nesting, >= 1
    bool keep_whitespace_text = false;
};

/* Pull tokenizer for one XML document. Single pass; retained state is the
   open-element stack, the namespace scopes, the pending text buffer and the
   attribute burst of the current tag, so memory follows nesting depth, not
   document length. Throws MalformedXml, DepthExceeded, DtdRejected. */
class XmlTokenizer {
public:
    explicit XmlTokenizer(std::string_view document, StreamConfig config = {});
    XmlTokenizer(const XmlTokenizer&) = delete;
    XmlTokenizer& operator=(const XmlTokenizer&) = delete;

    /* Next event, or nullopt at the clean end of the document. */
    std::optional<Event> next();

    std::size_t peak_depth() const { return peak_depth_; }
    std::size_t peak_text_bytes() const { return peak_text_bytes_; }

private:
    enum class Phase { Prolog, Content, Epilog, Done };

    void refill();
    void parse_prolog_item();
    void parse_content();
    void parse_open_tag();
    void parse_close_tag();
    void scan_text();
    void flush_text();
    void skip_comment();
    void skip_pi();
    void scan_cdata();
    void decode_reference(std::string& out);
    std::string parse_name_token();
    std::string parse_attr_value();
    void skip_ws();
    bool literal(std::string_view lit);
    void parse_xml_decl();
    std::string resolve(std::string_view prefix, std::string_view local,
                        bool is_attr, std::size_t offset) const;
    void note_text_size();

    [[noreturn]] void fail(const std::string& msg) const;
    [[noreturn]] void fail_at(const std::string& msg, std::size_t offset) const;

    std::string transcoded_; // owns the UTF-8 form of UTF-16 input
    std::string_view src_;
    std::size_t pos_ = 0;
    StreamConfig config_;
    Phase phase_ = Phase::Prolog;

    std::vector<std::string> open_stack_; // encoded names
    struct NsBinding {
        std::string prefix;
        std::string uri;
    };
    std::vector<NsBinding> ns_stack_;
    std::vector<std::uint32_t> ns_counts_; // bindings added per open element

    std::deque<Event> pending_;
    std::string text_;
    bool saw_root_ = false;

    std::size_t peak_depth_ = 0;
    std::size_t peak_text_bytes_ = 0;
};

/* Whole-document convenience wrapper around XmlTokenizer. */
std::vector<Event> tokenize(std::string_view document, StreamConfig config = {});

/* Text(r) -> Data(types(r)); Open and Close pass through. */
TypedEvent abstract_event(const Event& e, const DatatypeSystem& dts);
std::vector<TypedEvent> abstract(std::span<const Event> events,
                                 const DatatypeSystem& dts);

bool whitespace_only(std::string_view text);

} // namespace xvpa

#endif
