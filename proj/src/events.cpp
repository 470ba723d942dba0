#include "xvpa/events.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>

#include "chars.hpp"

namespace xvpa {

namespace {

constexpr std::string_view kXmlNsUri = "http://www.w3.org/XML/1998/namespace";

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string lowercase(std::string_view s) {
    std::string out(s);
    for (char& c : out)
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

bool whitespace_only(std::string_view text) {
    return std::all_of(text.begin(), text.end(), is_ws);
}

std::string to_string(const Event& e) {
    switch (e.kind) {
    case EventKind::Open: return "<" + e.value + ">";
    case EventKind::Close: return "</" + e.value + ">";
    default: return "\"" + e.value + "\"";
    }
}

std::string to_string(const TypedEvent& e) {
    switch (e.kind) {
    case TypedEventKind::Open: return "<" + e.name + ">";
    case TypedEventKind::Close: return "</" + e.name + ">";
    default: {
        std::string out = "data{";
        bool first = true;
        for (Datatype d : e.minimal_types) {
            if (!first) out += ",";
            out += datatype_name(d);
            first = false;
        }
        return out + "}";
    }
    }
}

XmlTokenizer::XmlTokenizer(std::string_view document, StreamConfig config)
    : src_(document), config_(config) {
    if (config_.max_depth == 0) config_.max_depth = 1;

    bool utf16le = false, utf16be = false;
    if (document.size() >= 2) {
        unsigned char b0 = document[0], b1 = document[1];
        if (b0 == 0xFF && b1 == 0xFE) {
            utf16le = true;
        } else if (b0 == 0xFE && b1 == 0xFF) {
            utf16be = true;
        } else if (b0 == '<' && b1 == 0x00) {
            utf16le = true;
        } else if (b0 == 0x00 && b1 == '<') {
            utf16be = true;
        } else if (document.size() >= 3 && b0 == 0xEF && b1 == 0xBB &&
                   static_cast<unsigned char>(document[2]) == 0xBF) {
            src_ = document.substr(3);
        }
    }
    if (utf16le || utf16be) {
        std::size_t i = (static_cast<unsigned char>(document[0]) >= 0xFE) ? 2 : 0;
        transcoded_.reserve(document.size() / 2);
        while (i < document.size()) {
            if (i + 2 > document.size())
                throw MalformedXml("truncated UTF-16 code unit", i);
            auto unit = [&](std::size_t at) -> std::uint32_t {
                unsigned char lo = document[at], hi = document[at + 1];
                return utf16le ? (lo | (hi << 8)) : ((lo << 8) | hi);
            };
            std::uint32_t u = unit(i);
            std::int32_t cp;
            if (u >= 0xD800 && u <= 0xDBFF) {
                if (i + 4 > document.size())
                    throw MalformedXml("unpaired surrogate", i);
                std::uint32_t lo = unit(i + 2);
                if (lo < 0xDC00 || lo > 0xDFFF)
                    throw MalformedXml("unpaired surrogate", i);
                cp = 0x10000 + ((u - 0xD800) << 10) + (lo - 0xDC00);
                i += 4;
            } else if (u >= 0xDC00 && u <= 0xDFFF) {
                throw MalformedXml("unpaired surrogate", i);
            } else {
                cp = static_cast<std::int32_t>(u);
                i += 2;
            }
            detail::append_utf8(transcoded_, cp);
        }
        src_ = transcoded_;
    }
}

void XmlTokenizer::fail(const std::string& msg) const { fail_at(msg, pos_); }

void XmlTokenizer::fail_at(const std::string& msg, std::size_t offset) const {
    throw MalformedXml(msg, offset);
}

void XmlTokenizer::note_text_size() {
    peak_text_bytes_ = std::max(peak_text_bytes_, text_.size());
}

std::optional<Event> XmlTokenizer::next() {
    while (pending_.empty() && phase_ != Phase::Done) refill();
    if (pending_.empty()) return std::nullopt;
    Event e = std::move(pending_.front());
    pending_.pop_front();
    return e;
}

void XmlTokenizer::refill() {
    switch (phase_) {
    case Phase::Prolog: parse_prolog_item(); break;
    case Phase::Content: parse_content(); break;
    case Phase::Epilog:
    case Phase::Done: {
        while (pos_ < src_.size()) {
            if (is_ws(src_[pos_])) {
                ++pos_;
            } else if (literal("<!--")) {
                skip_comment();
            } else if (literal("<!DOCTYPE")) {
                throw DtdRejected(pos_ - 9);
            } else if (literal("<?")) {
                skip_pi();
            } else if (src_[pos_] == '<') {
                if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')
                    fail("close tag after document element");
                fail("multiple root elements");
            } else {
                fail("content after document element");
            }
        }
        phase_ = Phase::Done;
        break;
    }
    }
}

void XmlTokenizer::parse_prolog_item() {
    if (pos_ == 0 && src_.substr(0, 5) == "<?xml" && src_.size() > 5 &&
        is_ws(src_[5])) {
        parse_xml_decl();
        return;
    }
    while (pos_ < src_.size() && is_ws(src_[pos_])) ++pos_;
    if (pos_ >= src_.size()) fail("no document element");
    if (literal("<!--")) {
        skip_comment();
        return;
    }
    if (literal("<!DOCTYPE")) throw DtdRejected(pos_ - 9);
    if (src_.substr(pos_, 2) == "<?") {
        literal("<?");
        skip_pi();
        return;
    }
    if (src_[pos_] == '<') {
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '!')
            fail("unrecognized markup declaration");
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/')
            fail("close tag before document element");
        phase_ = Phase::Content;
        saw_root_ = true;
        parse_open_tag();
        if (open_stack_.empty()) phase_ = Phase::Epilog;
        return;
    }
    fail("content outside document element");
}

void XmlTokenizer::parse_content() {
    while (true) {
        if (pos_ >= src_.size()) fail("unexpected end inside element content");
        if (src_[pos_] != '<') {
            scan_text();
            continue;
        }
        if (literal("<!--")) {
            skip_comment();
            continue;
        }
        if (src_.substr(pos_, 9) == "<![CDATA[") {
            scan_cdata();
            continue;
        }
        if (literal("<!DOCTYPE")) throw DtdRejected(pos_ - 9);
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '!')
            fail("unrecognized markup declaration");
        if (src_.substr(pos_, 2) == "<?") {
            literal("<?");
            skip_pi();
            continue;
        }
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
            flush_text();
            parse_close_tag();
        } else {
            flush_text();
            parse_open_tag();
        }
        if (open_stack_.empty()) phase_ = Phase::Epilog;
        return;
    }
}

void XmlTokenizer::scan_text() {
    while (pos_ < src_.size() && src_[pos_] != '<') {
        char c = src_[pos_];
        if (c == '&') {
            decode_reference(text_);
        } else if (c == ']' && src_.substr(pos_, 3) == "]]>") {
            fail("']]>' is not allowed in character data");
        } else if (c == '\r') {
            text_.push_back('\n');
            ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
        } else if (static_cast<unsigned char>(c) < 0x80) {
            if (!detail::xml_char(c)) fail("invalid character in text");
            text_.push_back(c);
            ++pos_;
        } else {
            std::size_t start = pos_;
            std::int32_t cp = detail::next_codepoint(src_, pos_);
            if (cp < 0 || !detail::xml_char(cp)) fail_at("invalid UTF-8 in text", start);
            text_.append(src_.substr(start, pos_ - start));
        }
        note_text_size();
    }
}

void XmlTokenizer::flush_text() {
    if (text_.empty()) return;
    if (whitespace_only(text_) && !config_.keep_whitespace_text) {
        text_.clear();
        return;
    }
    pending_.push_back(Event::text(std::move(text_)));
    text_.clear();
}

void XmlTokenizer::skip_comment() {
    // caller consumed "<!--"
    while (true) {
        if (pos_ + 1 >= src_.size()) fail("unterminated comment");
        if (src_[pos_] == '-' && src_[pos_ + 1] == '-') {
            if (pos_ + 2 < src_.size() && src_[pos_ + 2] == '>') {
                pos_ += 3;
                return;
            }
            fail("'--' is not allowed inside comments");
        }
        unsigned char c = src_[pos_];
        if (c < 0x20 && c != '\t' && c != '\n' && c != '\r')
            fail("invalid character in comment");
        ++pos_;
    }
}

void XmlTokenizer::skip_pi() {
    // caller consumed "<?"
    std::size_t target_off = pos_;
    std::string target = parse_name_token();
    if (lowercase(target) == "xml")
        fail_at("processing instruction target 'xml' is reserved", target_off);
    while (true) {
        if (pos_ + 1 >= src_.size()) fail("unterminated processing instruction");
        if (src_[pos_] == '?' && src_[pos_ + 1] == '>') {
            pos_ += 2;
            return;
        }
        unsigned char c = src_[pos_];
        if (c < 0x20 && c != '\t' && c != '\n' && c != '\r')
            fail("invalid character in processing instruction");
        ++pos_;
    }
}

void XmlTokenizer::scan_cdata() {
    pos_ += 9; // "<![CDATA["
    while (true) {
        if (pos_ >= src_.size()) fail("unterminated CDATA section");
        if (src_[pos_] == ']' && src_.substr(pos_, 3) == "]]>") {
            pos_ += 3;
            return;
        }
        char c = src_[pos_];
        if (c == '\r') {
            text_.push_back('\n');
            ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
        } else if (static_cast<unsigned char>(c) < 0x80) {
            if (!detail::xml_char(c)) fail("invalid character in CDATA");
            text_.push_back(c);
            ++pos_;
        } else {
            std::size_t start = pos_;
            std::int32_t cp = detail::next_codepoint(src_, pos_);
            if (cp < 0 || !detail::xml_char(cp))
                fail_at("invalid UTF-8 in CDATA", start);
            text_.append(src_.substr(start, pos_ - start));
        }
        note_text_size();
    }
}

void XmlTokenizer::decode_reference(std::string& out) {
    std::size_t start = pos_;
    ++pos_; // '&'
    if (pos_ < src_.size() && src_[pos_] == '#') {
        ++pos_;
        std::int64_t value = 0;
        bool any = false;
        if (pos_ < src_.size() && (src_[pos_] == 'x' || src_[pos_] == 'X')) {
            ++pos_;
            while (pos_ < src_.size() && src_[pos_] != ';') {
                char c = src_[pos_];
                int digit;
                if (c >= '0' && c <= '9') digit = c - '0';
                else if (c >= 'a' && c <= 'f') digit = c - 'a' + 10;
                else if (c >= 'A' && c <= 'F') digit = c - 'A' + 10;
                else fail_at("bad character reference", start);
                value = value * 16 + digit;
                if (value > 0x10FFFF) fail_at("character reference out of range", start);
                any = true;
                ++pos_;
            }
        } else {
            while (pos_ < src_.size() && src_[pos_] != ';') {
                char c = src_[pos_];
                if (c < '0' || c > '9') fail_at("bad character reference", start);
                value = value * 10 + (c - '0');
                if (value > 0x10FFFF) fail_at("character reference out of range", start);
                any = true;
                ++pos_;
            }
        }
        if (!any || pos_ >= src_.size()) fail_at("bad character reference", start);
        ++pos_; // ';'
        if (!detail::xml_char(static_cast<std::int32_t>(value)))
            fail_at("character reference out of range", start);
        detail::append_utf8(out, static_cast<std::int32_t>(value));
        return;
    }
    std::size_t name_end = pos_;
    while (name_end < src_.size() && src_[name_end] != ';' &&
           name_end - pos_ < 16)
        ++name_end;
    if (name_end >= src_.size() || src_[name_end] != ';')
        fail_at("unterminated entity reference", start);
    std::string_view name = src_.substr(pos_, name_end - pos_);
    pos_ = name_end + 1;
    if (name == "lt") out.push_back('<');
    else if (name == "gt") out.push_back('>');
    else if (name == "amp") out.push_back('&');
    else if (name == "apos") out.push_back('\'');
    else if (name == "quot") out.push_back('"');
    else fail_at("undefined entity '&" + std::string(name) + ";'", start);
}

std::string XmlTokenizer::parse_name_token() {
    std::size_t start = pos_;
    if (pos_ >= src_.size()) fail("expected a name");
    std::int32_t cp = detail::next_codepoint(src_, pos_);
    if (cp < 0 || !detail::name_start_char(cp)) fail_at("expected a name", start);
    while (pos_ < src_.size()) {
        std::size_t at = pos_;
        std::int32_t c = detail::next_codepoint(src_, pos_);
        if (c < 0) fail_at("invalid UTF-8 in name", at);
        if (!detail::name_char(c)) {
            pos_ = at;
            break;
        }
    }
    return std::string(src_.substr(start, pos_ - start));
}

std::string XmlTokenizer::parse_attr_value() {
    if (pos_ >= src_.size() || (src_[pos_] != '"' && src_[pos_] != '\''))
        fail("expected quoted attribute value");
    char quote = src_[pos_];
    ++pos_;
    std::string out;
    while (true) {
        if (pos_ >= src_.size()) fail("unterminated attribute value");
        char c = src_[pos_];
        if (c == quote) {
            ++pos_;
            return out;
        }
        if (c == '<') fail("'<' is not allowed in attribute values");
        if (c == '&') {
            decode_reference(out);
        } else if (c == '\r') {
            out.push_back('\n');
            ++pos_;
            if (pos_ < src_.size() && src_[pos_] == '\n') ++pos_;
        } else if (static_cast<unsigned char>(c) < 0x80) {
            if (!detail::xml_char(c)) fail("invalid character in attribute value");
            out.push_back(c);
            ++pos_;
        } else {
            std::size_t start = pos_;
            std::int32_t cp = detail::next_codepoint(src_, pos_);
            if (cp < 0 || !detail::xml_char(cp))
                fail_at("invalid UTF-8 in attribute value", start);
            out.append(src_.substr(start, pos_ - start));
        }
    }
}

void XmlTokenizer::skip_ws() {
    while (pos_ < src_.size() && is_ws(src_[pos_])) ++pos_;
}

bool XmlTokenizer::literal(std::string_view lit) {
    if (src_.substr(pos_, lit.size()) == lit) {
        pos_ += lit.size();
        return true;
    }
    return false;
}

void XmlTokenizer::parse_xml_decl() {
    literal("<?xml");
    skip_ws();
    if (!literal("version")) fail("XML declaration must begin with version");
    skip_ws();
    if (!literal("=")) fail("expected '=' in XML declaration");
    skip_ws();
    std::string version = parse_attr_value();
    if (version != "1.0") fail("only XML 1.0 is supported");
    skip_ws();
    if (literal("encoding")) {
        skip_ws();
        if (!literal("=")) fail("expected '=' in XML declaration");
        skip_ws();
        std::string enc = lowercase(parse_attr_value());
        if (enc != "utf-8" && enc != "utf-16")
            fail("unsupported encoding '" + enc + "'");
        skip_ws();
    }
    if (literal("standalone")) {
        skip_ws();
        if (!literal("=")) fail("expected '=' in XML declaration");
        skip_ws();
        std::string sd = parse_attr_value();
        if (sd != "yes" && sd != "no") fail("bad standalone value");
        skip_ws();
    }
    if (!literal("?>")) fail("unterminated XML declaration");
}

std::string XmlTokenizer::resolve(std::string_view prefix, std::string_view local,
                                  bool is_attr, std::size_t offset) const {
    if (prefix == "xmlns")
        fail_at("'xmlns' cannot be used as a name prefix", offset);
    if (prefix == "xml") return "{" + std::string(kXmlNsUri) + "}" + std::string(local);
    if (prefix.empty()) {
        if (is_attr) return std::string(local);
        for (auto it = ns_stack_.rbegin(); it != ns_stack_.rend(); ++it)
            if (it->prefix.empty())
                return it->uri.empty() ? std::string(local)
                                       : "{" + it->uri + "}" + std::string(local);
        return std::string(local);
    }
    for (auto it = ns_stack_.rbegin(); it != ns_stack_.rend(); ++it)
        if (it->prefix == prefix) return "{" + it->uri + "}" + std::string(local);
    fail_at("undeclared namespace prefix '" + std::string(prefix) + "'", offset);
}

void XmlTokenizer::parse_open_tag() {
    std::size_t tag_off = pos_;
    literal("<");
    std::string qname = parse_name_token();

    struct RawAttr {
        std::string qname;
        std::string value;
        std::size_t offset;
    };
    std::vector<RawAttr> raw;
    bool self_closing = false;
    while (true) {
        bool had_ws = pos_ < src_.size() && is_ws(src_[pos_]);
        skip_ws();
        if (literal("/>")) {
            self_closing = true;
            break;
        }
        if (literal(">")) break;
        if (!had_ws) fail("expected whitespace before attribute");
        std::size_t off = pos_;
        std::string aname = parse_name_token();
        skip_ws();
        if (!literal("=")) fail("expected '=' after attribute name");
        skip_ws();
        raw.push_back({std::move(aname), parse_attr_value(), off});
    }

    // A self-closing element still occupies one nesting level.
    if (open_stack_.size() >= config_.max_depth)
        throw DepthExceeded(open_stack_.size() + 1, tag_off);

    auto split = [&](std::string_view n,
                     std::size_t off) -> std::pair<std::string_view, std::string_view> {
        std::size_t colon = n.find(':');
        if (colon == std::string_view::npos) return {std::string_view{}, n};
        std::string_view p = n.substr(0, colon), l = n.substr(colon + 1);
        if (p.empty() || l.empty() || l.find(':') != std::string_view::npos)
            fail_at("ill-formed qualified name '" + std::string(n) + "'", off);
        return {p, l};
    };

    {
        std::set<std::string_view> raw_names;
        for (const RawAttr& a : raw)
            if (!raw_names.insert(a.qname).second)
                fail_at("duplicate attribute '" + a.qname + "'", a.offset);
    }

    // Namespace declarations on this element come first; they scope the
    // element's own name and its other attributes.
    std::uint32_t bindings = 0;
    for (const RawAttr& a : raw) {
        std::string_view n = a.qname;
        std::string prefix;
        if (n == "xmlns") {
            prefix = "";
        } else if (n.substr(0, 6) == "xmlns:") {
            prefix = std::string(n.substr(6));
            if (prefix.empty() || prefix.find(':') != std::string::npos)
                fail_at("ill-formed namespace declaration", a.offset);
            if (a.value.empty())
                fail_at("cannot bind prefix '" + prefix + "' to an empty URI",
                        a.offset);
            if (prefix == "xmlns")
                fail_at("the 'xmlns' prefix cannot be redeclared", a.offset);
            if (prefix == "xml" && a.value != kXmlNsUri)
                fail_at("the 'xml' prefix is bound to a fixed URI", a.offset);
        } else {
            continue;
        }
        if (a.value.find('{') != std::string::npos ||
            a.value.find('}') != std::string::npos)
            fail_at("invalid namespace URI", a.offset);
        ns_stack_.push_back({std::move(prefix), a.value});
        ++bindings;
    }

    auto [eprefix, elocal] = split(qname, tag_off);
    std::string encoded = resolve(eprefix, elocal, false, tag_off);

    std::vector<std::pair<std::string, std::string>> attrs;
    std::set<std::string> seen;
    for (RawAttr& a : raw) {
        if (a.qname == "xmlns" || a.qname.substr(0, 6) == "xmlns:") continue;
        auto [p, l] = split(a.qname, a.offset);
        std::string an = "@" + resolve(p, l, true, a.offset);
        if (!seen.insert(an).second)
            fail_at("duplicate attribute '" + an + "'", a.offset);
        attrs.emplace_back(std::move(an), std::move(a.value));
    }
    std::sort(attrs.begin(), attrs.end());

    pending_.push_back(Event::open(encoded));
    for (auto& [an, av] : attrs) {
        pending_.push_back(Event::open(an));
        if (!av.empty()) pending_.push_back(Event::text(std::move(av)));
        pending_.push_back(Event::close(an));
    }
    if (self_closing) {
        pending_.push_back(Event::close(encoded));
        while (bindings--) ns_stack_.pop_back();
    } else {
        open_stack_.push_back(std::move(encoded));
        ns_counts_.push_back(bindings);
        peak_depth_ = std::max(peak_depth_, open_stack_.size());
    }
}

void XmlTokenizer::parse_close_tag() {
    std::size_t tag_off = pos_;
    literal("</");
    std::string qname = parse_name_token();
    skip_ws();
    if (!literal(">")) fail("malformed close tag");

    std::size_t colon = qname.find(':');
    std::string_view prefix, local;
    if (colon == std::string::npos) {
        local = qname;
    } else {
        prefix = std::string_view(qname).substr(0, colon);
        local = std::string_view(qname).substr(colon + 1);
        if (prefix.empty() || local.empty() ||
            local.find(':') != std::string_view::npos)
            fail_at("ill-formed qualified name '" + qname + "'", tag_off);
    }
    std::string encoded = resolve(prefix, local, false, tag_off);
    if (open_stack_.empty())
        fail_at("close tag without matching open tag", tag_off);
    if (encoded != open_stack_.back())
        fail_at("close tag '" + encoded + "' does not match open tag '" +
                    open_stack_.back() + "'",
                tag_off);
    pending_.push_back(Event::close(encoded));
    open_stack_.pop_back();
    std::uint32_t bindings = ns_counts_.back();
    ns_counts_.pop_back();
    while (bindings--) ns_stack_.pop_back();
}

std::vector<Event> tokenize(std::string_view document, StreamConfig config) {
    XmlTokenizer tok(document, config);
    std::vector<Event> out;
    while (auto e = tok.next()) out.push_back(std::move(*e));
    return out;
}

TypedEvent abstract_event(const Event& e, const DatatypeSystem& dts) {
    switch (e.kind) {
    case EventKind::Open: return TypedEvent::open(e.value);
    case EventKind::Close: return TypedEvent::close(e.value);
    default: return TypedEvent::data(dts.types(e.value));
    }
}

std::vector<TypedEvent> abstract(std::span<const Event> events,
                                 const DatatypeSystem& dts) {
    std::vector<TypedEvent> out;
    out.reserve(events.size());
    for (const Event& e : events) out.push_back(abstract_event(e, dts));
    return out;
}

} // namespace xvpa
