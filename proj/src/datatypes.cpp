#include "xvpa/datatypes.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstring>
#include <string>

#include "chars.hpp"

namespace xvpa {

namespace {

constexpr std::array<std::string_view, kDatatypeCount> kNames = {
    "string",
    "normalizedString",
    "token",
    "NMTOKEN",
    "Name",
    "QName",
    "NCName",
    "language",
    "anyURI",
    "boolean",
    "boolean0",
    "boolean1",
    "booleanNum",
    "byte",
    "unsignedByte",
    "short",
    "unsignedShort",
    "int",
    "unsignedInt",
    "long",
    "unsignedLong",
    "integer",
    "nonNegativeInteger",
    "nonPositiveInteger",
    "positiveInteger",
    "negativeInteger",
    "evenLenInteger",
    "decimal",
    "double",
    "duration",
    "yearMonthDuration",
    "dateTimeDuration",
    "dateTime",
    "dateTimeStamp",
    "date",
    "time",
    "gYear",
    "gYearMonth",
    "gMonth",
    "gMonthDay",
    "gDay",
    "hexBinary",
    "base64Binary",
    "base64BinaryLF",
};

using D = Datatype;

/* Cover edges a <= b of the subtype poset. string is the unique top. */
constexpr std::pair<D, D> kHasse[] = {
    {D::Boolean0, D::BooleanNum},
    {D::Boolean0, D::NonPositiveInteger},
    {D::Boolean1, D::BooleanNum},
    {D::Boolean1, D::PositiveInteger},
    {D::BooleanNum, D::Boolean},
    {D::BooleanNum, D::UnsignedByte},
    {D::BooleanNum, D::Byte},
    {D::Boolean, D::Nmtoken},
    {D::UnsignedByte, D::UnsignedShort},
    {D::UnsignedByte, D::Short},
    {D::UnsignedShort, D::UnsignedInt},
    {D::UnsignedShort, D::Int},
    {D::UnsignedInt, D::UnsignedLong},
    {D::UnsignedInt, D::Long},
    {D::UnsignedLong, D::NonNegativeInteger},
    {D::PositiveInteger, D::NonNegativeInteger},
    {D::EvenLenInteger, D::NonNegativeInteger},
    {D::EvenLenInteger, D::HexBinary},
    {D::NonNegativeInteger, D::Integer},
    {D::Byte, D::Short},
    {D::Short, D::Int},
    {D::Int, D::Long},
    {D::Long, D::Integer},
    {D::NegativeInteger, D::NonPositiveInteger},
    {D::NonPositiveInteger, D::Integer},
    {D::GYear, D::Integer},
    {D::Integer, D::Decimal},
    {D::Decimal, D::Double},
    {D::Double, D::Nmtoken},
    {D::GMonth, D::Nmtoken},
    {D::GDay, D::Nmtoken},
    {D::GMonthDay, D::Nmtoken},
    {D::GYearMonth, D::Nmtoken},
    {D::DateTime, D::Nmtoken},
    {D::Date, D::DateTime},
    {D::Time, D::DateTime},
    {D::DateTimeStamp, D::DateTime},
    {D::Duration, D::Nmtoken},
    {D::YearMonthDuration, D::Duration},
    {D::DateTimeDuration, D::Duration},
    {D::Language, D::NCName},
    {D::NCName, D::QName},
    {D::QName, D::Name},
    {D::Name, D::Nmtoken},
    {D::Nmtoken, D::Token},
    {D::AnyUri, D::Token},
    {D::HexBinary, D::Token},
    {D::Base64Binary, D::Token},
    {D::Base64Binary, D::Base64BinaryLf},
    {D::Base64BinaryLf, D::String},
    {D::Token, D::NormalizedString},
    {D::NormalizedString, D::String},
};

constexpr bool is_digit(char c) { return c >= '0' && c <= '9'; }
constexpr bool is_alpha(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
constexpr bool is_hex(char c) {
    return is_digit(c) || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!is_digit(c)) return false;
    return true;
}

bool all_zero(std::string_view s) {
    for (char c : s)
        if (c != '0') return false;
    return true;
}

/* Numeric comparison of two digit strings (value(a) <= value(b)). */
bool digits_le(std::string_view a, std::string_view b) {
    while (a.size() > 1 && a.front() == '0') a.remove_prefix(1);
    while (b.size() > 1 && b.front() == '0') b.remove_prefix(1);
    if (a.size() != b.size()) return a.size() < b.size();
    return a <= b;
}

/* '-'? digits with magnitude bounds for the bounded integer types. */
bool bounded_integer(std::string_view s, std::string_view pos_max,
                     std::string_view neg_max) {
    bool neg = !s.empty() && s.front() == '-';
    if (neg) s.remove_prefix(1);
    if (!all_digits(s)) return false;
    return digits_le(s, neg ? neg_max : pos_max);
}

bool unsigned_integer(std::string_view s, std::string_view max) {
    return all_digits(s) && digits_le(s, max);
}

using detail::name_char;
using detail::name_start_char;
using detail::next_codepoint;

enum class NameKind { Nmtoken, Name, NCName };

bool match_name_class(std::string_view s, NameKind kind) {
    if (s.empty()) return false;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        std::int32_t cp = next_codepoint(s, i);
        if (cp < 0) return false;
        if (kind == NameKind::NCName && cp == ':') return false;
        if (first && kind != NameKind::Nmtoken) {
            if (!name_start_char(cp)) return false;
        } else if (!name_char(cp)) {
            return false;
        }
        first = false;
    }
    return true;
}

bool match_qname(std::string_view s) {
    std::size_t colon = s.find(':');
    if (colon == std::string_view::npos) return match_name_class(s, NameKind::NCName);
    if (s.find(':', colon + 1) != std::string_view::npos) return false;
    return match_name_class(s.substr(0, colon), NameKind::NCName) &&
           match_name_class(s.substr(colon + 1), NameKind::NCName);
}

bool match_language(std::string_view s) {
    std::size_t i = 0, run = 0;
    bool first_part = true;
    while (i <= s.size()) {
        if (i == s.size() || s[i] == '-') {
            if (run == 0 || run > 8) return false;
            if (i == s.size()) return true;
            first_part = false;
            run = 0;
        } else if (is_alpha(s[i]) || (!first_part && is_digit(s[i]))) {
            ++run;
        } else {
            return false;
        }
        ++i;
    }
    return false;
}

/* RFC 2396 URI with explicit scheme and a defined ('/'-rooted) path.
   Opaque forms (mailto:, urn:) are excluded on purpose. */
bool uri_char(char c) {
    return is_alpha(c) || is_digit(c) ||
           (c != '\0' && std::strchr(";/?:@&=+$,-_.!~*'()", c) != nullptr);
}

bool uri_tail_ok(std::string_view s, std::size_t i) {
    int fragments = 0;
    for (; i < s.size(); ++i) {
        if (s[i] == '%') {
            if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))
                return false;
            i += 2;
        } else if (s[i] == '#') {
            if (++fragments > 1) return false;
        } else if (!uri_char(s[i])) {
            return false;
        }
    }
    return true;
}

bool match_any_uri(std::string_view s) {
    std::size_t i = 0;
    if (i >= s.size() || !is_alpha(s[i])) return false;
    while (i < s.size() &&
           (is_alpha(s[i]) || is_digit(s[i]) || s[i] == '+' || s[i] == '-' || s[i] == '.'))
        ++i;
    if (i >= s.size() || s[i] != ':') return false;
    ++i;
    if (s.substr(i, 2) == "//") {
        i += 2;
        while (i < s.size() && s[i] != '/' && s[i] != '?' && s[i] != '#') {
            if (s[i] == '%') {
                if (i + 2 >= s.size() || !is_hex(s[i + 1]) || !is_hex(s[i + 2]))
                    return false;
                i += 2;
            } else if (!uri_char(s[i])) {
                return false;
            }
            ++i;
        }
    }
    if (i >= s.size() || s[i] != '/') return false;
    return uri_tail_ok(s, i);
}

/* Date/time component parsers; each consumes from pos and reports success. */
bool parse_fixed2(std::string_view s, std::size_t& pos, int lo, int hi) {
    if (pos + 2 > s.size() || !is_digit(s[pos]) || !is_digit(s[pos + 1]))
        return false;
    int v = (s[pos] - '0') * 10 + (s[pos + 1] - '0');
    if (v < lo || v > hi) return false;
    pos += 2;
    return true;
}

/* 4 digits, or 5+ digits without a leading zero. */
bool parse_year_digits(std::string_view s, std::size_t& pos) {
    std::size_t start = pos;
    while (pos < s.size() && is_digit(s[pos])) ++pos;
    std::size_t n = pos - start;
    if (n == 4) return true;
    if (n > 4 && s[start] != '0') return true;
    pos = start;
    return false;
}

bool parse_year(std::string_view s, std::size_t& pos) {
    if (pos < s.size() && s[pos] == '-') {
        std::size_t p = pos + 1;
        if (parse_year_digits(s, p)) {
            pos = p;
            return true;
        }
        return false;
    }
    return parse_year_digits(s, pos);
}

/* Timezone: 'Z' or '-'HH':'MM with HH <= 14. Consumes only on match. */
void parse_opt_tz(std::string_view s, std::size_t& pos) {
    if (pos < s.size() && s[pos] == 'Z') {
        ++pos;
        return;
    }
    std::size_t p = pos;
    if (p < s.size() && s[p] == '-') {
        ++p;
        if (parse_fixed2(s, p, 0, 14) && p < s.size() && s[p] == ':') {
            ++p;
            if (parse_fixed2(s, p, 0, 59)) pos = p;
        }
    }
}

bool parse_date_core(std::string_view s, std::size_t& pos) {
    if (!parse_year(s, pos)) return false;
    if (pos >= s.size() || s[pos] != '-') return false;
    ++pos;
    if (!parse_fixed2(s, pos, 1, 12)) return false;
    if (pos >= s.size() || s[pos] != '-') return false;
    ++pos;
    return parse_fixed2(s, pos, 1, 31);
}

bool parse_time_core(std::string_view s, std::size_t& pos) {
    if (!parse_fixed2(s, pos, 0, 23)) return false;
    if (pos >= s.size() || s[pos] != ':') return false;
    ++pos;
    if (!parse_fixed2(s, pos, 0, 59)) return false;
    if (pos >= s.size() || s[pos] != ':') return false;
    ++pos;
    if (!parse_fixed2(s, pos, 0, 59)) return false;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        if (pos >= s.size() || !is_digit(s[pos])) return false;
        while (pos < s.size() && is_digit(s[pos])) ++pos;
    }
    return true;
}

bool match_date(std::string_view s) {
    std::size_t pos = 0;
    if (!parse_date_core(s, pos)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_time(std::string_view s) {
    std::size_t pos = 0;
    if (!parse_time_core(s, pos)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_date_time_stamp(std::string_view s) {
    std::size_t pos = 0;
    if (!parse_date_core(s, pos)) return false;
    if (pos >= s.size() || s[pos] != 'T') return false;
    ++pos;
    if (!parse_time_core(s, pos)) return false;
    std::size_t before = pos;
    parse_opt_tz(s, pos);
    return pos != before && pos == s.size();
}

/* Union lexical space: date | time | date'T'time, each with optional tz. */
bool match_date_time(std::string_view s) {
    if (match_date(s) || match_time(s)) return true;
    std::size_t pos = 0;
    if (!parse_date_core(s, pos)) return false;
    if (pos >= s.size() || s[pos] != 'T') return false;
    ++pos;
    if (!parse_time_core(s, pos)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_g_year(std::string_view s) {
    std::size_t pos = 0;
    return parse_year(s, pos) && pos == s.size();
}

bool match_g_year_month(std::string_view s) {
    std::size_t pos = 0;
    if (!parse_year(s, pos)) return false;
    if (pos >= s.size() || s[pos] != '-') return false;
    ++pos;
    if (!parse_fixed2(s, pos, 1, 12)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_g_month(std::string_view s) {
    if (s.substr(0, 2) != "--") return false;
    std::size_t pos = 2;
    if (!parse_fixed2(s, pos, 1, 12)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_g_month_day(std::string_view s) {
    if (s.substr(0, 2) != "--") return false;
    std::size_t pos = 2;
    if (!parse_fixed2(s, pos, 1, 12)) return false;
    if (pos >= s.size() || s[pos] != '-') return false;
    ++pos;
    if (!parse_fixed2(s, pos, 1, 31)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool match_g_day(std::string_view s) {
    if (s.substr(0, 3) != "---") return false;
    std::size_t pos = 3;
    if (!parse_fixed2(s, pos, 1, 31)) return false;
    parse_opt_tz(s, pos);
    return pos == s.size();
}

bool parse_number_unit(std::string_view s, std::size_t& pos, char unit,
                       bool frac_allowed = false) {
    std::size_t p = pos;
    if (p >= s.size() || !is_digit(s[p])) return false;
    while (p < s.size() && is_digit(s[p])) ++p;
    if (frac_allowed && p < s.size() && s[p] == '.') {
        ++p;
        if (p >= s.size() || !is_digit(s[p])) return false;
        while (p < s.size() && is_digit(s[p])) ++p;
    }
    if (p >= s.size() || s[p] != unit) return false;
    pos = p + 1;
    return true;
}

enum class DurKind { Full, YearMonth, DayTime };

bool match_duration(std::string_view s, DurKind kind) {
    std::size_t pos = 0;
    if (pos < s.size() && s[pos] == '-') ++pos;
    if (pos >= s.size() || s[pos] != 'P') return false;
    ++pos;
    int fields = 0;
    if (kind != DurKind::DayTime) {
        if (parse_number_unit(s, pos, 'Y')) ++fields;
        if (parse_number_unit(s, pos, 'M')) ++fields;
    }
    if (kind != DurKind::YearMonth) {
        if (parse_number_unit(s, pos, 'D')) ++fields;
        if (pos < s.size() && s[pos] == 'T') {
            ++pos;
            int tfields = 0;
            if (parse_number_unit(s, pos, 'H')) ++tfields;
            if (parse_number_unit(s, pos, 'M')) ++tfields;
            if (parse_number_unit(s, pos, 'S', true)) ++tfields;
            if (tfields == 0) return false;
            fields += tfields;
        }
    }
    return fields > 0 && pos == s.size();
}

/* '-'? (D+ ('.' D*)? | '.' D+) */
bool parse_decimal_mantissa(std::string_view s, std::size_t& pos) {
    std::size_t p = pos;
    bool digits_before = false, digits_after = false;
    while (p < s.size() && is_digit(s[p])) {
        ++p;
        digits_before = true;
    }
    if (p < s.size() && s[p] == '.') {
        ++p;
        while (p < s.size() && is_digit(s[p])) {
            ++p;
            digits_after = true;
        }
        if (!digits_before && !digits_after) return false;
    } else if (!digits_before) {
        return false;
    }
    pos = p;
    return true;
}

bool match_decimal(std::string_view s) {
    std::size_t pos = 0;
    if (pos < s.size() && s[pos] == '-') ++pos;
    return parse_decimal_mantissa(s, pos) && pos == s.size();
}

bool match_double(std::string_view s) {
    if (s == "INF" || s == "-INF" || s == "NaN") return true;
    std::size_t pos = 0;
    if (pos < s.size() && s[pos] == '-') ++pos;
    if (!parse_decimal_mantissa(s, pos)) return false;
    if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
        ++pos;
        if (pos < s.size() && s[pos] == '-') ++pos;
        if (pos >= s.size() || !is_digit(s[pos])) return false;
        while (pos < s.size() && is_digit(s[pos])) ++pos;
    }
    return pos == s.size();
}

bool is_b64(char c) {
    return is_alpha(c) || is_digit(c) || c == '+' || c == '/';
}
bool is_b16(char c) {
    return c != '\0' && std::strchr("AEIMQUYcgkosw048", c) != nullptr;
}
bool is_b04(char c) { return c != '\0' && std::strchr("AQgw", c) != nullptr; }

bool is_sep(char c, bool lf) { return c == ' ' || (lf && c == '\n'); }

/* XSD base64Binary: single separators between characters only; padded
   groups of four; the character before '=' constrained to the partial-
   sextet alphabets. lf additionally admits '\n' as a separator. */
bool match_base64(std::string_view s, bool lf) {
    if (s.empty()) return true;
    if (is_sep(s.front(), lf) || is_sep(s.back(), lf)) return false;
    std::string core;
    core.reserve(s.size());
    bool prev_sep = false;
    for (char c : s) {
        if (is_sep(c, lf)) {
            if (prev_sep) return false;
            prev_sep = true;
        } else {
            prev_sep = false;
            core.push_back(c);
        }
    }
    if (core.size() % 4 != 0) return false;
    if (core.empty()) return false; // separators only; nonempty s had no chars
    std::size_t pad = 0;
    if (core.back() == '=') {
        pad = (core[core.size() - 2] == '=') ? 2 : 1;
    }
    std::size_t body = core.size() - pad;
    for (std::size_t i = 0; i < body; ++i)
        if (!is_b64(core[i])) return false;
    if (pad == 1 && !is_b16(core[body - 1])) return false;
    if (pad == 2 && !is_b04(core[body - 1])) return false;
    return true;
}

bool match_hex_binary(std::string_view s) {
    if (s.size() % 2 != 0) return false;
    for (char c : s)
        if (!is_hex(c)) return false;
    return true;
}

bool match_normalized_string(std::string_view s) {
    return s.find_first_of("\t\n\r") == std::string_view::npos;
}

bool match_token(std::string_view s) {
    if (!match_normalized_string(s)) return false;
    if (!s.empty() && (s.front() == ' ' || s.back() == ' ')) return false;
    return s.find("  ") == std::string_view::npos;
}

} // namespace

std::string_view datatype_name(Datatype d) {
    return kNames[static_cast<std::size_t>(d)];
}

std::optional<Datatype> datatype_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kDatatypeCount; ++i)
        if (kNames[i] == name) return static_cast<Datatype>(i);
    return std::nullopt;
}

std::vector<Datatype> DatatypeSet::to_vector() const {
    std::vector<Datatype> out;
    out.reserve(size());
    for (Datatype d : *this) out.push_back(d);
    return out;
}

bool DatatypeSystem::lexical_match(Datatype d, std::string_view s) {
    switch (d) {
    case D::String: return true;
    case D::NormalizedString: return match_normalized_string(s);
    case D::Token: return match_token(s);
    case D::Nmtoken: return match_name_class(s, NameKind::Nmtoken);
    case D::Name: return match_name_class(s, NameKind::Name);
    case D::QName: return match_qname(s);
    case D::NCName: return match_name_class(s, NameKind::NCName);
    case D::Language: return match_language(s);
    case D::AnyUri: return match_any_uri(s);
    case D::Boolean: return s == "true" || s == "false" || s == "1" || s == "0";
    case D::Boolean0: return s == "0";
    case D::Boolean1: return s == "1";
    case D::BooleanNum: return s == "0" || s == "1";
    case D::Byte: return bounded_integer(s, "127", "128");
    case D::UnsignedByte: return unsigned_integer(s, "255");
    case D::Short: return bounded_integer(s, "32767", "32768");
    case D::UnsignedShort: return unsigned_integer(s, "65535");
    case D::Int: return bounded_integer(s, "2147483647", "2147483648");
    case D::UnsignedInt: return unsigned_integer(s, "4294967295");
    case D::Long:
        return bounded_integer(s, "9223372036854775807", "9223372036854775808");
    case D::UnsignedLong: return unsigned_integer(s, "18446744073709551615");
    case D::Integer:
        return !s.empty() && all_digits(s.front() == '-' ? s.substr(1) : s);
    case D::NonNegativeInteger: return all_digits(s);
    case D::NonPositiveInteger:
        if (all_digits(s)) return all_zero(s);
        return s.size() > 1 && s.front() == '-' && all_digits(s.substr(1));
    case D::PositiveInteger: return all_digits(s) && !all_zero(s);
    case D::NegativeInteger:
        return s.size() > 1 && s.front() == '-' && all_digits(s.substr(1)) &&
               !all_zero(s.substr(1));
    case D::EvenLenInteger: return all_digits(s) && s.size() % 2 == 0;
    case D::Decimal: return match_decimal(s);
    case D::Double: return match_double(s);
    case D::Duration: return match_duration(s, DurKind::Full);
    case D::YearMonthDuration: return match_duration(s, DurKind::YearMonth);
    case D::DateTimeDuration: return match_duration(s, DurKind::DayTime);
    case D::DateTime: return match_date_time(s);
    case D::DateTimeStamp: return match_date_time_stamp(s);
    case D::Date: return match_date(s);
    case D::Time: return match_time(s);
    case D::GYear: return match_g_year(s);
    case D::GYearMonth: return match_g_year_month(s);
    case D::GMonth: return match_g_month(s);
    case D::GMonthDay: return match_g_month_day(s);
    case D::GDay: return match_g_day(s);
    case D::HexBinary: return match_hex_binary(s);
    case D::Base64Binary: return match_base64(s, false);
    case D::Base64BinaryLf: return match_base64(s, true);
    }
    return false;
}

DatatypeSystem::DatatypeSystem() {
    for (std::size_t i = 0; i < kDatatypeCount; ++i)
        up_[i].insert(static_cast<Datatype>(i));
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [a, b] : kHasse) {
            DatatypeSet merged = up_[idx(a)] | up_[idx(b)];
            if (!(merged == up_[idx(a)])) {
                up_[idx(a)] = merged;
                changed = true;
            }
        }
    }
    for (std::size_t a = 0; a < kDatatypeCount; ++a)
        for (Datatype b : up_[a]) down_[idx(b)].insert(static_cast<Datatype>(a));

    /* Kahn linear extension; among ready elements always take the
       lexicographically least name, so the order is fully determined. */
    std::size_t emitted_count = 0;
    DatatypeSet emitted;
    while (emitted_count < kDatatypeCount) {
        Datatype best{};
        bool have = false;
        for (std::size_t i = 0; i < kDatatypeCount; ++i) {
            Datatype d = static_cast<Datatype>(i);
            if (emitted.contains(d)) continue;
            DatatypeSet below = down_[i];
            below.erase(d);
            if (!below.subset_of(emitted)) continue;
            if (!have || datatype_name(d) < datatype_name(best)) {
                best = d;
                have = true;
            }
        }
        assert(have);
        order_[emitted_count] = best;
        rank_[idx(best)] = emitted_count;
        emitted.insert(best);
        ++emitted_count;
    }
}

const DatatypeSystem& DatatypeSystem::instance() {
    static const DatatypeSystem system;
    return system;
}

bool DatatypeSystem::leq(Datatype a, Datatype b) const {
    return up_[idx(a)].contains(b);
}

DatatypeSet DatatypeSystem::types(std::string_view text) const {
    DatatypeSet matched;
    for (std::size_t i = 0; i < kDatatypeCount; ++i) {
        Datatype d = static_cast<Datatype>(i);
        if (lexical_match(d, text)) matched.insert(d);
    }
    DatatypeSet minimal;
    for (Datatype d : matched) {
        DatatypeSet strictly_below = down_[idx(d)];
        strictly_below.erase(d);
        if ((strictly_below & matched).empty()) minimal.insert(d);
    }
    return minimal;
}

Datatype DatatypeSystem::first_type(std::string_view text) const {
    DatatypeSet min = types(text);
    Datatype best{};
    std::size_t best_rank = kDatatypeCount;
    for (Datatype d : min) {
        if (rank_[idx(d)] < best_rank) {
            best_rank = rank_[idx(d)];
            best = d;
        }
    }
    return best;
}

DatatypeSet DatatypeSystem::cl_inverse(DatatypeSet s) const {
    DatatypeSet out;
    for (Datatype d : s) out |= down_[idx(d)];
    return out;
}

std::span<const Datatype> DatatypeSystem::canonical_order() const {
    return {order_, kDatatypeCount};
}

std::span<const std::pair<Datatype, Datatype>> DatatypeSystem::hasse_edges() {
    return {kHasse, std::size(kHasse)};
}

} // namespace xvpa
