#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "support/dt_oracle.hpp"
#include "support/dt_samplers.hpp"
#include "xvpa/datatypes.hpp"

using namespace xvpa;
using xvpa::testing::LexicalSampler;
using xvpa::testing::PosetOracle;
using xvpa::testing::to_set;

namespace {

std::set<Datatype> named(std::initializer_list<const char*> names) {
    std::set<Datatype> out;
    for (const char* n : names) {
        auto d = datatype_from_name(n);
        REQUIRE(d.has_value());
        out.insert(*d);
    }
    return out;
}

std::string render(const std::set<Datatype>& s) {
    std::string out;
    for (Datatype d : s) {
        out += datatype_name(d);
        out += " ";
    }
    return out;
}

} // namespace

TEST_CASE("44 datatypes with unique names") {
    std::set<std::string_view> seen;
    for (std::size_t i = 0; i < kDatatypeCount; ++i) {
        Datatype d = static_cast<Datatype>(i);
        CHECK(datatype_from_name(datatype_name(d)) == d);
        seen.insert(datatype_name(d));
    }
    CHECK(seen.size() == 44);
    CHECK(datatype_from_name("float") == std::nullopt);
    CHECK(datatype_from_name("ID") == std::nullopt);
}

TEST_CASE("leq agrees with independent reachability oracle") {
    const auto& dts = DatatypeSystem::instance();
    const auto& oracle = PosetOracle::get();
    for (std::size_t a = 0; a < kDatatypeCount; ++a)
        for (std::size_t b = 0; b < kDatatypeCount; ++b) {
            Datatype da = static_cast<Datatype>(a);
            Datatype db = static_cast<Datatype>(b);
            CHECK(dts.leq(da, db) == oracle.leq(da, db));
        }
    CHECK(dts.leq(Datatype::Boolean0, Datatype::BooleanNum));
    CHECK(dts.leq(Datatype::Decimal, Datatype::String));
    CHECK_FALSE(dts.leq(Datatype::String, Datatype::Decimal));
    CHECK_FALSE(dts.leq(Datatype::GYear, Datatype::Date));
}

TEST_CASE("string is the unique top") {
    const auto& dts = DatatypeSystem::instance();
    for (std::size_t i = 0; i < kDatatypeCount; ++i)
        CHECK(dts.leq(static_cast<Datatype>(i), Datatype::String));
    CHECK(dts.cl_inverse({Datatype::String}).size() == 44);
}

TEST_CASE("canonical order is a linear extension with full coverage") {
    const auto& dts = DatatypeSystem::instance();
    auto order = dts.canonical_order();
    REQUIRE(order.size() == 44);
    std::set<Datatype> seen;
    for (Datatype d : order) seen.insert(d);
    CHECK(seen.size() == 44);
    for (std::size_t i = 0; i < kDatatypeCount; ++i)
        for (std::size_t j = 0; j < kDatatypeCount; ++j) {
            Datatype a = static_cast<Datatype>(i);
            Datatype b = static_cast<Datatype>(j);
            if (a != b && dts.leq(a, b))
                CHECK(dts.canonical_rank(a) < dts.canonical_rank(b));
        }
}

TEST_CASE("canonical order is frozen") {
    const char* expected[] = {
        "anyURI", "base64Binary", "base64BinaryLF", "boolean0", "boolean1",
        "booleanNum", "boolean", "byte", "date", "dateTimeDuration",
        "dateTimeStamp", "evenLenInteger", "gDay", "gMonth", "gMonthDay",
        "gYear", "gYearMonth", "hexBinary", "language", "NCName", "QName",
        "Name", "negativeInteger", "nonPositiveInteger", "positiveInteger",
        "time", "dateTime", "unsignedByte", "short", "unsignedShort", "int",
        "unsignedInt", "long", "unsignedLong", "nonNegativeInteger", "integer",
        "decimal", "double", "yearMonthDuration", "duration", "NMTOKEN",
        "token", "normalizedString", "string",
    };
    auto order = DatatypeSystem::instance().canonical_order();
    REQUIRE(order.size() == std::size(expected));
    for (std::size_t i = 0; i < order.size(); ++i)
        CHECK(datatype_name(order[i]) == expected[i]);
}

TEST_CASE("lexical_match handpicked vectors") {
    auto ok = [](const char* name, std::string_view s) {
        auto d = datatype_from_name(name);
        REQUIRE(d.has_value());
        INFO(name, " should match '", std::string(s), "'");
        CHECK(DatatypeSystem::lexical_match(*d, s));
    };
    auto no = [](const char* name, std::string_view s) {
        auto d = datatype_from_name(name);
        REQUIRE(d.has_value());
        INFO(name, " should reject '", std::string(s), "'");
        CHECK_FALSE(DatatypeSystem::lexical_match(*d, s));
    };

    ok("string", "");
    ok("string", "any\nthing\tat all ");
    ok("normalizedString", "  spaced  out  ");
    no("normalizedString", "tab\there");
    ok("token", "one two three");
    no("token", " leading");
    no("token", "trailing ");
    no("token", "double  space");
    ok("NMTOKEN", "-.:123abc");
    no("NMTOKEN", "has space");
    no("NMTOKEN", "");
    ok("Name", ":colonstart");
    ok("Name", "_x.1-y");
    no("Name", "1digitstart");
    ok("QName", "ns:local");
    no("QName", ":nolocal");
    no("QName", "a:b:c");
    ok("NCName", "caf\xC3\xA9");
    no("NCName", "with:colon");
    ok("language", "en");
    ok("language", "en-US-x9");
    no("language", "toolonglang1");
    no("language", "en--us");
    ok("anyURI", "http://example.com/index.html");
    ok("anyURI", "file:///etc/hosts");
    ok("anyURI", "s3://bucket/key?x=1#frag");
    no("anyURI", "example.com/no-scheme");
    no("anyURI", "mailto:opaque@part");
    no("anyURI", "http://no-path.example.com");
    ok("boolean", "true");
    ok("boolean", "0");
    no("boolean", "TRUE");
    ok("boolean0", "0");
    no("boolean0", "1");
    ok("boolean1", "1");
    ok("booleanNum", "0");
    ok("booleanNum", "1");
    no("booleanNum", "true");
    ok("byte", "-128");
    ok("byte", "0042");
    no("byte", "128");
    no("byte", "1968");
    ok("unsignedByte", "255");
    no("unsignedByte", "-1");
    no("unsignedByte", "256");
    ok("short", "32767");
    no("short", "32768");
    ok("int", "-2147483648");
    no("int", "2147483648");
    ok("long", "9223372036854775807");
    no("long", "9223372036854775808");
    ok("unsignedLong", "18446744073709551615");
    no("unsignedLong", "18446744073709551616");
    ok("integer", "-000123");
    no("integer", "+5");
    no("integer", "12.0");
    ok("nonNegativeInteger", "000");
    no("nonNegativeInteger", "-1");
    ok("nonPositiveInteger", "-7");
    ok("nonPositiveInteger", "0");
    no("nonPositiveInteger", "7");
    ok("positiveInteger", "0001");
    no("positiveInteger", "0");
    ok("negativeInteger", "-01");
    no("negativeInteger", "-0");
    ok("evenLenInteger", "1234");
    no("evenLenInteger", "123");
    no("evenLenInteger", "");
    ok("decimal", "1000.00");
    ok("decimal", "-.5");
    ok("decimal", "3.");
    no("decimal", "1e5");
    no("decimal", ".");
    ok("double", "1e5");
    ok("double", "-2.75E-10");
    ok("double", "INF");
    ok("double", "-INF");
    ok("double", "NaN");
    no("double", "1e+5");
    no("double", "inf");
    ok("duration", "P1Y2M3DT4H5M6.7S");
    ok("duration", "-PT0.5S");
    no("duration", "P");
    no("duration", "PT");
    no("duration", "P1S");
    ok("yearMonthDuration", "P2Y");
    ok("yearMonthDuration", "-P1Y6M");
    no("yearMonthDuration", "P1D");
    ok("dateTimeDuration", "P3DT1H");
    ok("dateTimeDuration", "PT10M");
    no("dateTimeDuration", "P1M");
    ok("dateTime", "2001-05-15T21:32:52");
    ok("dateTime", "2001-05-15");
    ok("dateTime", "21:32:52Z");
    ok("dateTime", "2001-05-15T21:32:52.126-05:00");
    no("dateTime", "2001-05-15 21:32:52");
    ok("dateTimeStamp", "2001-05-15T21:32:52Z");
    no("dateTimeStamp", "2001-05-15T21:32:52");
    no("dateTimeStamp", "2001-05-15Z");
    ok("date", "-0045-01-01");
    ok("date", "12001-12-31-14:00");
    no("date", "2001-13-01");
    no("date", "01-01-2001");
    ok("time", "00:00:00");
    ok("time", "23:59:59.999Z");
    no("time", "24:00:00");
    ok("gYear", "1968");
    ok("gYear", "-0500");
    ok("gYear", "12000");
    no("gYear", "068");
    no("gYear", "02000");
    no("gYear", "1968Z");
    ok("gYearMonth", "2001-10");
    ok("gYearMonth", "2001-10Z");
    no("gYearMonth", "2001-13");
    ok("gMonth", "--05");
    ok("gMonth", "--05-08:00");
    no("gMonth", "--13");
    ok("gMonthDay", "--05-15");
    no("gMonthDay", "--05-32");
    ok("gDay", "---15");
    ok("gDay", "---01Z");
    no("gDay", "---00");
    ok("hexBinary", "");
    ok("hexBinary", "0FB8");
    ok("hexBinary", "deadBEEF");
    no("hexBinary", "0FB");
    no("hexBinary", "0G");
    ok("base64Binary", "");
    ok("base64Binary", "TWFu");
    ok("base64Binary", "TWE=");
    ok("base64Binary", "TQ==");
    ok("base64Binary", "T Q = =");
    no("base64Binary", "TWFuZ g==x");
    no("base64Binary", "TQ=");
    no("base64Binary", "TW==");
    no("base64Binary", " TWFu");
    no("base64Binary", "TW  Fu");
    ok("base64BinaryLF", "TWFu\nTWFu");
    no("base64BinaryLF", "TWFu\n\nTWFu");
    no("base64Binary", "TWFu\nTWFu");
}

TEST_CASE("minimal type sets for known data") {
    const auto& dts = DatatypeSystem::instance();
    auto check = [&](std::string_view text, std::set<Datatype> expect) {
        auto got = to_set(dts.types(text));
        INFO("types('", std::string(text), "') = ", render(got));
        CHECK(got == expect);
    };
    check("0", named({"boolean0"}));
    check("1", named({"boolean1"}));
    check("true", named({"language", "boolean", "base64Binary"}));
    check("1000.00", named({"decimal"}));
    check("nm0040", named({"NCName"}));
    check("TEXT", named({"language", "base64Binary"}));
    check("X", named({"language"}));
    check("", named({"hexBinary", "base64Binary"}));
    check("2001", named({"short", "unsignedShort", "positiveInteger",
                         "evenLenInteger", "gYear", "base64Binary"}));
    check("2001: A Space Odyssey", named({"token"}));
    check("S. Kubrick", named({"token"}));
    check("A ", named({"normalizedString"}));
    check("1234' or '1'='1", named({"token"}));

    CHECK(dts.first_type("0") == Datatype::Boolean0);
    CHECK(dts.first_type("1000.00") == Datatype::Decimal);
    CHECK(dts.first_type("X") == Datatype::Language);
    CHECK(dts.first_type("true") == Datatype::Base64Binary);
    CHECK(datatype_name(dts.first_type("2001")) == "base64Binary");
}

TEST_CASE("cl_inverse frozen values and algebra") {
    const auto& dts = DatatypeSystem::instance();
    CHECK(to_set(dts.cl_inverse({Datatype::BooleanNum})) ==
          named({"booleanNum", "boolean0", "boolean1"}));
    CHECK(to_set(dts.cl_inverse({Datatype::Language})) == named({"language"}));
    CHECK(to_set(dts.cl_inverse({Datatype::Decimal})) ==
          named({"boolean0", "boolean1", "booleanNum", "byte", "unsignedByte",
                 "short", "unsignedShort", "int", "unsignedInt", "long",
                 "unsignedLong", "integer", "nonNegativeInteger",
                 "nonPositiveInteger", "positiveInteger", "negativeInteger",
                 "evenLenInteger", "decimal", "gYear"}));
    CHECK(dts.cl_inverse({}).empty());

    LexicalSampler sampler(7);
    for (int trial = 0; trial < 200; ++trial) {
        DatatypeSet s;
        std::size_t n = 1 + sampler.rng()() % 3;
        for (std::size_t i = 0; i < n; ++i)
            s.insert(static_cast<Datatype>(sampler.rng()() % kDatatypeCount));
        DatatypeSet closed = dts.cl_inverse(s);
        CHECK(s.subset_of(closed));
        CHECK(dts.cl_inverse(closed) == closed);
        DatatypeSet bigger = s;
        bigger.insert(static_cast<Datatype>(sampler.rng()() % kDatatypeCount));
        CHECK(closed.subset_of(dts.cl_inverse(bigger)));
    }
}

TEST_CASE("every Hasse edge is lexically sound under sampling") {
    const auto& dts = DatatypeSystem::instance();
    LexicalSampler sampler(20240817);
    for (auto [a, b] : DatatypeSystem::hasse_edges()) {
        for (int i = 0; i < 200; ++i) {
            std::string w = sampler.sample(a);
            INFO(datatype_name(a), " sample '", w, "' must be in ",
                 datatype_name(b));
            REQUIRE(DatatypeSystem::lexical_match(a, w));
            CHECK(DatatypeSystem::lexical_match(b, w));
        }
        CHECK(dts.leq(a, b));
    }
}

TEST_CASE("types() is a sound, complete, nonempty antichain") {
    const auto& dts = DatatypeSystem::instance();
    const auto& oracle = PosetOracle::get();
    LexicalSampler sampler(99);
    for (int trial = 0; trial < 4000; ++trial) {
        std::string w;
        switch (trial % 3) {
        case 0: w = sampler.random_ascii(18); break;
        case 1:
            w = sampler.sample(static_cast<Datatype>(sampler.rng()() % kDatatypeCount));
            break;
        default:
            w = sampler.sample(static_cast<Datatype>(sampler.rng()() % kDatatypeCount));
            if (!w.empty()) w[sampler.rng()() % w.size()] =
                static_cast<char>(0x20 + sampler.rng()() % 0x5F);
            break;
        }
        auto got = to_set(dts.types(w));
        INFO("types('", w, "') = ", render(got));
        CHECK_FALSE(got.empty());
        CHECK(got == oracle.minimal_types(w));
        for (Datatype m : got) {
            CHECK(DatatypeSystem::lexical_match(m, w));
            for (Datatype other : got)
                if (other != m) CHECK_FALSE(dts.leq(m, other));
        }
        for (std::size_t i = 0; i < kDatatypeCount; ++i) {
            Datatype d = static_cast<Datatype>(i);
            if (DatatypeSystem::lexical_match(d, w)) {
                bool covered = false;
                for (Datatype m : got)
                    if (dts.leq(m, d)) covered = true;
                CHECK(covered);
            }
        }
        Datatype f = dts.first_type(w);
        CHECK(got.count(f) == 1);
        for (Datatype m : got)
            CHECK(dts.canonical_rank(f) <= dts.canonical_rank(m));
    }
}
