#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "support/worked_example.hpp"
#include "xvpa/automaton.hpp"
#include "xvpa/errors.hpp"

using namespace xvpa;

namespace {

const TypeId& A = testsupport::kA;
const TypeId& AA = testsupport::kAA;
const TypeId& AB = testsupport::kAB;

const ModuleState& a_e = testsupport::kAe;
const ModuleState& a_a = testsupport::kAa;
const ModuleState& a_b = testsupport::kAb;
const ModuleState& ab_e = testsupport::kABe;

Xvpa fixture() { return testsupport::worked_xvpa(); }

/* Single-module automaton accepting exactly <r></r>. */
Xvpa trivial() {
    Xvpa x;
    ModuleState r_e{{"r"}, {}};
    x.sigma = {"r"};
    x.m0 = {"r"};
    x.mu = {{{"r"}, "r"}};
    x.finals = {r_e};
    Module m;
    m.states = {r_e};
    m.entry = r_e;
    m.exits = {r_e};
    x.modules = {{{"r"}, m}};
    return x;
}

Verdict run_doc(const Xvpa& x, std::string_view doc, DataMode mode = DataMode::Existential) {
    return validate_document(x, doc, DatatypeSystem::instance(), {}, mode).verdict;
}

ExpectedSymbol open_sym(std::string n) { return {TypedEventKind::Open, std::move(n)}; }
ExpectedSymbol close_sym(std::string n) { return {TypedEventKind::Close, std::move(n)}; }

}  // namespace

TEST_CASE("fixture passes every structural check") {
    Xvpa x = fixture();
    CHECK(structural_violations(x).empty());
    CHECK(check_single_exit(x).empty());
    CHECK(is_deterministic(x));
    CHECK(structural_violations(trivial()).empty());
}

TEST_CASE("accepts the defining document and in-language variants") {
    Xvpa x = fixture();
    CHECK(run_doc(x, "<a><a>10.0</a><b>TEXT</b><b></b></a>").accepted);
    CHECK(run_doc(x, "<a><a>5.0</a><b>X</b></a>").accepted);
    CHECK(run_doc(x, "<a><a>7</a><b></b></a>").accepted);
    CHECK(run_doc(x, "<a><a>-3.25</a><b>ok</b><b>go</b><b></b></a>").accepted);
    CHECK(run_doc(x, "<a><a>10.0</a><b>TEXT</b><b></b></a>", DataMode::FirstTypeStrict).accepted);

    CHECK(run_doc(trivial(), "<r></r>").accepted);
    CHECK(run_doc(trivial(), "<r/>").accepted);
    CHECK_FALSE(run_doc(trivial(), "<r>x</r>").accepted);
}

TEST_CASE("structural rejection reports position and admissible symbols") {
    Xvpa x = fixture();
    Verdict v = run_doc(x, "<a><b>X</b></a>");
    CHECK_FALSE(v.accepted);
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 2);
    CHECK(v.anomalies[0].category == AnomalyCategory::Structural);
    CHECK(v.anomalies[0].observed == "<b>");
    CHECK(v.anomalies[0].expected == std::set<ExpectedSymbol>{open_sym("a")});
}

TEST_CASE("unknown element names fall out as structural anomalies") {
    Verdict v = run_doc(fixture(), "<a><zz/></a>");
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 2);
    CHECK(v.anomalies[0].category == AnomalyCategory::Structural);
    CHECK(v.anomalies[0].expected == std::set<ExpectedSymbol>{open_sym("a")});

    Verdict w = run_doc(fixture(), "<wrong/>");
    REQUIRE(w.anomalies.size() == 1);
    CHECK(w.anomalies[0].position == 1);
    CHECK(w.anomalies[0].expected == std::set<ExpectedSymbol>{open_sym("a")});
}

TEST_CASE("content of the wrong datatype is a datatype anomaly") {
    Verdict v = run_doc(fixture(), "<a><a>xyz</a></a>");
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 3);
    CHECK(v.anomalies[0].category == AnomalyCategory::Datatype);
    CHECK(v.anomalies[0].expected.count({TypedEventKind::Data, "decimal"}) == 1);
    CHECK(v.anomalies[0].expected.count({TypedEventKind::Data, "byte"}) == 1);
    for (const ExpectedSymbol& s : v.anomalies[0].expected)
        CHECK(s.kind == TypedEventKind::Data);
}

TEST_CASE("missing required content is structural") {
    Verdict v = run_doc(fixture(), "<a><a></a></a>");
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 3);
    CHECK(v.anomalies[0].category == AnomalyCategory::Structural);
    for (const ExpectedSymbol& s : v.anomalies[0].expected)
        CHECK(s.kind == TypedEventKind::Data);
}

TEST_CASE("root closed before required children is structural") {
    Verdict v = run_doc(fixture(), "<a><a>1</a></a>");
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 5);
    CHECK(v.anomalies[0].category == AnomalyCategory::Structural);
    CHECK(v.anomalies[0].expected == std::set<ExpectedSymbol>{open_sym("b")});
}

TEST_CASE("data modes split exactly on unseen first types") {
    /* types("2001") leads with base64Binary canonically, but training only
       exhibited the decimal family; the existential mode still admits the
       short member, the strict mode must not. */
    Xvpa x = fixture();
    CHECK(run_doc(x, "<a><a>2001</a><b></b></a>").accepted);
    Verdict v = run_doc(x, "<a><a>2001</a><b></b></a>", DataMode::FirstTypeStrict);
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 3);
    CHECK(v.anomalies[0].category == AnomalyCategory::Datatype);
}

TEST_CASE("ill-matched event sequences are malformed") {
    Xvpa x = fixture();
    const auto dec = DatatypeSet{Datatype::Decimal};

    std::vector<TypedEvent> mismatch{TypedEvent::open("a"), TypedEvent::open("a"),
                                     TypedEvent::data(dec), TypedEvent::close("b")};
    Verdict v = validate(x, mismatch);
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 4);
    CHECK(v.anomalies[0].category == AnomalyCategory::Malformed);

    Verdict w = validate(x, std::vector<TypedEvent>{TypedEvent::close("a")});
    CHECK(w.anomalies[0].position == 1);
    CHECK(w.anomalies[0].category == AnomalyCategory::Malformed);

    std::vector<TypedEvent> accepted{
        TypedEvent::open("a"),  TypedEvent::open("a"), TypedEvent::data(dec),
        TypedEvent::close("a"), TypedEvent::open("b"), TypedEvent::close("b"),
        TypedEvent::close("a")};
    CHECK(validate(x, accepted).accepted);

    std::vector<TypedEvent> trailing = accepted;
    trailing.push_back(TypedEvent::open("a"));
    Verdict t = validate(x, trailing);
    REQUIRE(t.anomalies.size() == 1);
    CHECK(t.anomalies[0].position == 8);
    CHECK(t.anomalies[0].category == AnomalyCategory::Malformed);

    std::vector<TypedEvent> truncated{TypedEvent::open("a")};
    Verdict u = validate(x, truncated);
    REQUIRE(u.anomalies.size() == 1);
    CHECK(u.anomalies[0].position == 2);
    CHECK(u.anomalies[0].category == AnomalyCategory::Malformed);
    CHECK(u.anomalies[0].observed == "end of input");
    CHECK(u.anomalies[0].expected == std::set<ExpectedSymbol>{open_sym("a")});

    Verdict e = validate(x, std::vector<TypedEvent>{});
    CHECK(e.anomalies[0].position == 1);
    CHECK(e.anomalies[0].observed == "end of input");

    Verdict d = validate(x, std::vector<TypedEvent>{TypedEvent::data(dec)});
    CHECK(d.anomalies[0].position == 1);
    CHECK(d.anomalies[0].category == AnomalyCategory::Structural);
}

TEST_CASE("document syntax errors become malformed anomalies") {
    Xvpa x = fixture();
    DocumentVerdict dv =
        validate_document(x, "<a><a>1</a>", DatatypeSystem::instance());
    CHECK_FALSE(dv.verdict.accepted);
    REQUIRE(dv.verdict.anomalies.size() == 1);
    CHECK(dv.verdict.anomalies[0].category == AnomalyCategory::Malformed);
    CHECK(dv.verdict.anomalies[0].position == 5);
    CHECK(dv.events == 4);

    Verdict dtd = run_doc(x, "<!DOCTYPE a><a></a>");
    CHECK(dtd.anomalies[0].category == AnomalyCategory::Malformed);
    CHECK(dtd.anomalies[0].position == 1);
}

TEST_CASE("datatype anomaly positions count attribute events") {
    Verdict v = run_doc(fixture(), "<a><a>10.0</a><b>oops!</b></a>");
    REQUIRE(v.anomalies.size() == 1);
    CHECK(v.anomalies[0].position == 6);
    CHECK(v.anomalies[0].category == AnomalyCategory::Datatype);
}

TEST_CASE("single-exit checker names the missing return") {
    Xvpa x = fixture();
    x.modules.at(AB).returns.erase({ab_e, a_a, "b", a_b});
    auto violations = check_single_exit(x);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("missing return") != std::string::npos);
    CHECK(violations[0].find("a.b") != std::string::npos);
    CHECK_FALSE(structural_violations(x).empty());
    CHECK_THROWS_AS(module_dfa(x, AB), SingleExitRequired);
}

TEST_CASE("nondeterministic calls are detected") {
    Xvpa x = fixture();
    CHECK(is_deterministic(x));
    x.modules.at(A).calls.insert({a_e, "a", AB});
    CHECK_FALSE(is_deterministic(x));
}

TEST_CASE("structural_violations flags broken shapes") {
    Xvpa missing_mu = fixture();
    missing_mu.mu.erase(AB);
    CHECK_FALSE(structural_violations(missing_mu).empty());

    Xvpa bad_finals = fixture();
    bad_finals.finals = {a_a};
    CHECK_FALSE(structural_violations(bad_finals).empty());

    Xvpa dangling = fixture();
    dangling.modules.at(A).calls.insert({a_b, "c", {"a", "c"}});
    CHECK_FALSE(structural_violations(dangling).empty());

    Xvpa orphan_exit = fixture();
    orphan_exit.modules.at(AA).returns.clear();
    CHECK_FALSE(structural_violations(orphan_exit).empty());
}

TEST_CASE("module DFAs expose content models") {
    Xvpa x = fixture();
    const auto& dts = DatatypeSystem::instance();

    Dfa daa = module_dfa(x, AA);
    CHECK(daa.start == 0);
    CHECK(daa.accepting == std::vector<bool>{false, true});
    CHECK(daa.edges.size() == dts.cl_inverse({Datatype::Decimal}).size());
    CHECK(daa.edges.at({0, DfaSymbol::data(Datatype::Decimal)}) == 1);

    Dfa da = module_dfa(x, A);
    CHECK(da.start == 0);
    CHECK(da.accepting == std::vector<bool>{false, false, true});
    CHECK(da.edges.size() == 3);
    CHECK(da.edges.at({0, DfaSymbol::call(AA)}) == 1);
    CHECK(da.edges.at({1, DfaSymbol::call(AB)}) == 2);
    CHECK(da.edges.at({2, DfaSymbol::call(AB)}) == 2);

    Dfa dr = module_dfa(trivial(), {"r"});
    CHECK(dr.accepting == std::vector<bool>{true});
    CHECK(dr.edges.empty());
}

TEST_CASE("dfa equivalence is language equality") {
    Xvpa x = fixture();
    Dfa da = module_dfa(x, A);
    Dfa daa = module_dfa(x, AA);
    Dfa dab = module_dfa(x, AB);
    CHECK(dfa_equivalent(da, da));
    CHECK(dfa_equivalent(daa, daa));
    CHECK_FALSE(dfa_equivalent(daa, dab));
    CHECK_FALSE(dfa_equivalent(da, daa));

    /* Two shapes of b-plus: a two-state loop and an unrolled three-state
       version accept the same words. */
    DfaSymbol b = DfaSymbol::call({"b"});
    Dfa loop{0, {false, true}, {{{0, b}, 1}, {{1, b}, 1}}};
    Dfa unrolled{0, {false, true, true}, {{{0, b}, 1}, {{1, b}, 2}, {{2, b}, 2}}};
    CHECK(dfa_equivalent(loop, unrolled));
    CHECK(dfa_equivalent(unrolled, loop));

    Dfa once{0, {false, true}, {{{0, b}, 1}}};
    CHECK_FALSE(dfa_equivalent(loop, once));

    /* Edges into a rejecting sink match missing edges. */
    DfaSymbol zz = DfaSymbol::call({"z"});
    Dfa with_sink{0, {false, true, false}, {{{0, b}, 1}, {{1, b}, 1}, {{0, zz}, 2}, {{2, zz}, 2}}};
    CHECK(dfa_equivalent(loop, with_sink));
}

TEST_CASE("validation state follows depth, not sibling count") {
    const auto& dts = DatatypeSystem::instance();
    Xvpa x;
    TypeId R{"r"}, RC{"r", "c"};
    ModuleState r_e{R, {}}, r_c{R, {"c"}}, rc_e{RC, {}}, rc_s{RC, {"$"}};
    x.sigma = {"r", "c"};
    x.m0 = R;
    x.mu = {{R, "r"}, {RC, "c"}};
    x.finals = {r_c};
    Module mr;
    mr.states = {r_e, r_c};
    mr.entry = r_e;
    mr.exits = {r_c};
    mr.calls = {{r_e, "c", RC}, {r_c, "c", RC}};
    Module mrc;
    mrc.states = {rc_e, rc_s};
    mrc.entry = rc_e;
    mrc.exits = {rc_s};
    mrc.returns = {{rc_s, r_e, "c", r_c}, {rc_s, r_c, "c", r_c}};
    for (Datatype d : dts.cl_inverse({Datatype::Decimal})) mrc.internals.insert({rc_e, d, rc_s});
    x.modules = {{R, mr}, {RC, mrc}};
    REQUIRE(structural_violations(x).empty());

    std::string doc = "<r>";
    for (int i = 0; i < 1000; ++i) doc += "<c>5</c>";
    doc += "</r>";
    DocumentVerdict dv = validate_document(x, doc, dts);
    CHECK(dv.verdict.accepted);
    CHECK(dv.events == 2 + 3 * 1000);
    CHECK(dv.peak_stack == 2);
    CHECK(dv.peak_text_bytes == 1);
}

TEST_CASE("runs are confined, the automaton is shared") {
    Xvpa x = fixture();
    auto good = abstract(tokenize("<a><a>1</a><b></b></a>"), DatatypeSystem::instance());
    auto bad = abstract(tokenize("<a><b></b></a>"), DatatypeSystem::instance());
    ValidationRun r1(x), r2(x);
    for (std::size_t i = 0; i < std::max(good.size(), bad.size()); ++i) {
        if (i < good.size()) r1.feed(good[i]);
        if (i < bad.size()) r2.feed(bad[i]);
    }
    CHECK(r1.finish().accepted);
    Verdict v2 = r2.finish();
    CHECK_FALSE(v2.accepted);
    CHECK(v2.anomalies[0].position == 2);
    CHECK(r1.peak_stack() == 2);
}
