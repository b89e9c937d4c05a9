#include "doctest.h"

#include "branchflip/builders.hpp"
#include "branchflip/json_io.hpp"
#include "branchflip/verify.hpp"

using namespace branchflip;

TEST_CASE("documents round trip") {
    auto s = sphere3();
    Document doc;
    doc.tri = s.tri;
    doc.branching = s.reference;
    doc.metadata["note"] = "round trip";
    std::string text = emit_document(doc);
    Document back = parse_document(text);
    CHECK(back.tri->same_table(*doc.tri));
    REQUIRE(back.branching.has_value());
    CHECK(back.branching->orientations() == s.reference.orientations());
    CHECK(back.metadata.at("note") == "round trip");
    // canonical form stability: emit(parse(emit)) == emit
    CHECK(emit_document(back) == text);
}

TEST_CASE("documents with move logs round trip and replay") {
    auto t = torus1();
    Branching b = enumerate_branchings(t.tri)[0];
    MoveLog log;
    log.initial_key = hex_key(branched_key(b, true));
    log.moves = {MvBubblePlus{0, 0}, MvInvertEdge{1}, MvBFlip{2, 0}};
    // make the flip legal on the evolved state
    Branching cur = replay(b, MoveLog{log.initial_key, {log.moves[0]}});
    (void)cur;

    Document doc;
    doc.tri = t.tri;
    doc.branching = b;
    doc.move_log = log;
    Document back = parse_document(emit_document(doc));
    REQUIRE(back.move_log.has_value());
    CHECK(back.move_log->moves.size() == 3);
    CHECK(back.move_log->initial_key == log.initial_key);
}

TEST_CASE("corrupt documents are rejected with schema errors") {
    CHECK_THROWS_AS(parse_document("not json"), SchemaError);
    CHECK_THROWS_AS(parse_document("{}"), SchemaError);
    // a gluing list missing one slot: NonPerfectMatching surfaces as Error
    std::string missing = R"({"format_version":1,"triangulation":{"triangle_count":2,
        "gluings":[[[0,0],[1,0],0],[[0,1],[1,1],0]],"vertex_labels":[]}})";
    CHECK_THROWS_AS(parse_document(missing), Error);
}

TEST_CASE("dot export is deterministic and counts the branchings") {
    auto g = inversion_graph(sphere3().tri);
    std::string dot = export_dot(g);
    CHECK(dot == export_dot(g));
    size_t nodes = 0;
    for (size_t pos = dot.find("[key="); pos != std::string::npos;
         pos = dot.find("[key=", pos + 1))
        ++nodes;
    CHECK(nodes == 6);

    InversionGraph empty;
    std::string edot = export_dot(empty);
    CHECK(edot.find("graph") != std::string::npos);
}

TEST_CASE("cycles round trip through their string form") {
    Branching b = enumerate_branchings(torus1().tri)[0];
    auto basis = cycle_space_basis(dual_spine(b));
    REQUIRE(!basis.empty());
    SwitchingCycle z = basis[0];
    SwitchingCycle back = parse_cycle(emit_cycle(z));
    CHECK(back.weights == z.weights);
}

TEST_CASE("reports serialize with steps and endpoint keys") {
    auto s = sphere3();
    auto bs = enumerate_branchings(s.tri);
    TransitReport rep = connect_by_inversions(bs[0], bs[1]);
    std::string text = emit_report(rep);
    CHECK(text.find("endpoint_key") != std::string::npos);
    CHECK(text.find("lemma_tag") != std::string::npos);
}

TEST_CASE("verification corpus selection") {
    branchflip::CorpusSpec spec = branchflip::quick_corpus();
    spec.claims = std::vector<std::string>{};
    CHECK(branchflip::verify_theorems(spec).rows.empty());  // empty corpus, empty report
    spec.claims = std::vector<std::string>{"branching-censuses"};
    auto rep = branchflip::verify_theorems(spec);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].claim == "branching-censuses");
    CHECK(rep.rows[0].pass);
}
