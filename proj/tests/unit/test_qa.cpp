#include <doctest.h>

#include <random>
#include <sstream>

#include "ecpe/errors.hpp"
#include "ecpe/qa.hpp"
#include "reference.hpp"

using namespace ecpe;

TEST_SUITE_BEGIN("qa");

TEST_CASE("build_context: two clauses, one separator") {
    const Document doc = make_document("d", {"ab", "cd"}, {{2, 1}});
    const Context ctx = build_context(doc);
    CHECK(ctx.utf8() == "ab cd");
    REQUIRE(ctx.clause_offsets.size() == 2);
    CHECK(ctx.clause_offsets[0] == CharSpan{0, 2});
    CHECK(ctx.clause_offsets[1] == CharSpan{3, 5});
}

TEST_CASE("build_context: single clause covers everything") {
    const Document doc = make_document("d", {"只有一个子句"}, {{1, 1}});
    const Context ctx = build_context(doc);
    REQUIRE(ctx.clause_offsets.size() == 1);
    CHECK(ctx.clause_offsets[0] == CharSpan{0, 6});
}

TEST_CASE("build_context: offsets reconstruct clause texts, idempotent") {
    const Document doc = ref::figure_document();
    const Context ctx = build_context(doc);
    REQUIRE(ctx.n_clauses() == 6);
    std::size_t prev_end = 0;
    for (std::size_t i = 0; i < 6; ++i) {
        if (i > 0) CHECK(ctx.clause_offsets[i].begin == prev_end + 1);
        prev_end = ctx.clause_offsets[i].end;
        CHECK(ctx.clause_utf8(i) == doc.clauses[i].text);
        CHECK(ctx.clause_offsets[i] == doc.clauses[i].span());
    }
    const Context again = build_context(doc);
    CHECK(again.text == ctx.text);
}

TEST_CASE("build_context matches parse-time offsets on random documents") {
    std::mt19937_64 rng(51);
    for (const Document& doc : ref::random_documents(rng, 40)) {
        const Context ctx = build_context(doc);
        for (std::size_t i = 0; i < doc.clauses.size(); ++i)
            CHECK(ctx.clause_utf8(i) == doc.clauses[i].text);
    }
}

TEST_CASE("select_gold_clause: stated rules on the figure document") {
    const Document doc = ref::figure_document();
    CHECK(select_gold_clause(doc, Target::emotion) == 4);          // lowest of {4,5}
    CHECK(select_gold_clause(doc, Target::cause, 4) == 3);         // |3-4| < |2-4|
    CHECK(select_gold_clause(doc, Target::cause) == 2);            // lowest of {2,3,6}
    CHECK(select_gold_clause(doc, Target::emotion, 6) == 5);       // pair (5,6)
    const Document single = make_document("s", {"a", "b"}, {{2, 1}});
    CHECK(select_gold_clause(single, Target::cause, 2) == 1);
}

TEST_CASE("select_gold_clause: tie on distance goes to the lower index") {
    const Document doc = make_document("t", {"a", "b", "c", "d", "e"},
                                       {{3, 2}, {3, 4}});
    CHECK(select_gold_clause(doc, Target::cause, 3) == 2);  // |2-3| == |4-3|
}

TEST_CASE("select_gold_clause is insensitive to pair list order") {
    const std::vector<ClausePair> pairs{{4, 2}, {4, 3}, {5, 6}};
    std::vector<ClausePair> shuffled{{5, 6}, {4, 3}, {4, 2}};
    const auto texts = std::vector<std::string>{"a", "b", "c", "d", "e", "f"};
    const Document a = make_document("a", texts, pairs);
    const Document b = make_document("b", texts, shuffled);
    for (Target t : {Target::emotion, Target::cause})
        CHECK(select_gold_clause(a, t) == select_gold_clause(b, t));
    CHECK(select_gold_clause(a, Target::cause, 4) == select_gold_clause(b, Target::cause, 4));
}

TEST_CASE("select_gold_clause: errors") {
    const Document doc = ref::figure_document();
    CHECK(select_gold_clause(doc, Target::cause, 5) == 6);
    // clause 1 is no gold emotion, so it anchors nothing
    CHECK_THROWS_AS(select_gold_clause(doc, Target::cause, 1), DataError);
    Document bare = make_document("p", {"a"}, {}, true);
    CHECK_THROWS_AS(select_gold_clause(bare, Target::emotion), DataError);
}

TEST_CASE("make_example: gold span equals the gold clause range exactly") {
    const Document doc = ref::figure_document();
    const QAExample ex =
        make_example(doc, Target::emotion, {"emotion", QuestionKind::fixed_emotion});
    REQUIRE(ex.gold_clause_index.has_value());
    CHECK(*ex.gold_clause_index == 4);
    REQUIRE(ex.gold_span.has_value());
    CHECK(*ex.gold_span == doc.clause(4).span());
    CHECK(encode_utf8(std::u32string(ex.context.slice(*ex.gold_span))) == doc.clause(4).text);
}

TEST_CASE("make_example: guided cause example anchors on the gold emotion") {
    const Document doc = ref::figure_document();
    const QAExample ex = make_example(
        doc, Target::cause, {doc.clause(4).text, QuestionKind::gold_emotion});
    CHECK(*ex.gold_clause_index == 3);
    CHECK(*ex.gold_span == doc.clause(3).span());
}

TEST_CASE("make_example: prediction-only example has no gold span") {
    const Document doc = make_document("p", {"a", "b"}, {}, true);
    const QAExample ex =
        make_example(doc, Target::emotion, {"emotion", QuestionKind::fixed_emotion}, false);
    CHECK_FALSE(ex.gold_span.has_value());
    CHECK_FALSE(ex.gold_clause_index.has_value());
}

TEST_CASE("make_example: empty guided question is rejected") {
    const Document doc = ref::figure_document();
    CHECK_THROWS_AS(
        make_example(doc, Target::cause, {"", QuestionKind::guided_from_emotion}),
        DataError);
}

TEST_CASE("gold span slices to the gold clause text on random documents") {
    std::mt19937_64 rng(52);
    for (const Document& doc : ref::random_documents(rng, 50)) {
        for (Target t : {Target::emotion, Target::cause}) {
            const QAExample ex = make_example(
                doc, t, {t == Target::emotion ? "emotion" : "cause",
                         t == Target::emotion ? QuestionKind::fixed_emotion
                                              : QuestionKind::fixed_cause});
            const std::string sliced =
                encode_utf8(std::u32string(ex.context.slice(*ex.gold_span)));
            CHECK(sliced == doc.clause(*ex.gold_clause_index).text);
        }
    }
}

TEST_CASE("examples jsonl dump has the documented fields") {
    const Document doc = make_document("d", {"ab", "cd"}, {{2, 1}});
    std::ostringstream out;
    write_examples_jsonl(
        {make_example(doc, Target::emotion, {"emotion", QuestionKind::fixed_emotion})}, out);
    const std::string line = out.str();
    CHECK(line.find("\"doc_id\":\"d\"") != std::string::npos);
    CHECK(line.find("\"kind\":\"fixed_emotion\"") != std::string::npos);
    CHECK(line.find("\"context\":\"ab cd\"") != std::string::npos);
    CHECK(line.find("\"gold_span\":[3,5]") != std::string::npos);
}

TEST_SUITE_END();
