#include <doctest.h>

#include <random>

#include "ecpe/errors.hpp"
#include "ecpe/mapping.hpp"
#include "reference.hpp"

using namespace ecpe;

TEST_SUITE_BEGIN("mapping");

TEST_CASE("span covering c2 fully and c3 partially maps to c2") {
    const Document doc = make_document(
        "d", {"aaaa", "bbbb", "cccc", "dddd"}, {{2, 3}});
    const Context ctx = build_context(doc);
    // c2 = [5,9), c3 = [10,14): cover all of c2 and one character of c3
    const auto [clause, report] = span_to_clause({5, 11}, ctx);
    CHECK(clause == 2);
    CHECK(report.overlap[1] == 4);
    CHECK(report.overlap[2] == 1);
}

TEST_CASE("span exactly equal to a clause maps to it") {
    const Document doc = ref::figure_document();
    const Context ctx = build_context(doc);
    for (std::size_t c = 0; c < ctx.n_clauses(); ++c) {
        const auto [clause, report] = span_to_clause(ctx.clause_offsets[c], ctx);
        CHECK(clause == static_cast<int>(c) + 1);
    }
}

TEST_CASE("equal overlap ties break to the lower clause index") {
    const Document doc = make_document("d", {"aaa", "bbb"}, {{1, 2}});
    const Context ctx = build_context(doc);
    // [2,5) covers one char of c1 ([0,3)) and one of c2 ([4,7))
    const auto [clause, report] = span_to_clause({2, 5}, ctx);
    CHECK(report.overlap[0] == report.overlap[1]);
    CHECK(clause == 1);
}

TEST_CASE("separator-only span maps to the clause with the nearest start") {
    const Document doc = make_document("d", {"aa", "bb"}, {{1, 2}});
    const Context ctx = build_context(doc);
    // position 2 is the separator; clause 2 starts at 3, clause 1 at 0
    const auto [clause, report] = span_to_clause({2, 3}, ctx);
    CHECK(report.overlap == std::vector<std::size_t>{0, 0});
    CHECK(clause == 2);
}

TEST_CASE("errors on bad input") {
    const Document doc = make_document("d", {"aa"}, {{1, 1}});
    const Context ctx = build_context(doc);
    CHECK_THROWS_AS(span_to_clause({0, 0}, ctx), DataError);   // empty span
    CHECK_THROWS_AS(span_to_clause({0, 99}, ctx), DataError);  // out of range
    CHECK_THROWS_AS(span_to_clause({0, 1}, Context{}), DataError);
}

TEST_CASE("matches brute-force intersection maximization on random cases") {
    std::mt19937_64 rng(71);
    const auto docs = ref::random_documents(rng, 40);
    int cases = 0;
    for (const Document& doc : docs) {
        const Context ctx = build_context(doc);
        for (int k = 0; k < 15; ++k) {
            const std::size_t a = rng() % ctx.size();
            const std::size_t b = a + 1 + rng() % (ctx.size() - a);
            const CharSpan span{a, b};
            const auto [clause, report] = span_to_clause(span, ctx);
            const ref::OverlapResult want = ref::max_overlap_clause(span, ctx);
            CHECK(clause == want.winner);
            CHECK(report.overlap == want.per_clause);
            ++cases;
        }
    }
    CHECK(cases >= 500);
}

TEST_CASE("growing a span inside the winning clause keeps the winner") {
    const Document doc = make_document("d", {"aaaaaa", "bbbbbb", "cccccc"}, {{1, 2}});
    const Context ctx = build_context(doc);
    // clause 2 occupies [7,13); start from one char and grow within it
    int prev = 0;
    for (std::size_t end = 8; end <= 13; ++end) {
        const auto [clause, report] = span_to_clause({7, end}, ctx);
        CHECK(clause == 2);
        prev = clause;
    }
    CHECK(prev == 2);
}

TEST_SUITE_END();
