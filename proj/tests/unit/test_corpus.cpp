#include <doctest.h>

#include <random>
#include <sstream>

#include "ecpe/corpus.hpp"
#include "ecpe/errors.hpp"
#include "reference.hpp"

using namespace ecpe;

TEST_SUITE_BEGIN("corpus");

namespace {

std::vector<Document> parse_native_text(const std::string& raw, ParseOptions opts = {}) {
    std::istringstream in(raw);
    return parse_raw_corpus(in, CorpusFormat::native, opts);
}

}  // namespace

TEST_CASE("native: minimal well-formed document") {
    const auto docs = parse_native_text("7 2\n(2,1)\nfirst clause\nsecond clause\n");
    REQUIRE(docs.size() == 1);
    const Document& d = docs[0];
    CHECK(d.doc_id == "7");
    CHECK(d.clauses.size() == 2);
    CHECK(d.gold_pairs == std::set<ClausePair>{{2, 1}});
    CHECK(d.gold_emotions == std::set<int>{2});
    CHECK(d.gold_causes == std::set<int>{1});
}

TEST_CASE("native: annotated clause lines are stripped") {
    const auto docs = parse_native_text("1 2\n(1,2)\n1,happy,null,他很高兴\n2,null,null,北风呼啸\n");
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].clauses[0].text == "他很高兴");
    CHECK(docs[0].clauses[1].text == "北风呼啸");
}

TEST_CASE("native: pair index out of range fails with doc and line") {
    try {
        parse_native_text("9 6\n(7,1)\na\nb\nc\nd\ne\nf\n");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("doc 9") != std::string::npos);
        CHECK(msg.find("line") != std::string::npos);
    }
}

TEST_CASE("native: malformed inputs") {
    CHECK_THROWS_AS(parse_native_text("1\n(1,1)\nx\n"), DataError);           // bad header
    CHECK_THROWS_AS(parse_native_text("1 3\n(1,1)\nx\ny\n"), DataError);      // count mismatch
    CHECK_THROWS_AS(parse_native_text("1 1\n\nx\n"), DataError);              // empty pair list
    CHECK_THROWS_AS(parse_native_text("1 1\n(1,1)\nx\n1 1\n(1,1)\ny\n2 1\n(1,1)\nz\n"),
                    DataError);                                               // duplicate id
    CHECK_THROWS_AS(parse_native_text("1 2\n(1,2)\n2,null,null,wrong index\nx\n"), DataError);
}

TEST_CASE("native: leading BOM is tolerated") {
    const auto docs = parse_native_text("\xEF\xBB\xBF" "1 1\n(1,1)\nclause\n");
    REQUIRE(docs.size() == 1);
    CHECK(docs[0].doc_id == "1");
}

TEST_CASE("clause that is empty after normalization is rejected") {
    CHECK_THROWS_AS(parse_native_text("1 2\n(1,2)\nfine\n   \t \n"), DataError);
    CHECK_THROWS_AS(make_document("d", {"ok", ""}, {{1, 2}}), DataError);
}

TEST_CASE("native: prediction-only mode accepts empty pair list") {
    ParseOptions opts;
    opts.allow_unannotated = true;
    const auto docs = parse_native_text("1 1\n\nonly clause\n", opts);
    REQUIRE(docs.size() == 1);
    CHECK_FALSE(docs[0].has_gold());
}

TEST_CASE("clause offsets are computed against the concatenated context") {
    const auto docs = parse_native_text("1 2\n(2,1)\nab\ncd\n");
    const Document& d = docs[0];
    CHECK(d.clauses[0].char_start == 0);
    CHECK(d.clauses[0].char_end == 2);
    CHECK(d.clauses[1].char_start == 3);
    CHECK(d.clauses[1].char_end == 5);
}

TEST_CASE("jsonl round trip preserves structure and bytes") {
    std::mt19937_64 rng(41);
    const auto docs = ref::random_documents(rng, 30);

    std::ostringstream first;
    write_corpus_jsonl(docs, first);
    std::istringstream back(first.str());
    const auto reparsed = parse_raw_corpus(back, CorpusFormat::jsonl);

    REQUIRE(reparsed.size() == docs.size());
    for (std::size_t i = 0; i < docs.size(); ++i) {
        CHECK(reparsed[i].doc_id == docs[i].doc_id);
        CHECK(reparsed[i].gold_pairs == docs[i].gold_pairs);
        REQUIRE(reparsed[i].clauses.size() == docs[i].clauses.size());
        for (std::size_t c = 0; c < docs[i].clauses.size(); ++c) {
            CHECK(reparsed[i].clauses[c].text == docs[i].clauses[c].text);
            CHECK(reparsed[i].clauses[c].char_start == docs[i].clauses[c].char_start);
            CHECK(reparsed[i].clauses[c].char_end == docs[i].clauses[c].char_end);
        }
    }
    // serializing the reparse is byte-identical
    std::ostringstream second;
    write_corpus_jsonl(reparsed, second);
    CHECK(first.str() == second.str());
}

TEST_CASE("gold sets are exactly the pair projections") {
    std::mt19937_64 rng(42);
    for (const Document& d : ref::random_documents(rng, 60)) {
        std::set<int> emotions, causes;
        for (const auto& [e, c] : d.gold_pairs) {
            emotions.insert(e);
            causes.insert(c);
        }
        CHECK(d.gold_emotions == emotions);
        CHECK(d.gold_causes == causes);
    }
}

TEST_CASE("corpus_stats counts pair buckets") {
    std::vector<Document> docs;
    docs.push_back(make_document("a", {"x", "y"}, {{1, 2}}));
    docs.push_back(make_document("b", {"x", "y", "z"}, {{1, 2}, {2, 3}, {3, 1}}));
    const PairHistogram h = corpus_stats(docs);
    CHECK(h.one_pair == 1);
    CHECK(h.two_pairs == 0);
    CHECK(h.more_than_two == 1);
    CHECK(h.total == 2);
    CHECK(h.mean_clauses == doctest::Approx(2.5));
    CHECK_THROWS_AS(corpus_stats({}), DataError);
}

TEST_CASE("make_splits: deterministic, disjoint, covering") {
    std::mt19937_64 rng(43);
    const auto docs = ref::random_documents(rng, 20);

    const auto splits = make_splits(docs, 2, 5);
    REQUIRE(splits.size() == 2);
    for (const auto& s : splits) {
        CHECK(s.train.size() == 16);
        CHECK(s.dev.size() == 2);
        CHECK(s.test.size() == 2);
        std::set<std::string> all;
        for (const auto& part : {s.train, s.dev, s.test})
            for (const auto& id : part) CHECK(all.insert(id).second);
        CHECK(all.size() == docs.size());
    }
    CHECK_NOTHROW(validate_splits(splits, docs));
    // two splits shuffle differently
    CHECK(splits[0].train != splits[1].train);

    // fixed seed => byte-identical split files
    const auto again = make_splits(docs, 2, 5);
    std::ostringstream a, b;
    write_splits(splits, a);
    write_splits(again, b);
    CHECK(a.str() == b.str());

    // split file round trip
    std::istringstream in(a.str());
    const auto loaded = parse_splits(in);
    REQUIRE(loaded.size() == 2);
    CHECK(loaded[1].train == splits[1].train);
    CHECK(loaded[1].dev == splits[1].dev);
    CHECK(loaded[1].test == splits[1].test);
}

TEST_CASE("make_splits rejects tiny corpora, accepts exactly ten") {
    std::mt19937_64 rng(44);
    CHECK_THROWS_AS(make_splits(ref::random_documents(rng, 9), 1, 0), DataError);
    const auto ten = make_splits(ref::random_documents(rng, 10), 1, 0);
    CHECK(ten[0].train.size() == 8);
    CHECK(ten[0].dev.size() == 1);
    CHECK(ten[0].test.size() == 1);
}

TEST_CASE("validate_splits catches overlap and gaps") {
    std::mt19937_64 rng(45);
    const auto docs = ref::random_documents(rng, 12);
    auto splits = make_splits(docs, 1, 0);
    SUBCASE("missing doc") {
        splits[0].train.pop_back();
        CHECK_THROWS_AS(validate_splits(splits, docs), DataError);
    }
    SUBCASE("duplicated doc") {
        splits[0].dev.push_back(splits[0].train.front());
        CHECK_THROWS_AS(validate_splits(splits, docs), DataError);
    }
    SUBCASE("unknown doc") {
        splits[0].test.push_back("no-such-doc");
        CHECK_THROWS_AS(validate_splits(splits, docs), DataError);
    }
}

TEST_SUITE_END();
