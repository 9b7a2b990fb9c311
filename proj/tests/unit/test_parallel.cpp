#include <doctest.h>

#include <random>

#include "ecpe/lexical_oracle.hpp"
#include "ecpe/parallel.hpp"
#include "ecpe/pipeline.hpp"
#include "ecpe/synth.hpp"
#include "ecpe/toy_encoder.hpp"
#include "reference.hpp"

using namespace ecpe;

// Every parallel kernel must reproduce the serial path bit for bit: work
// items write disjoint slots and reductions run in index order.
TEST_SUITE_BEGIN("parallel");

TEST_CASE("for_each_index covers every index exactly once") {
    std::vector<int> hits(1000, 0);
    par::for_each_index(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("best_span: large input takes the chunked path and agrees with the oracle") {
    std::mt19937_64 rng(101);
    const std::size_t n = 6000;  // above the parallel threshold
    SpanScores scores;
    scores.start_logits.resize(n);
    scores.end_logits.resize(n);
    for (auto& v : scores.start_logits) v = static_cast<double>(rng() % 10000) / 500.0;
    for (auto& v : scores.end_logits) v = static_cast<double>(rng() % 10000) / 500.0;
    std::vector<CharSpan> alignment;
    for (std::size_t i = 0; i < n; ++i) alignment.push_back({i, i + 1});

    const SpanPrediction got = best_span(scores, alignment, 96);
    const ref::SpanResult want = ref::best_span_exhaustive(scores, 96);
    CHECK(got.start_token == want.start);
    CHECK(got.end_token == want.end);
}

TEST_CASE("corpus inference: threads do not change predictions") {
    const auto docs = make_rigged_corpus({.n_docs = 60});
    const LexicalOracleEncoder oracle;
    const VariantEncoders encoders{&oracle, &oracle};
    const StageConfig cfg = rigged_stage_config();

    const auto serial =
        predict_corpus(docs, Variant::guided_emotion_first, encoders, cfg, 1);
    const auto parallel =
        predict_corpus(docs, Variant::guided_emotion_first, encoders, cfg, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].doc_id == parallel[i].doc_id);
        CHECK(serial[i].emotion_clause == parallel[i].emotion_clause);
        CHECK(serial[i].cause_clause == parallel[i].cause_clause);
        CHECK(serial[i].question_trace == parallel[i].question_trace);
    }
}

TEST_CASE("training: threads do not change losses or weights") {
    const auto examples = make_copy_task(48, 9);
    Hyperparams hp;
    hp.epochs = 3;
    hp.learning_rate = 1.0;
    hp.batch_size = 16;
    hp.seed = 2;

    ToyEncoder serial, parallel;
    hp.threads = 1;
    const TrainReport rs = serial.train(examples, hp);
    hp.threads = 4;
    const TrainReport rp = parallel.train(examples, hp);

    REQUIRE(rs.epoch_mean_loss.size() == rp.epoch_mean_loss.size());
    for (std::size_t i = 0; i < rs.epoch_mean_loss.size(); ++i)
        CHECK(rs.epoch_mean_loss[i] == rp.epoch_mean_loss[i]);  // bitwise

    const TokenizedInput input = serial.tokenize(examples[0].question, examples[0].context);
    const SpanScores a = serial.score(input);
    const SpanScores b = parallel.score(input);
    CHECK(a.start_logits == b.start_logits);
    CHECK(a.end_logits == b.end_logits);
}

TEST_CASE("parallel errors are reported deterministically by lowest index") {
    const auto fail_at = [&](std::size_t bad) {
        try {
            par::for_each_index_checked(8, 4, [&](std::size_t i) {
                if (i >= bad) throw std::runtime_error("slot " + std::to_string(i));
            });
        } catch (const std::runtime_error& e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(fail_at(3) == "slot 3");
    CHECK(fail_at(0) == "slot 0");
}

TEST_SUITE_END();
