#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/encoder.hpp"
#include "ecpe/qa.hpp"

namespace ecpe {

enum class Variant { indep, guided_emotion_first, guided_cause_first, ece };

const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct PairPrediction {
    std::string doc_id;
    int emotion_clause = 0;
    int cause_clause = 0;
    CharSpan emotion_span, cause_span;
    Variant variant = Variant::indep;
    // literal question text used per stage, in stage order: for guided
    // variants question_trace[1] is the stage-1 predicted clause text
    std::vector<std::string> question_trace;
};

struct StageConfig {
    std::string emotion_question = "emotion";
    std::string cause_question = "cause";
    int max_span_tokens = 96;
};

// Training sets per variant (train-time questions never consult
// predictions):
//   indep:               fixed emotion question + fixed cause question
//   guided_emotion_first: fixed emotion question; cause question = the true
//                         emotion clause text
//   guided_cause_first:   mirrored
//   ece:                  cause examples with true-emotion questions only
std::vector<QAExample> build_training_sets(const std::vector<Document>& docs, Variant variant,
                                           const StageConfig& cfg);

// Two independent passes with the fixed questions; spans mapped to clauses
// and assembled into one pair.
PairPrediction predict_indep(const Document& doc, const Encoder& emotion_encoder,
                             const Encoder& cause_encoder, const StageConfig& cfg);

enum class GuidedOrder { emotion_first, cause_first };

// Stage 1 uses the fixed question; stage 2's question is the full text of
// the stage-1 predicted clause. Never consults gold annotations.
PairPrediction predict_guided(const Document& doc, const Encoder& stage1_encoder,
                              const Encoder& stage2_encoder, GuidedOrder order,
                              const StageConfig& cfg);

// ECE mode: single pass with the gold emotion clause text as the question.
int predict_ece(const Document& doc, const Encoder& cause_encoder, int gold_emotion,
                const StageConfig& cfg);

struct VariantEncoders {
    const Encoder* emotion = nullptr;  // stage answering "which clause is the emotion"
    const Encoder* cause = nullptr;    // stage answering "which clause is the cause"
};

// One PairPrediction per document, in document order. Documents are
// independent; threads > 1 distributes them without changing any result.
std::vector<PairPrediction> predict_corpus(const std::vector<Document>& docs, Variant variant,
                                           const VariantEncoders& encoders,
                                           const StageConfig& cfg, int threads = 1);

// {"doc_id", "variant", "emotion", "cause", "question_trace"} per line.
void write_predictions_jsonl(const std::vector<PairPrediction>& preds, std::ostream& out);

}  // namespace ecpe
