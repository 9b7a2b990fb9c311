#include "ecpe/pipeline.hpp"

#include <ostream>

#include <json.hpp>

#include "ecpe/errors.hpp"
#include "ecpe/mapping.hpp"
#include "ecpe/parallel.hpp"

namespace ecpe {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::indep: return "indep";
        case Variant::guided_emotion_first: return "guided_emotion_first";
        case Variant::guided_cause_first: return "guided_cause_first";
        case Variant::ece: return "ece";
    }
    return "?";
}

Variant variant_from_string(const std::string& name) {
    if (name == "indep") return Variant::indep;
    if (name == "guided_emotion_first") return Variant::guided_emotion_first;
    if (name == "guided_cause_first") return Variant::guided_cause_first;
    if (name == "ece") return Variant::ece;
    throw ConfigError("unknown variant '" + name + "'");
}

std::vector<QAExample> build_training_sets(const std::vector<Document>& docs, Variant variant,
                                           const StageConfig& cfg) {
    std::vector<QAExample> out;
    out.reserve(docs.size() * 2);
    for (const Document& doc : docs) {
        switch (variant) {
            case Variant::indep:
                out.push_back(make_example(doc, Target::emotion,
                                           {cfg.emotion_question, QuestionKind::fixed_emotion}));
                out.push_back(make_example(doc, Target::cause,
                                           {cfg.cause_question, QuestionKind::fixed_cause}));
                break;
            case Variant::guided_emotion_first: {
                out.push_back(make_example(doc, Target::emotion,
                                           {cfg.emotion_question, QuestionKind::fixed_emotion}));
                const int emo = select_gold_clause(doc, Target::emotion);
                out.push_back(make_example(
                    doc, Target::cause, {doc.clause(emo).text, QuestionKind::gold_emotion}));
                break;
            }
            case Variant::guided_cause_first: {
                out.push_back(make_example(doc, Target::cause,
                                           {cfg.cause_question, QuestionKind::fixed_cause}));
                const int cause = select_gold_clause(doc, Target::cause);
                out.push_back(make_example(
                    doc, Target::emotion, {doc.clause(cause).text, QuestionKind::gold_cause}));
                break;
            }
            case Variant::ece: {
                const int emo = select_gold_clause(doc, Target::emotion);
                out.push_back(make_example(
                    doc, Target::cause, {doc.clause(emo).text, QuestionKind::gold_emotion}));
                break;
            }
        }
    }
    return out;
}

namespace {

struct StageResult {
    int clause = 0;
    CharSpan span;
};

StageResult run_stage(const Document& doc, const Context& context, const Encoder& encoder,
                      const Question& question, int max_span_tokens) {
    try {
        const TokenizedInput input = encoder.tokenize(question, context);
        const SpanScores scores = encoder.score(input);
        const SpanPrediction span = best_span(scores, input.char_alignment, max_span_tokens);
        const auto [clause, report] = span_to_clause(span.char_span, context);
        return {clause, span.char_span};
    } catch (const Error& e) {
        throw ModelError("doc " + doc.doc_id + ": " + e.what());
    }
}

}  // namespace

PairPrediction predict_indep(const Document& doc, const Encoder& emotion_encoder,
                             const Encoder& cause_encoder, const StageConfig& cfg) {
    const Context context = build_context(doc);
    const Question eq{cfg.emotion_question, QuestionKind::fixed_emotion};
    const Question cq{cfg.cause_question, QuestionKind::fixed_cause};
    const StageResult emo = run_stage(doc, context, emotion_encoder, eq, cfg.max_span_tokens);
    const StageResult cause = run_stage(doc, context, cause_encoder, cq, cfg.max_span_tokens);

    PairPrediction pred;
    pred.doc_id = doc.doc_id;
    pred.variant = Variant::indep;
    pred.emotion_clause = emo.clause;
    pred.emotion_span = emo.span;
    pred.cause_clause = cause.clause;
    pred.cause_span = cause.span;
    pred.question_trace = {eq.text, cq.text};
    return pred;
}

PairPrediction predict_guided(const Document& doc, const Encoder& stage1_encoder,
                              const Encoder& stage2_encoder, GuidedOrder order,
                              const StageConfig& cfg) {
    const Context context = build_context(doc);
    const bool emotion_first = order == GuidedOrder::emotion_first;

    const Question q1{emotion_first ? cfg.emotion_question : cfg.cause_question,
                      emotion_first ? QuestionKind::fixed_emotion : QuestionKind::fixed_cause};
    const StageResult first = run_stage(doc, context, stage1_encoder, q1, cfg.max_span_tokens);

    // the predicted (possibly noisy) clause text is the stage-2 question
    const Question q2{doc.clause(first.clause).text,
                      emotion_first ? QuestionKind::guided_from_emotion
                                    : QuestionKind::guided_from_cause};
    const StageResult second = run_stage(doc, context, stage2_encoder, q2, cfg.max_span_tokens);

    PairPrediction pred;
    pred.doc_id = doc.doc_id;
    pred.variant = emotion_first ? Variant::guided_emotion_first : Variant::guided_cause_first;
    if (emotion_first) {
        pred.emotion_clause = first.clause;
        pred.emotion_span = first.span;
        pred.cause_clause = second.clause;
        pred.cause_span = second.span;
    } else {
        pred.cause_clause = first.clause;
        pred.cause_span = first.span;
        pred.emotion_clause = second.clause;
        pred.emotion_span = second.span;
    }
    pred.question_trace = {q1.text, q2.text};
    return pred;
}

int predict_ece(const Document& doc, const Encoder& cause_encoder, int gold_emotion,
                const StageConfig& cfg) {
    const Context context = build_context(doc);
    const Question q{doc.clause(gold_emotion).text, QuestionKind::gold_emotion};
    return run_stage(doc, context, cause_encoder, q, cfg.max_span_tokens).clause;
}

std::vector<PairPrediction> predict_corpus(const std::vector<Document>& docs, Variant variant,
                                           const VariantEncoders& encoders,
                                           const StageConfig& cfg, int threads) {
    if (!encoders.emotion && variant != Variant::ece)
        throw ConfigError("predict_corpus: missing emotion encoder");
    if (!encoders.cause) throw ConfigError("predict_corpus: missing cause encoder");

    std::vector<PairPrediction> preds(docs.size());
    par::for_each_index_checked(docs.size(), threads, [&](std::size_t i) {
        const Document& doc = docs[i];
        switch (variant) {
            case Variant::indep:
                preds[i] = predict_indep(doc, *encoders.emotion, *encoders.cause, cfg);
                break;
            case Variant::guided_emotion_first:
                preds[i] = predict_guided(doc, *encoders.emotion, *encoders.cause,
                                          GuidedOrder::emotion_first, cfg);
                break;
            case Variant::guided_cause_first:
                preds[i] = predict_guided(doc, *encoders.cause, *encoders.emotion,
                                          GuidedOrder::cause_first, cfg);
                break;
            case Variant::ece: {
                const int emo = select_gold_clause(doc, Target::emotion);
                PairPrediction p;
                p.doc_id = doc.doc_id;
                p.variant = Variant::ece;
                p.emotion_clause = emo;
                p.emotion_span = doc.clause(emo).span();
                p.cause_clause = predict_ece(doc, *encoders.cause, emo, cfg);
                p.cause_span = doc.clause(p.cause_clause).span();
                p.question_trace = {doc.clause(emo).text};
                preds[i] = std::move(p);
                break;
            }
        }
    });
    return preds;
}

void write_predictions_jsonl(const std::vector<PairPrediction>& preds, std::ostream& out) {
    using nlohmann::json;
    for (const auto& p : preds) {
        json j;
        j["doc_id"] = p.doc_id;
        j["variant"] = to_string(p.variant);
        j["emotion"] = p.emotion_clause;
        j["cause"] = p.cause_clause;
        j["question_trace"] = p.question_trace;
        out << j.dump() << '\n';
    }
}

}  // namespace ecpe
