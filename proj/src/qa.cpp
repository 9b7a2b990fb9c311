#include "ecpe/qa.hpp"

#include <cstdlib>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "ecpe/errors.hpp"

namespace ecpe {

const char* to_string(QuestionKind kind) {
    switch (kind) {
        case QuestionKind::fixed_emotion: return "fixed_emotion";
        case QuestionKind::fixed_cause: return "fixed_cause";
        case QuestionKind::guided_from_emotion: return "guided_from_emotion";
        case QuestionKind::guided_from_cause: return "guided_from_cause";
        case QuestionKind::gold_emotion: return "gold_emotion";
        case QuestionKind::gold_cause: return "gold_cause";
    }
    return "?";
}

const char* to_string(Target t) { return t == Target::emotion ? "emotion" : "cause"; }

Context build_context(const Document& doc) {
    if (doc.clauses.empty()) throw DataError("doc " + doc.doc_id + ": no clauses");
    Context ctx;
    ctx.clause_offsets.reserve(doc.clauses.size());
    for (std::size_t i = 0; i < doc.clauses.size(); ++i) {
        if (i > 0) ctx.text.push_back(U' ');
        const std::size_t begin = ctx.text.size();
        ctx.text += decode_utf8(doc.clauses[i].text);
        ctx.clause_offsets.push_back({begin, ctx.text.size()});
    }
    return ctx;
}

namespace {

int nearest_of(const std::set<int>& candidates, int anchor) {
    int best = 0;
    long best_dist = std::numeric_limits<long>::max();
    for (int c : candidates) {  // std::set iterates ascending, so ties keep the lower index
        const long dist = std::labs(static_cast<long>(c) - anchor);
        if (dist < best_dist) {
            best_dist = dist;
            best = c;
        }
    }
    return best;
}

}  // namespace

int select_gold_clause(const Document& doc, Target target, std::optional<int> anchor) {
    if (!doc.has_gold())
        throw DataError("doc " + doc.doc_id + ": no gold annotations to select from");
    if (target == Target::emotion) {
        if (!anchor) return *doc.gold_emotions.begin();
        std::set<int> paired;
        for (const auto& [e, c] : doc.gold_pairs)
            if (c == *anchor) paired.insert(e);
        if (paired.empty())
            throw DataError("doc " + doc.doc_id + ": cause clause " + std::to_string(*anchor) +
                            " has no paired gold emotion");
        return nearest_of(paired, *anchor);
    }
    if (!anchor) return *doc.gold_causes.begin();
    std::set<int> paired;
    for (const auto& [e, c] : doc.gold_pairs)
        if (e == *anchor) paired.insert(c);
    if (paired.empty())
        throw DataError("doc " + doc.doc_id + ": emotion clause " + std::to_string(*anchor) +
                        " has no paired gold cause");
    return nearest_of(paired, *anchor);
}

QAExample make_example(const Document& doc, Target target, Question question, bool with_gold) {
    const bool question_is_clause = question.kind != QuestionKind::fixed_emotion &&
                                    question.kind != QuestionKind::fixed_cause;
    if (question_is_clause && question.text.empty())
        throw DataError("doc " + doc.doc_id + ": " + to_string(question.kind) +
                        " question with empty text");

    QAExample ex;
    ex.doc_id = doc.doc_id;
    ex.target = target;
    ex.question = std::move(question);
    ex.context = build_context(doc);
    if (!with_gold) return ex;

    std::optional<int> anchor;
    if (target == Target::cause && (ex.question.kind == QuestionKind::gold_emotion ||
                                    ex.question.kind == QuestionKind::guided_from_emotion))
        anchor = select_gold_clause(doc, Target::emotion);
    else if (target == Target::emotion && (ex.question.kind == QuestionKind::gold_cause ||
                                           ex.question.kind == QuestionKind::guided_from_cause))
        anchor = select_gold_clause(doc, Target::cause);

    const int gold = select_gold_clause(doc, target, anchor);
    ex.gold_clause_index = gold;
    ex.gold_span = doc.clause(gold).span();
    return ex;
}

void write_examples_jsonl(const std::vector<QAExample>& examples, std::ostream& out) {
    using nlohmann::json;
    for (const auto& ex : examples) {
        json j;
        j["doc_id"] = ex.doc_id;
        j["question"] = ex.question.text;
        j["kind"] = to_string(ex.question.kind);
        j["context"] = ex.context.utf8();
        if (ex.gold_span)
            j["gold_span"] = json::array({ex.gold_span->begin, ex.gold_span->end});
        else
            j["gold_span"] = nullptr;
        out << j.dump() << '\n';
    }
}

}  // namespace ecpe
