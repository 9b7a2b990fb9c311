#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/text.hpp"

namespace ecpe {

// Concatenation of all clause texts, one separator character between
// clauses. Separator characters belong to no clause; the offsets
// reconstruct each clause text exactly.
struct Context {
    std::u32string text;                   // decoded, code-point addressable
    std::vector<CharSpan> clause_offsets;  // per clause, in document order

    std::size_t size() const { return text.size(); }
    std::size_t n_clauses() const { return clause_offsets.size(); }
    std::u32string_view slice(const CharSpan& s) const {
        return std::u32string_view(text).substr(s.begin, s.end - s.begin);
    }
    std::string clause_utf8(std::size_t i) const { return encode_utf8(slice(clause_offsets[i])); }
    std::string utf8() const { return encode_utf8(text); }
};

enum class QuestionKind {
    fixed_emotion,
    fixed_cause,
    guided_from_emotion,  // test time: question is the predicted emotion clause
    guided_from_cause,    // test time: question is the predicted cause clause
    gold_emotion,         // train time: question is the true emotion clause
    gold_cause,           // train time: question is the true cause clause
};

const char* to_string(QuestionKind kind);

struct Question {
    std::string text;  // UTF-8
    QuestionKind kind = QuestionKind::fixed_emotion;
};

enum class Target { emotion, cause };

const char* to_string(Target t);

struct QAExample {
    std::string doc_id;
    Target target = Target::emotion;
    Question question;
    Context context;
    std::optional<CharSpan> gold_span;       // full range of the gold clause
    std::optional<int> gold_clause_index;
};

Context build_context(const Document& doc);

// Deterministic choice of the single supervising clause:
//   target=emotion, no anchor: lowest-index gold emotion
//   target=cause,   no anchor: lowest-index gold cause
//   target=cause,   anchor=emotion index: the gold cause paired with that
//     emotion with minimal |cause - anchor|, ties to the lower index
//   target=emotion, anchor=cause index: mirrored
int select_gold_clause(const Document& doc, Target target, std::optional<int> anchor = {});

// with_gold=false builds a prediction-only example (no gold span). For
// guided/gold question kinds the supervising clause is anchored on the
// canonical gold clause of the opposite role.
QAExample make_example(const Document& doc, Target target, Question question,
                       bool with_gold = true);

// Debug dump: {"doc_id", "question", "kind", "context", "gold_span"} per line.
void write_examples_jsonl(const std::vector<QAExample>& examples, std::ostream& out);

}  // namespace ecpe
