#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecpe/qa.hpp"
#include "ecpe/text.hpp"

namespace ecpe {

using TokenId = std::int32_t;

struct ClauseTokens {
    int clause_index = 0;        // 1-based
    std::size_t tok_begin = 0;   // token range within context_tokens
    std::size_t tok_end = 0;     // exclusive
};

struct TokenizedInput {
    std::vector<TokenId> question_tokens;
    std::vector<TokenId> context_tokens;
    // Per context token, its code-point span in Context.text. Monotonic;
    // separator characters between clauses are deliberately skipped, so the
    // alignment only covers characters inside clauses.
    std::vector<CharSpan> char_alignment;
    std::vector<ClauseTokens> clause_tokens;  // surviving clauses, in order
    std::vector<int> dropped_clauses;         // trailing clauses removed by truncation
};

// One logit per context token. Question and special positions never enter
// span search; answers live in the context only.
struct SpanScores {
    std::vector<double> start_logits;
    std::vector<double> end_logits;
};

struct SpanPrediction {
    std::size_t start_token = 0;
    std::size_t end_token = 0;   // inclusive
    double score = 0;            // log P(start) + log P(end)
    CharSpan char_span;          // recovered via char_alignment
};

struct Hyperparams {
    int epochs = 5;
    double learning_rate = 5e-5;
    int batch_size = 16;
    int max_seq_tokens = 512;   // question + context budget
    int max_span_tokens = 96;   // bounds the quadratic span search
    std::uint64_t seed = 0;
    int threads = 1;
};

struct TrainReport {
    std::vector<double> epoch_mean_loss;
    std::size_t n_examples = 0;
    std::size_t skipped_examples = 0;  // gold span truncated away
    std::size_t snapped_spans = 0;     // gold char span snapped outward to token boundaries
};

// One contract, three implementations: the lexical overlap oracle (test
// oracle, training-free), the trainable character-window encoder, and the
// adapter that runs states exported to a weights directory.
class Encoder {
public:
    virtual ~Encoder() = default;
    virtual std::string id() const = 0;
    virtual TokenizedInput tokenize(const Question& question, const Context& context) const = 0;
    // Deterministic logits for a fixed state; never mutates the state.
    virtual SpanScores score(const TokenizedInput& input) const = 0;
    // Returns a per-epoch loss report; a training-free encoder returns an
    // empty report and keeps its state unchanged.
    virtual TrainReport train(const std::vector<QAExample>& examples, const Hyperparams& hp) = 0;
    virtual void save(const std::string& dir) const = 0;
};

std::vector<double> log_softmax(const std::vector<double>& logits);

// Argmax of log P(start) + log P(end) over start <= end with
// end - start + 1 <= max_span_tokens; ties to the smaller start, then the
// smaller end. Throws on an empty context.
SpanPrediction best_span(const SpanScores& scores, const std::vector<CharSpan>& alignment,
                         int max_span_tokens);

struct TokenSpan {
    std::size_t start = 0;
    std::size_t end = 0;  // inclusive
    bool snapped = false; // char span fell inside a token and was widened
};

// Maps a gold char span to the covering token range, snapping outward to
// token boundaries. Empty result when no token intersects the span.
std::optional<TokenSpan> char_span_to_tokens(const CharSpan& span,
                                             const std::vector<CharSpan>& alignment);

// Character-level tokenizer over clause regions only; separators between
// clauses produce no token. Truncation drops whole trailing clauses so the
// span-to-clause mapping stays well-defined.
class CharTokenizer {
public:
    static constexpr TokenId kBoundaryId = 0;  // virtual token outside the sequence
    static constexpr TokenId kUnkId = 1;
    static constexpr TokenId kFirstCharId = 2;

    CharTokenizer() = default;

    // Identity mode maps every code point to itself (offset by kFirstCharId);
    // used by vocabulary-free encoders.
    static CharTokenizer identity();

    void add_text(const std::string& utf8);  // grow vocabulary (building phase)
    void freeze() { frozen_ = true; }
    bool frozen() const { return frozen_; }
    std::size_t vocab_size() const;

    TokenId lookup(char32_t cp) const;       // kUnkId when frozen and unseen
    char32_t char_of(TokenId id) const;      // inverse; throws for reserved ids

    TokenizedInput run(const Question& question, const Context& context,
                       int max_seq_tokens) const;

    void save_vocab(const std::string& path) const;
    static CharTokenizer load_vocab(const std::string& path);

private:
    bool identity_ = false;
    bool frozen_ = false;
    std::vector<char32_t> id_to_char_;
    std::unordered_map<char32_t, TokenId> char_to_id_;
};

}  // namespace ecpe
