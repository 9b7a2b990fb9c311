#pragma once

#include "ecpe/encoder.hpp"

namespace ecpe {

// Training-free test oracle. Each clause is scored by the number of its
// non-whitespace characters that occur in the question's character set, and
// every token of a clause gets its clause's score as both start and end
// logit. The maximum-overlap clause therefore carries the peak logits; a
// question with no overlap anywhere yields uniform logits. Used by the test
// suite so the full pipeline is verifiable without trained weights.
class LexicalOracleEncoder : public Encoder {
public:
    explicit LexicalOracleEncoder(int max_seq_tokens = 512);

    std::string id() const override { return "lexical-oracle"; }
    TokenizedInput tokenize(const Question& question, const Context& context) const override;
    SpanScores score(const TokenizedInput& input) const override;
    TrainReport train(const std::vector<QAExample>& examples, const Hyperparams& hp) override;
    void save(const std::string& dir) const override;

    static LexicalOracleEncoder load(const std::string& dir);
    int max_seq_tokens() const { return max_seq_tokens_; }

private:
    CharTokenizer tokenizer_;
    int max_seq_tokens_;
};

}  // namespace ecpe
