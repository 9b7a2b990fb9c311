#pragma once

#include "ecpe/encoder.hpp"

namespace ecpe {

// Small trainable span extractor: each context position is scored from the
// embeddings of (previous, current, next) character plus a question-match
// bit, through linear start/end heads. Trained by the log-likelihood of the
// gold start and end positions. Deliberately tiny — it exists so training,
// prediction and persistence are exercisable end to end on one CPU.
class ToyEncoder : public Encoder {
public:
    explicit ToyEncoder(int embed_dim = 16, int max_seq_tokens = 512);

    std::string id() const override { return "toy-char"; }
    TokenizedInput tokenize(const Question& question, const Context& context) const override;
    SpanScores score(const TokenizedInput& input) const override;
    TrainReport train(const std::vector<QAExample>& examples, const Hyperparams& hp) override;
    void save(const std::string& dir) const override;

    static ToyEncoder load(const std::string& dir);

    bool trained() const { return trained_; }
    int embed_dim() const { return embed_dim_; }
    std::size_t vocab_size() const { return tokenizer_.vocab_size(); }

private:
    friend class PretrainedAdapter;

    std::size_t feature_dim() const { return 3 * static_cast<std::size_t>(embed_dim_) + 1; }
    const double* embedding(TokenId id) const;
    void init_params(std::uint64_t seed);

    CharTokenizer tokenizer_;
    int embed_dim_;
    int max_seq_tokens_;
    bool trained_ = false;
    Hyperparams last_hp_;

    std::vector<double> embeddings_;  // vocab_size x embed_dim
    std::vector<double> w_start_, w_end_;  // feature_dim
    double b_start_ = 0, b_end_ = 0;
};

}  // namespace ecpe
