#pragma once

#include <memory>
#include <string>

#include "ecpe/encoder.hpp"

namespace ecpe {

// Adapter for encoders whose parameters were exported to a weights
// directory (meta.txt + vocab.txt + weights.bin). The registry string names
// the model; loading verifies it against the directory's model_name and the
// architecture tag, so a directory exported for one model cannot silently
// serve another.
class PretrainedAdapter : public Encoder {
public:
    static PretrainedAdapter load(const std::string& model_name, const std::string& dir);

    std::string id() const override { return "pretrained:" + model_name_; }
    TokenizedInput tokenize(const Question& question, const Context& context) const override;
    SpanScores score(const TokenizedInput& input) const override;
    // Exported states are frozen; training is a no-op.
    TrainReport train(const std::vector<QAExample>& examples, const Hyperparams& hp) override;
    void save(const std::string& dir) const override;

private:
    PretrainedAdapter(std::string model_name, std::shared_ptr<const Encoder> impl)
        : model_name_(std::move(model_name)), impl_(std::move(impl)) {}

    std::string model_name_;
    std::shared_ptr<const Encoder> impl_;
};

// Registry strings:
//   "lexical-oracle"        training-free overlap oracle
//   "toy-char"              fresh trainable character encoder
//   "pretrained:<name>"     exported weights; requires model_dir
// max_seq_tokens configures fresh encoders; exported states keep the policy
// they were saved with.
std::unique_ptr<Encoder> make_encoder(const std::string& registry,
                                      const std::string& model_dir = "",
                                      int max_seq_tokens = 512);

// Re-opens any directory written by Encoder::save based on its meta.txt.
std::unique_ptr<Encoder> load_encoder_dir(const std::string& dir);

}  // namespace ecpe
