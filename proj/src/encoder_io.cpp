#include "ecpe/encoder_io.hpp"

#include <filesystem>
#include <fstream>

#include "ecpe/errors.hpp"
#include "ecpe/lexical_oracle.hpp"
#include "ecpe/toy_encoder.hpp"

namespace ecpe {

namespace fs = std::filesystem;

namespace {

std::string meta_value(const std::string& dir, const std::string& wanted) {
    std::ifstream meta(fs::path(dir) / "meta.txt");
    if (!meta) throw DataError("cannot open encoder metadata in " + dir);
    std::string line;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        if (key != wanted) continue;
        std::string val = line.substr(eq + 1);
        while (!val.empty() && val.front() == ' ') val.erase(val.begin());
        return val;
    }
    return "";
}

}  // namespace

PretrainedAdapter PretrainedAdapter::load(const std::string& model_name, const std::string& dir) {
    if (dir.empty())
        throw ConfigError("pretrained encoder '" + model_name +
                          "' needs a weights directory (--model-dir)");
    const std::string found = meta_value(dir, "model_name");
    if (found != model_name)
        throw ConfigError("weights directory " + dir + " holds model '" + found +
                          "', not '" + model_name + "'");
    const std::string kind = meta_value(dir, "kind");
    std::shared_ptr<const Encoder> impl;
    if (kind == "toy-char")
        impl = std::make_shared<ToyEncoder>(ToyEncoder::load(dir));
    else if (kind == "lexical-oracle")
        impl = std::make_shared<LexicalOracleEncoder>(LexicalOracleEncoder::load(dir));
    else
        throw ModelError("weights directory " + dir + " has unsupported kind '" + kind +
                         "'; only states exported by this project can be executed");
    return PretrainedAdapter(model_name, std::move(impl));
}

TokenizedInput PretrainedAdapter::tokenize(const Question& question,
                                           const Context& context) const {
    return impl_->tokenize(question, context);
}

SpanScores PretrainedAdapter::score(const TokenizedInput& input) const {
    return impl_->score(input);
}

TrainReport PretrainedAdapter::train(const std::vector<QAExample>& examples, const Hyperparams&) {
    // exported states are frozen; like the oracle, training is a no-op
    TrainReport report;
    report.n_examples = examples.size();
    return report;
}

void PretrainedAdapter::save(const std::string& dir) const { impl_->save(dir); }

std::unique_ptr<Encoder> make_encoder(const std::string& registry, const std::string& model_dir,
                                      int max_seq_tokens) {
    if (registry == "lexical-oracle")
        return std::make_unique<LexicalOracleEncoder>(max_seq_tokens);
    if (registry == "toy-char") return std::make_unique<ToyEncoder>(16, max_seq_tokens);
    constexpr std::string_view prefix = "pretrained:";
    if (registry.rfind(prefix, 0) == 0) {
        const std::string name = registry.substr(prefix.size());
        if (name.empty()) throw ConfigError("empty model name in registry string");
        return std::make_unique<PretrainedAdapter>(PretrainedAdapter::load(name, model_dir));
    }
    throw ConfigError("unknown encoder registry string '" + registry +
                      "' (expected lexical-oracle, toy-char, or pretrained:<name>)");
}

std::unique_ptr<Encoder> load_encoder_dir(const std::string& dir) {
    const std::string kind = meta_value(dir, "kind");
    if (kind == "toy-char") return std::make_unique<ToyEncoder>(ToyEncoder::load(dir));
    if (kind == "lexical-oracle")
        return std::make_unique<LexicalOracleEncoder>(LexicalOracleEncoder::load(dir));
    throw DataError("directory " + dir + " does not hold a known encoder state");
}

}  // namespace ecpe
