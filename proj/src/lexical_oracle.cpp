#include "ecpe/lexical_oracle.hpp"

#include <filesystem>
#include <fstream>
#include <unordered_set>

#include "ecpe/errors.hpp"

namespace ecpe {

LexicalOracleEncoder::LexicalOracleEncoder(int max_seq_tokens)
    : tokenizer_(CharTokenizer::identity()), max_seq_tokens_(max_seq_tokens) {}

TokenizedInput LexicalOracleEncoder::tokenize(const Question& question,
                                              const Context& context) const {
    return tokenizer_.run(question, context, max_seq_tokens_);
}

SpanScores LexicalOracleEncoder::score(const TokenizedInput& input) const {
    std::unordered_set<char32_t> question_chars;
    for (TokenId id : input.question_tokens) {
        const char32_t cp = tokenizer_.char_of(id);
        if (!is_space_cp(cp)) question_chars.insert(cp);
    }

    SpanScores scores;
    scores.start_logits.assign(input.context_tokens.size(), 0.0);
    scores.end_logits.assign(input.context_tokens.size(), 0.0);
    for (const ClauseTokens& ct : input.clause_tokens) {
        std::size_t overlap = 0;
        for (std::size_t i = ct.tok_begin; i < ct.tok_end; ++i) {
            const char32_t cp = tokenizer_.char_of(input.context_tokens[i]);
            if (!is_space_cp(cp) && question_chars.count(cp)) ++overlap;
        }
        for (std::size_t i = ct.tok_begin; i < ct.tok_end; ++i) {
            scores.start_logits[i] = static_cast<double>(overlap);
            scores.end_logits[i] = static_cast<double>(overlap);
        }
    }
    return scores;
}

TrainReport LexicalOracleEncoder::train(const std::vector<QAExample>& examples,
                                        const Hyperparams&) {
    TrainReport report;
    report.n_examples = examples.size();  // training-free; state unchanged
    return report;
}

void LexicalOracleEncoder::save(const std::string& dir) const {
    std::filesystem::create_directories(dir);
    std::ofstream meta(std::filesystem::path(dir) / "meta.txt");
    if (!meta) throw DataError("cannot write encoder metadata in " + dir);
    meta << "format = ecpe-encoder-v1\n";
    meta << "kind = lexical-oracle\n";
    meta << "model_name = lexical-oracle\n";
    meta << "tokenizer = char-identity\n";
    meta << "max_seq_tokens = " << max_seq_tokens_ << "\n";
    meta << "truncation = whole-trailing-clauses\n";
}

LexicalOracleEncoder LexicalOracleEncoder::load(const std::string& dir) {
    std::ifstream meta(std::filesystem::path(dir) / "meta.txt");
    if (!meta) throw DataError("cannot open encoder metadata in " + dir);
    int max_seq = 512;
    std::string line;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, line.find(' '));
        if (key == "max_seq_tokens") max_seq = std::stoi(line.substr(eq + 1));
    }
    return LexicalOracleEncoder(max_seq);
}

}  // namespace ecpe
