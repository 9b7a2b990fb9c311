#include "ecpe/toy_encoder.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <unordered_set>

#include "ecpe/errors.hpp"
#include "ecpe/parallel.hpp"

namespace ecpe {

namespace fs = std::filesystem;

ToyEncoder::ToyEncoder(int embed_dim, int max_seq_tokens)
    : embed_dim_(embed_dim), max_seq_tokens_(max_seq_tokens) {
    if (embed_dim < 1) throw ConfigError("embed_dim must be >= 1");
}

TokenizedInput ToyEncoder::tokenize(const Question& question, const Context& context) const {
    return tokenizer_.run(question, context, max_seq_tokens_);
}

const double* ToyEncoder::embedding(TokenId id) const {
    return embeddings_.data() + static_cast<std::size_t>(id) * static_cast<std::size_t>(embed_dim_);
}

void ToyEncoder::init_params(std::uint64_t seed) {
    const std::size_t vocab = tokenizer_.vocab_size();
    embeddings_.resize(vocab * static_cast<std::size_t>(embed_dim_));
    std::mt19937_64 rng(seed ^ 0xC0FFEE);
    for (double& e : embeddings_) {
        // uniform in [-0.3, 0.3); avoids std::normal_distribution so the
        // byte stream is identical across standard libraries
        const double u = static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
        e = (u * 2.0 - 1.0) * 0.3;
    }
    w_start_.assign(feature_dim(), 0.0);
    w_end_.assign(feature_dim(), 0.0);
    b_start_ = b_end_ = 0.0;
}

SpanScores ToyEncoder::score(const TokenizedInput& input) const {
    if (embeddings_.empty()) throw ModelError("toy encoder has no parameters; train or load first");
    const std::size_t vocab = tokenizer_.vocab_size();
    const auto check_id = [&](TokenId id) {
        if (id < 0 || static_cast<std::size_t>(id) >= vocab)
            throw ModelError("token id " + std::to_string(id) + " out of vocabulary");
    };
    for (TokenId id : input.question_tokens) check_id(id);
    for (TokenId id : input.context_tokens) check_id(id);

    std::unordered_set<TokenId> question_set(input.question_tokens.begin(),
                                             input.question_tokens.end());
    const std::size_t n = input.context_tokens.size();
    const std::size_t d = static_cast<std::size_t>(embed_dim_);
    SpanScores out;
    out.start_logits.resize(n);
    out.end_logits.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const TokenId prev = i > 0 ? input.context_tokens[i - 1] : CharTokenizer::kBoundaryId;
        const TokenId cur = input.context_tokens[i];
        const TokenId next =
            i + 1 < n ? input.context_tokens[i + 1] : CharTokenizer::kBoundaryId;
        const double qmatch = question_set.count(cur) ? 1.0 : 0.0;
        const double* ep = embedding(prev);
        const double* ec = embedding(cur);
        const double* en = embedding(next);
        double s = b_start_, e = b_end_;
        for (std::size_t k = 0; k < d; ++k) {
            s += w_start_[k] * ep[k] + w_start_[d + k] * ec[k] + w_start_[2 * d + k] * en[k];
            e += w_end_[k] * ep[k] + w_end_[d + k] * ec[k] + w_end_[2 * d + k] * en[k];
        }
        s += w_start_[3 * d] * qmatch;
        e += w_end_[3 * d] * qmatch;
        out.start_logits[i] = s;
        out.end_logits[i] = e;
    }
    return out;
}

namespace {

struct PreparedExample {
    TokenizedInput input;
    std::size_t gold_start = 0;
    std::size_t gold_end = 0;
};

// Per-example gradient buffer; embedding rows are kept sparse in
// first-touch order so the serial reduction is deterministic.
struct GradBuffer {
    double loss = 0;
    std::vector<double> w_start, w_end;
    double b_start = 0, b_end = 0;
    std::vector<TokenId> rows;
    std::vector<std::vector<double>> row_grads;
    std::unordered_map<TokenId, std::size_t> row_index;

    std::vector<double>& row(TokenId id, std::size_t d) {
        const auto [it, fresh] = row_index.emplace(id, rows.size());
        if (fresh) {
            rows.push_back(id);
            row_grads.emplace_back(d, 0.0);
        }
        return row_grads[it->second];
    }
};

}  // namespace

TrainReport ToyEncoder::train(const std::vector<QAExample>& examples, const Hyperparams& hp) {
    TrainReport report;
    if (examples.empty()) return report;  // state unchanged
    if (hp.epochs < 1 || hp.batch_size < 1 || hp.learning_rate <= 0)
        throw ConfigError("hyperparameters must be positive");

    max_seq_tokens_ = hp.max_seq_tokens;
    if (!tokenizer_.frozen()) {
        for (const auto& ex : examples) {
            tokenizer_.add_text(ex.question.text);
            tokenizer_.add_text(ex.context.utf8());
        }
        tokenizer_.freeze();
        init_params(hp.seed);
    }

    // Tokenize once; training reuses the prepared inputs across epochs.
    std::vector<PreparedExample> prepared;
    prepared.reserve(examples.size());
    for (const auto& ex : examples) {
        if (!ex.gold_span || !ex.gold_clause_index)
            throw ModelError("training example for doc " + ex.doc_id + " has no gold span");
        PreparedExample p;
        p.input = tokenize(ex.question, ex.context);
        const auto toks = char_span_to_tokens(*ex.gold_span, p.input.char_alignment);
        if (!toks) {
            std::cerr << "warning: doc " << ex.doc_id
                      << ": gold span truncated away, example skipped\n";
            ++report.skipped_examples;
            continue;
        }
        if (toks->snapped) ++report.snapped_spans;
        p.gold_start = toks->start;
        p.gold_end = toks->end;
        prepared.push_back(std::move(p));
    }
    report.n_examples = prepared.size();
    if (prepared.empty()) return report;

    const std::size_t d = static_cast<std::size_t>(embed_dim_);
    const std::size_t fdim = feature_dim();
    std::mt19937_64 order_rng(hp.seed ^ 0x5EED5EED);
    std::vector<std::size_t> order(prepared.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    const auto example_grad = [&](const PreparedExample& p, GradBuffer& g) {
        const SpanScores scores = score(p.input);
        const std::vector<double> ls = log_softmax(scores.start_logits);
        const std::vector<double> le = log_softmax(scores.end_logits);
        g.loss = -(ls[p.gold_start] + le[p.gold_end]);
        g.w_start.assign(fdim, 0.0);
        g.w_end.assign(fdim, 0.0);
        g.b_start = g.b_end = 0.0;

        const std::unordered_set<TokenId> question_set(p.input.question_tokens.begin(),
                                                       p.input.question_tokens.end());
        const std::size_t n = p.input.context_tokens.size();
        for (std::size_t i = 0; i < n; ++i) {
            const double dls = std::exp(ls[i]) - (i == p.gold_start ? 1.0 : 0.0);
            const double dle = std::exp(le[i]) - (i == p.gold_end ? 1.0 : 0.0);
            const TokenId prev =
                i > 0 ? p.input.context_tokens[i - 1] : CharTokenizer::kBoundaryId;
            const TokenId cur = p.input.context_tokens[i];
            const TokenId next =
                i + 1 < n ? p.input.context_tokens[i + 1] : CharTokenizer::kBoundaryId;
            const double qmatch = question_set.count(cur) ? 1.0 : 0.0;
            const TokenId ids[3] = {prev, cur, next};
            for (int w = 0; w < 3; ++w) {
                const double* e = embedding(ids[w]);
                auto& row = g.row(ids[w], d);
                for (std::size_t k = 0; k < d; ++k) {
                    const std::size_t f = static_cast<std::size_t>(w) * d + k;
                    g.w_start[f] += dls * e[k];
                    g.w_end[f] += dle * e[k];
                    row[k] += dls * w_start_[f] + dle * w_end_[f];
                }
            }
            g.w_start[3 * d] += dls * qmatch;
            g.w_end[3 * d] += dle * qmatch;
            g.b_start += dls;
            g.b_end += dle;
        }
    };

    for (int epoch = 0; epoch < hp.epochs; ++epoch) {
        for (std::size_t i = order.size() - 1; i > 0; --i)
            std::swap(order[i], order[order_rng() % (i + 1)]);

        double epoch_loss = 0;
        for (std::size_t batch_lo = 0; batch_lo < order.size();
             batch_lo += static_cast<std::size_t>(hp.batch_size)) {
            const std::size_t batch_hi =
                std::min(order.size(), batch_lo + static_cast<std::size_t>(hp.batch_size));
            const std::size_t bsz = batch_hi - batch_lo;
            std::vector<GradBuffer> grads(bsz);
            par::for_each_index_checked(bsz, hp.threads, [&](std::size_t b) {
                example_grad(prepared[order[batch_lo + b]], grads[b]);
            });
            // reduce in example order: identical result for any thread count
            const double scale = hp.learning_rate / static_cast<double>(bsz);
            for (const GradBuffer& g : grads) {
                epoch_loss += g.loss;
                for (std::size_t f = 0; f < fdim; ++f) {
                    w_start_[f] -= scale * g.w_start[f];
                    w_end_[f] -= scale * g.w_end[f];
                }
                b_start_ -= scale * g.b_start;
                b_end_ -= scale * g.b_end;
                for (std::size_t r = 0; r < g.rows.size(); ++r) {
                    double* e = embeddings_.data() +
                                static_cast<std::size_t>(g.rows[r]) * d;
                    for (std::size_t k = 0; k < d; ++k) e[k] -= scale * g.row_grads[r][k];
                }
            }
        }
        report.epoch_mean_loss.push_back(epoch_loss / static_cast<double>(prepared.size()));
    }

    trained_ = true;
    last_hp_ = hp;
    return report;
}

void ToyEncoder::save(const std::string& dir) const {
    fs::create_directories(dir);
    {
        std::ofstream meta(fs::path(dir) / "meta.txt");
        if (!meta) throw DataError("cannot write encoder metadata in " + dir);
        meta << "format = ecpe-encoder-v1\n";
        meta << "kind = toy-char\n";
        meta << "model_name = toy-char\n";
        meta << "arch = char-window-v1\n";
        meta << "tokenizer = char-vocab\n";
        meta << "embed_dim = " << embed_dim_ << "\n";
        meta << "max_seq_tokens = " << max_seq_tokens_ << "\n";
        meta << "trained = " << (trained_ ? 1 : 0) << "\n";
        meta << "epochs = " << last_hp_.epochs << "\n";
        meta << "learning_rate = " << last_hp_.learning_rate << "\n";
        meta << "batch_size = " << last_hp_.batch_size << "\n";
        meta << "seed = " << last_hp_.seed << "\n";
        meta << "truncation = whole-trailing-clauses\n";
    }
    tokenizer_.save_vocab((fs::path(dir) / "vocab.txt").string());

    std::ofstream w(fs::path(dir) / "weights.bin", std::ios::binary);
    if (!w) throw DataError("cannot write weights in " + dir);
    const char magic[8] = {'E', 'C', 'P', 'E', 'W', '0', '0', '1'};
    w.write(magic, sizeof magic);
    const std::int64_t vocab = static_cast<std::int64_t>(tokenizer_.vocab_size());
    const std::int64_t dim = embed_dim_;
    w.write(reinterpret_cast<const char*>(&vocab), sizeof vocab);
    w.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    const auto dump = [&](const std::vector<double>& v) {
        w.write(reinterpret_cast<const char*>(v.data()),
                static_cast<std::streamsize>(v.size() * sizeof(double)));
    };
    dump(embeddings_);
    dump(w_start_);
    w.write(reinterpret_cast<const char*>(&b_start_), sizeof b_start_);
    dump(w_end_);
    w.write(reinterpret_cast<const char*>(&b_end_), sizeof b_end_);
}

ToyEncoder ToyEncoder::load(const std::string& dir) {
    std::ifstream meta(fs::path(dir) / "meta.txt");
    if (!meta) throw DataError("cannot open encoder metadata in " + dir);
    int embed_dim = 0, max_seq = 512, trained = 0;
    std::string line;
    while (std::getline(meta, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = line.substr(0, line.find(' '));
        const std::string val = line.substr(eq + 1);
        if (key == "embed_dim") embed_dim = std::stoi(val);
        if (key == "max_seq_tokens") max_seq = std::stoi(val);
        if (key == "trained") trained = std::stoi(val);
        if (key == "arch" && val.find("char-window-v1") == std::string::npos)
            throw ModelError("unsupported encoder architecture:" + val);
    }
    if (embed_dim < 1) throw DataError("encoder metadata missing embed_dim in " + dir);

    ToyEncoder enc(embed_dim, max_seq);
    enc.tokenizer_ = CharTokenizer::load_vocab((fs::path(dir) / "vocab.txt").string());
    enc.trained_ = trained != 0;

    std::ifstream w(fs::path(dir) / "weights.bin", std::ios::binary);
    if (!w) throw DataError("cannot open weights in " + dir);
    char magic[8];
    w.read(magic, sizeof magic);
    if (std::memcmp(magic, "ECPEW001", 8) != 0)
        throw DataError("bad weights magic in " + dir);
    std::int64_t vocab = 0, dim = 0;
    w.read(reinterpret_cast<char*>(&vocab), sizeof vocab);
    w.read(reinterpret_cast<char*>(&dim), sizeof dim);
    if (vocab != static_cast<std::int64_t>(enc.tokenizer_.vocab_size()) || dim != embed_dim)
        throw DataError("weights shape does not match vocabulary/metadata in " + dir);
    const auto slurp = [&](std::vector<double>& v, std::size_t count) {
        v.resize(count);
        w.read(reinterpret_cast<char*>(v.data()),
               static_cast<std::streamsize>(count * sizeof(double)));
    };
    slurp(enc.embeddings_, static_cast<std::size_t>(vocab) * static_cast<std::size_t>(dim));
    slurp(enc.w_start_, enc.feature_dim());
    w.read(reinterpret_cast<char*>(&enc.b_start_), sizeof enc.b_start_);
    slurp(enc.w_end_, enc.feature_dim());
    w.read(reinterpret_cast<char*>(&enc.b_end_), sizeof enc.b_end_);
    if (!w) throw DataError("truncated weights file in " + dir);
    return enc;
}

}  // namespace ecpe
