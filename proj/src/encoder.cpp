#include "ecpe/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ecpe/errors.hpp"
#include "ecpe/parallel.hpp"

namespace ecpe {

std::vector<double> log_softmax(const std::vector<double>& logits) {
    std::vector<double> out(logits.size());
    if (logits.empty()) return out;
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    double sum = 0;
    for (double v : logits) sum += std::exp(v - mx);
    const double lse = mx + std::log(sum);
    for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
    return out;
}

namespace {

struct SpanCandidate {
    double score = -std::numeric_limits<double>::infinity();
    std::size_t start = 0;
    std::size_t end = 0;

    bool better_than(const SpanCandidate& o) const {
        if (score != o.score) return score > o.score;
        if (start != o.start) return start < o.start;
        return end < o.end;
    }
};

SpanCandidate best_in_rows(const std::vector<double>& ls, const std::vector<double>& le,
                           std::size_t row_begin, std::size_t row_end, std::size_t max_len) {
    SpanCandidate best;
    const std::size_t n = ls.size();
    for (std::size_t s = row_begin; s < row_end; ++s) {
        const std::size_t e_hi = std::min(n, s + max_len);
        for (std::size_t e = s; e < e_hi; ++e) {
            SpanCandidate c{ls[s] + le[e], s, e};
            if (c.better_than(best)) best = c;
        }
    }
    return best;
}

}  // namespace

SpanPrediction best_span(const SpanScores& scores, const std::vector<CharSpan>& alignment,
                         int max_span_tokens) {
    const std::size_t n = scores.start_logits.size();
    if (n == 0) throw ModelError("best_span: empty context");
    if (scores.end_logits.size() != n)
        throw ModelError("best_span: start/end logit lengths differ");
    if (alignment.size() != n)
        throw ModelError("best_span: alignment length does not match logits");
    if (max_span_tokens < 1) throw ConfigError("max_span_tokens must be >= 1");
    for (std::size_t i = 0; i < n; ++i)
        if (!std::isfinite(scores.start_logits[i]) || !std::isfinite(scores.end_logits[i]))
            throw ModelError("best_span: non-finite logit at token " + std::to_string(i));

    const std::vector<double> ls = log_softmax(scores.start_logits);
    const std::vector<double> le = log_softmax(scores.end_logits);
    const std::size_t max_len = static_cast<std::size_t>(max_span_tokens);

    SpanCandidate best;
#ifdef _OPENMP
    // The tie-break comparator is a total order, so merging per-chunk bests
    // gives the same answer as the serial scan for any partition.
    if (n >= 4096) {
        const int threads = par::hardware_threads();
        const std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) /
                                  static_cast<std::size_t>(threads);
        std::vector<SpanCandidate> local(static_cast<std::size_t>(threads));
        par::for_each_index(static_cast<std::size_t>(threads), threads, [&](std::size_t t) {
            const std::size_t lo = t * chunk;
            const std::size_t hi = std::min(n, lo + chunk);
            if (lo < hi) local[t] = best_in_rows(ls, le, lo, hi, max_len);
        });
        for (const auto& c : local)
            if (c.better_than(best)) best = c;
    } else
#endif
    {
        best = best_in_rows(ls, le, 0, n, max_len);
    }

    SpanPrediction pred;
    pred.start_token = best.start;
    pred.end_token = best.end;
    pred.score = best.score;
    pred.char_span = {alignment[best.start].begin, alignment[best.end].end};
    return pred;
}

std::optional<TokenSpan> char_span_to_tokens(const CharSpan& span,
                                             const std::vector<CharSpan>& alignment) {
    std::optional<std::size_t> first, last;
    for (std::size_t i = 0; i < alignment.size(); ++i) {
        if (span_overlap(span, alignment[i]) > 0) {
            if (!first) first = i;
            last = i;
        }
    }
    if (!first) return std::nullopt;
    TokenSpan out;
    out.start = *first;
    out.end = *last;
    out.snapped = alignment[*first].begin != span.begin || alignment[*last].end != span.end;
    return out;
}

CharTokenizer CharTokenizer::identity() {
    CharTokenizer t;
    t.identity_ = true;
    t.frozen_ = true;
    return t;
}

void CharTokenizer::add_text(const std::string& utf8) {
    if (frozen_) throw ModelError("tokenizer vocabulary is frozen");
    for (char32_t cp : decode_utf8(utf8)) {
        if (char_to_id_.emplace(cp, static_cast<TokenId>(id_to_char_.size()) + kFirstCharId)
                .second)
            id_to_char_.push_back(cp);
    }
}

std::size_t CharTokenizer::vocab_size() const {
    if (identity_) return 0x110000 + kFirstCharId;
    return id_to_char_.size() + static_cast<std::size_t>(kFirstCharId);
}

TokenId CharTokenizer::lookup(char32_t cp) const {
    if (identity_) return static_cast<TokenId>(cp) + kFirstCharId;
    const auto it = char_to_id_.find(cp);
    if (it != char_to_id_.end()) return it->second;
    if (!frozen_) throw ModelError("tokenizer vocabulary still under construction");
    return kUnkId;
}

char32_t CharTokenizer::char_of(TokenId id) const {
    if (id < kFirstCharId) throw ModelError("reserved token id has no character");
    if (identity_) return static_cast<char32_t>(id - kFirstCharId);
    const std::size_t k = static_cast<std::size_t>(id - kFirstCharId);
    if (k >= id_to_char_.size()) throw ModelError("token id out of vocabulary");
    return id_to_char_[k];
}

TokenizedInput CharTokenizer::run(const Question& question, const Context& context,
                                  int max_seq_tokens) const {
    if (max_seq_tokens < 1) throw ConfigError("max_seq_tokens must be >= 1");
    TokenizedInput out;
    for (char32_t cp : decode_utf8(question.text)) out.question_tokens.push_back(lookup(cp));

    const std::size_t budget = static_cast<std::size_t>(max_seq_tokens);
    if (out.question_tokens.size() >= budget)
        throw DataError("question alone (" + std::to_string(out.question_tokens.size()) +
                        " tokens) exceeds the sequence budget of " + std::to_string(budget));
    const std::size_t context_budget = budget - out.question_tokens.size();

    for (std::size_t ci = 0; ci < context.n_clauses(); ++ci) {
        const CharSpan cl = context.clause_offsets[ci];
        if (out.context_tokens.size() + cl.length() > context_budget) {
            // drop this and all trailing clauses
            for (std::size_t k = ci; k < context.n_clauses(); ++k)
                out.dropped_clauses.push_back(static_cast<int>(k) + 1);
            break;
        }
        ClauseTokens ct;
        ct.clause_index = static_cast<int>(ci) + 1;
        ct.tok_begin = out.context_tokens.size();
        for (std::size_t p = cl.begin; p < cl.end; ++p) {
            out.context_tokens.push_back(lookup(context.text[p]));
            out.char_alignment.push_back({p, p + 1});
        }
        ct.tok_end = out.context_tokens.size();
        out.clause_tokens.push_back(ct);
    }
    if (out.context_tokens.empty())
        throw DataError("no clause fits the sequence budget of " + std::to_string(budget) +
                        " tokens");
    return out;
}

void CharTokenizer::save_vocab(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write vocab file: " + path);
    out << (identity_ ? "identity" : "chars") << '\n';
    for (char32_t cp : id_to_char_) out << encode_utf8(std::u32string(1, cp)) << '\n';
}

CharTokenizer CharTokenizer::load_vocab(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open vocab file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw DataError("empty vocab file: " + path);
    if (header == "identity") return identity();
    if (header != "chars") throw DataError("unrecognized vocab header in " + path);
    CharTokenizer t;
    std::string line;
    while (std::getline(in, line)) {
        const std::u32string cps = decode_utf8(line);
        if (cps.size() != 1)
            throw DataError("vocab line is not a single character in " + path);
        t.add_text(line);
    }
    t.freeze();
    return t;
}

}  // namespace ecpe
