#include "reference.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <unordered_set>

namespace ecpe::ref {

SpanResult best_span_exhaustive(const SpanScores& scores, int max_span_tokens) {
    const std::size_t n = scores.start_logits.size();
    // direct softmax, probability-product scoring
    const auto softmax = [](const std::vector<double>& logits) {
        double mx = logits[0];
        for (double v : logits) mx = std::max(mx, v);
        double sum = 0;
        std::vector<double> out(logits.size());
        for (std::size_t i = 0; i < logits.size(); ++i) {
            out[i] = std::exp(logits[i] - mx);
            sum += out[i];
        }
        for (double& v : out) v /= sum;
        return out;
    };
    const std::vector<double> ps = softmax(scores.start_logits);
    const std::vector<double> pe = softmax(scores.end_logits);

    SpanResult best;
    double best_prob = -1;
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t e = s; e < n; ++e) {
            if (e - s + 1 > static_cast<std::size_t>(max_span_tokens)) continue;
            const double prob = ps[s] * pe[e];
            if (prob > best_prob) {
                best_prob = prob;
                best = {s, e};
            }
        }
    }
    return best;
}

OverlapResult max_overlap_clause(const CharSpan& span, const Context& context) {
    OverlapResult out;
    out.per_clause.assign(context.n_clauses(), 0);
    for (std::size_t pos = span.begin; pos < span.end; ++pos)
        for (std::size_t c = 0; c < context.n_clauses(); ++c)
            if (pos >= context.clause_offsets[c].begin && pos < context.clause_offsets[c].end)
                ++out.per_clause[c];

    std::size_t best = 0;
    for (std::size_t c = 0; c < context.n_clauses(); ++c) {
        if (out.per_clause[c] > best) {
            best = out.per_clause[c];
            out.winner = static_cast<int>(c) + 1;
        }
    }
    if (best == 0) {
        std::size_t best_dist = static_cast<std::size_t>(-1);
        for (std::size_t c = 0; c < context.n_clauses(); ++c) {
            const std::size_t start = context.clause_offsets[c].begin;
            const std::size_t dist =
                start > span.begin ? start - span.begin : span.begin - start;
            if (dist < best_dist) {
                best_dist = dist;
                out.winner = static_cast<int>(c) + 1;
            }
        }
    }
    return out;
}

std::size_t question_char_overlap(const std::string& question_utf8,
                                  const std::string& clause_utf8) {
    std::unordered_set<char32_t> qset;
    for (char32_t cp : decode_utf8(question_utf8))
        if (!is_space_cp(cp)) qset.insert(cp);
    std::size_t count = 0;
    for (char32_t cp : decode_utf8(clause_utf8))
        if (!is_space_cp(cp) && qset.count(cp)) ++count;
    return count;
}

std::vector<Document> random_documents(std::mt19937_64& rng, std::size_t n_docs,
                                       int max_clauses, int max_pairs) {
    static const char* kAlphabet = "abcdefgh";
    std::vector<Document> docs;
    docs.reserve(n_docs);
    for (std::size_t d = 0; d < n_docs; ++d) {
        const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_clauses));
        std::vector<std::string> texts;
        for (int c = 0; c < n; ++c) {
            const std::size_t len = 1 + rng() % 7;
            std::string t;
            for (std::size_t k = 0; k < len; ++k) t.push_back(kAlphabet[rng() % 8]);
            texts.push_back(std::move(t));
        }
        const std::size_t possible = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
        const std::size_t want =
            std::min(possible, 1 + rng() % static_cast<std::uint64_t>(max_pairs));
        std::set<ClausePair> pairs;
        while (pairs.size() < want) {
            pairs.emplace(1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n)),
                          1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n)));
        }
        docs.push_back(make_document("rnd-" + std::to_string(d), std::move(texts),
                                     {pairs.begin(), pairs.end()}));
    }
    return docs;
}

Document figure_document() {
    return make_document("fig1",
                         {"the old man lived alone", "his son died in the accident",
                          "nobody was there for him", "he felt happy with the visit",
                          "he was worried all week", "the journey was dangerous"},
                         {{4, 2}, {4, 3}, {5, 6}});
}

Document figure_document_rigged() {
    return make_document("fig1-rigged",
                         {"ffff", "gggg", "cc kk77 kk77", "ee kk77", "hhhh", "jjjj"},
                         {{4, 2}, {4, 3}, {5, 6}});
}

}  // namespace ecpe::ref
