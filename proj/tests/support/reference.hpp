#pragma once

// Brute-force reference implementations used as oracles by the test and
// acceptance suites (and timed against the production kernels by the
// benchmark tool). They stay independent of the code paths they check:
// span search enumerates every candidate and scores it as a probability
// product, counting walks items pairwise, and mapping counts characters
// one position at a time.

#include <cstdint>
#include <random>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/encoder.hpp"
#include "ecpe/qa.hpp"

namespace ecpe::ref {

struct SpanResult {
    std::size_t start = 0;
    std::size_t end = 0;
};

// Enumerates all (start, end) with start <= end and length <= max_span_tokens
// and picks the span with the maximal product of start/end probabilities,
// ties to smaller start then smaller end.
SpanResult best_span_exhaustive(const SpanScores& scores, int max_span_tokens);

struct PRFTriple {
    double precision = 0, recall = 0, f1 = 0;
    std::size_t intersection = 0;
};

template <typename T>
PRFTriple prf_counting(const std::vector<T>& gold, const std::vector<T>& pred) {
    PRFTriple out;
    for (const T& g : gold)
        for (const T& p : pred)
            if (g == p) ++out.intersection;
    if (!pred.empty())
        out.precision = static_cast<double>(out.intersection) / static_cast<double>(pred.size());
    if (!gold.empty())
        out.recall = static_cast<double>(out.intersection) / static_cast<double>(gold.size());
    if (out.precision + out.recall > 0)
        out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

struct OverlapResult {
    std::vector<std::size_t> per_clause;
    int winner = 0;
};

// Counts span characters clause by clause, one position at a time.
OverlapResult max_overlap_clause(const CharSpan& span, const Context& context);

// Number of clause characters present in the question's character set,
// whitespace excluded; recomputed from the raw strings.
std::size_t question_char_overlap(const std::string& question_utf8,
                                  const std::string& clause_utf8);

// Random synthetic documents over a small alphabet, 1..max_pairs gold pairs.
std::vector<Document> random_documents(std::mt19937_64& rng, std::size_t n_docs,
                                       int max_clauses = 10, int max_pairs = 3);

// The six-clause example document: emotions in c4 and c5, causes c2 and c3
// for c4, c6 for c5.
Document figure_document();

// Same layout, clause texts arranged so the overlap oracle predicts
// emotion c4 and then cause c3.
Document figure_document_rigged();

}  // namespace ecpe::ref
