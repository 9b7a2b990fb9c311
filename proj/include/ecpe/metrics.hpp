#pragma once

#include <iosfwd>
#include <set>
#include <string>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/pipeline.hpp"

namespace ecpe {

// precision = |gold ∩ pred| / |pred|, recall = |gold ∩ pred| / |gold|,
// f1 = 2PR/(P+R); every empty denominator yields 0.
struct PRF {
    double precision = 0;
    double recall = 0;
    double f1 = 0;
    std::size_t n_gold = 0;
    std::size_t n_pred = 0;
    std::size_t n_intersection = 0;
};

template <typename T>
PRF prf(const std::set<T>& gold, const std::set<T>& pred) {
    PRF out;
    out.n_gold = gold.size();
    out.n_pred = pred.size();
    for (const T& g : gold) out.n_intersection += pred.count(g);
    if (out.n_pred > 0)
        out.precision = static_cast<double>(out.n_intersection) / static_cast<double>(out.n_pred);
    if (out.n_gold > 0)
        out.recall = static_cast<double>(out.n_intersection) / static_cast<double>(out.n_gold);
    if (out.precision + out.recall > 0)
        out.f1 = 2 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

struct EvalReport {
    PRF emotion, cause, pair;
    std::size_t n_documents = 0;
};

// Pooled (micro) scoring: gold and predicted items are collected over all
// documents keyed by (doc_id, item), then run through prf once per task.
// At most one prediction per document; unknown or duplicate doc_ids throw.
EvalReport evaluate(const std::vector<Document>& docs, const std::vector<PairPrediction>& preds);

// Single-document scope.
EvalReport evaluate_document(const Document& doc, const PairPrediction& pred);

struct TaskSpread {
    double precision = 0, recall = 0, f1 = 0;
};

struct SplitAggregate {
    EvalReport mean;                  // P/R/F1 arithmetic means; counts summed
    TaskSpread emotion_sd, cause_sd, pair_sd;  // sample standard deviation
    std::vector<EvalReport> per_split;
};

SplitAggregate aggregate_splits(const std::vector<EvalReport>& reports);

// Text table in the Model | Emotion P/R/F1 | Cause | Pair layout, scores to
// three decimals.
std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& rows);

std::string report_to_json(const EvalReport& report);
EvalReport report_from_json(const std::string& text);
std::string aggregate_to_json(const SplitAggregate& agg);

}  // namespace ecpe
