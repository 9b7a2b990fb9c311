#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/encoder.hpp"
#include "ecpe/metrics.hpp"
#include "ecpe/pipeline.hpp"

namespace ecpe {

struct RunConfig {
    std::string corpus_path;
    CorpusFormat corpus_format = CorpusFormat::jsonl;
    std::string split_file;       // wins over (k_splits, split_seed) when set
    int k_splits = 1;
    std::uint64_t split_seed = 0;
    Variant variant = Variant::guided_emotion_first;
    std::string encoder = "toy-char";
    std::string model_dir;        // weights directory for pretrained:<name>
    Hyperparams hp;               // epochs=5, lr=5e-5, batch=16 per defaults
    StageConfig stage;
    std::string out_dir;
    std::uint64_t run_seed = 0;
    int threads = 1;
    bool parallel_splits = false;
};

void validate(const RunConfig& cfg);  // throws ConfigError
std::string serialize_config(const RunConfig& cfg);

struct SplitOutcome {
    int split_id = 0;
    bool ok = false;
    std::string error;
    EvalReport report;
};

struct RunResult {
    std::vector<SplitOutcome> splits;
    SplitAggregate aggregate;  // over successful splits
    std::size_t n_failed = 0;
};

// For each split: builds the variant's training sets from the train
// documents, trains the stage encoders, predicts on the test documents and
// evaluates. Writes per-split artifacts (report.json, table.txt,
// predictions.jsonl, train_examples.jsonl, encoder states), the aggregate
// report, the resolved config and an environment manifest under
// cfg.out_dir. A failing split is recorded and the remaining splits run.
RunResult run_experiment(const RunConfig& cfg);

}  // namespace ecpe
