#include "ecpe/run.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "ecpe/encoder_io.hpp"
#include "ecpe/errors.hpp"
#include "ecpe/parallel.hpp"
#include "ecpe/qa.hpp"

namespace ecpe {

namespace fs = std::filesystem;

void validate(const RunConfig& cfg) {
    if (cfg.corpus_path.empty()) throw ConfigError("run: corpus path is required");
    if (!fs::exists(cfg.corpus_path))
        throw ConfigError("run: corpus path does not exist: " + cfg.corpus_path);
    if (!cfg.split_file.empty() && !fs::exists(cfg.split_file))
        throw ConfigError("run: split file does not exist: " + cfg.split_file);
    if (cfg.split_file.empty() && cfg.k_splits < 1)
        throw ConfigError("run: split count must be >= 1");
    if (cfg.out_dir.empty()) throw ConfigError("run: output directory is required");
    if (cfg.hp.epochs < 1 || cfg.hp.batch_size < 1 || cfg.hp.learning_rate <= 0 ||
        cfg.hp.max_seq_tokens < 1 || cfg.hp.max_span_tokens < 1)
        throw ConfigError("run: hyperparameters must be positive");
    if (cfg.threads < 1) throw ConfigError("run: threads must be >= 1");
    if (!cfg.model_dir.empty() && !fs::exists(cfg.model_dir))
        throw ConfigError("run: model directory does not exist: " + cfg.model_dir);
}

std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "corpus = " << cfg.corpus_path << "\n";
    os << "format = " << (cfg.corpus_format == CorpusFormat::native ? "native" : "jsonl")
       << "\n";
    os << "splits = " << cfg.split_file << "\n";
    os << "k = " << cfg.k_splits << "\n";
    os << "split-seed = " << cfg.split_seed << "\n";
    os << "variant = " << to_string(cfg.variant) << "\n";
    os << "encoder = " << cfg.encoder << "\n";
    os << "model-dir = " << cfg.model_dir << "\n";
    os << "epochs = " << cfg.hp.epochs << "\n";
    os << "learning-rate = " << cfg.hp.learning_rate << "\n";
    os << "batch-size = " << cfg.hp.batch_size << "\n";
    os << "max-seq-tokens = " << cfg.hp.max_seq_tokens << "\n";
    os << "max-span-tokens = " << cfg.hp.max_span_tokens << "\n";
    os << "emotion-question = " << cfg.stage.emotion_question << "\n";
    os << "cause-question = " << cfg.stage.cause_question << "\n";
    os << "out = " << cfg.out_dir << "\n";
    os << "seed = " << cfg.run_seed << "\n";
    os << "threads = " << cfg.threads << "\n";
    os << "parallel-splits = " << (cfg.parallel_splits ? 1 : 0) << "\n";
    return os.str();
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path.string());
    out << content;
}

std::string environment_manifest(const RunConfig& cfg) {
    std::ostringstream os;
    os << "ecpe-qa 1.0.0\n";
#if defined(__clang__)
    os << "compiler = clang " << __clang_major__ << "." << __clang_minor__ << "\n";
#elif defined(__GNUC__)
    os << "compiler = gcc " << __GNUC__ << "." << __GNUC_MINOR__ << "\n";
#endif
    os << "cxx-standard = " << __cplusplus << "\n";
    os << "openmp = " << (par::openmp_enabled() ? 1 : 0) << "\n";
    os << "hardware-threads = " << par::hardware_threads() << "\n";
    os << "requested-threads = " << cfg.threads << "\n";
    return os.str();
}

std::vector<Document> gather(const std::vector<Document>& corpus,
                             const std::unordered_map<std::string, std::size_t>& index,
                             const std::vector<std::string>& ids) {
    std::vector<Document> out;
    out.reserve(ids.size());
    for (const auto& id : ids) out.push_back(corpus[index.at(id)]);
    return out;
}

struct TrainedStages {
    std::unique_ptr<Encoder> emotion;
    std::unique_ptr<Encoder> cause;
};

// The two stages keep separately trainable states even when they share
// training data, so ablations can swap either side.
TrainedStages train_stages(const RunConfig& cfg, const std::vector<Document>& train_docs,
                           const fs::path& split_dir) {
    std::vector<QAExample> examples = build_training_sets(train_docs, cfg.variant, cfg.stage);

    // deterministic training order: seeded shuffle of the example list,
    // archived for reproducibility checks
    std::mt19937_64 rng(cfg.run_seed ^ 0xD0C5);
    for (std::size_t i = examples.size(); i > 1; --i)
        std::swap(examples[i - 1], examples[rng() % i]);
    {
        std::ofstream dump(split_dir / "train_examples.jsonl");
        if (!dump) throw DataError("cannot write train_examples.jsonl");
        write_examples_jsonl(examples, dump);
    }

    std::vector<QAExample> emotion_examples, cause_examples;
    for (auto& ex : examples)
        (ex.target == Target::emotion ? emotion_examples : cause_examples)
            .push_back(std::move(ex));

    Hyperparams hp = cfg.hp;
    hp.seed = cfg.run_seed;
    hp.threads = cfg.threads;

    TrainedStages stages;
    const auto fit = [&](std::vector<QAExample>& exs, const char* name) {
        auto enc = make_encoder(cfg.encoder, cfg.model_dir, hp.max_seq_tokens);
        const TrainReport report = enc->train(exs, hp);
        if (!report.epoch_mean_loss.empty()) {
            std::ostringstream os;
            os << name << " stage:";
            for (double l : report.epoch_mean_loss) os << ' ' << l;
            os << " (skipped " << report.skipped_examples << ", snapped "
               << report.snapped_spans << ")";
            std::cerr << "  " << os.str() << "\n";
        }
        enc->save((split_dir / (std::string("encoder_") + name)).string());
        return enc;
    };
    if (cfg.variant != Variant::ece) stages.emotion = fit(emotion_examples, "emotion");
    stages.cause = fit(cause_examples, "cause");
    return stages;
}

SplitOutcome run_split(const RunConfig& cfg, const std::vector<Document>& corpus,
                       const std::unordered_map<std::string, std::size_t>& index,
                       const SplitSet& split, const fs::path& out_root) {
    SplitOutcome outcome;
    outcome.split_id = split.split_id;
    const fs::path split_dir =
        out_root / ("split_" + std::to_string(split.split_id));
    fs::create_directories(split_dir);
    try {
        const std::vector<Document> train_docs = gather(corpus, index, split.train);
        const std::vector<Document> test_docs = gather(corpus, index, split.test);

        const TrainedStages stages = train_stages(cfg, train_docs, split_dir);
        VariantEncoders encoders;
        encoders.emotion = stages.emotion.get();
        encoders.cause = stages.cause.get();

        const std::vector<PairPrediction> preds =
            predict_corpus(test_docs, cfg.variant, encoders, cfg.stage, cfg.threads);
        {
            std::ofstream out(split_dir / "predictions.jsonl");
            if (!out) throw DataError("cannot write predictions.jsonl");
            write_predictions_jsonl(preds, out);
        }
        outcome.report = evaluate(test_docs, preds);
        write_file(split_dir / "report.json", report_to_json(outcome.report));
        write_file(split_dir / "table.txt",
                   render_table({{std::string(to_string(cfg.variant)) + " split " +
                                      std::to_string(split.split_id),
                                  outcome.report}}));
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.error = e.what();
        write_file(split_dir / "FAILED.txt", outcome.error + "\n");
    }
    return outcome;
}

}  // namespace

RunResult run_experiment(const RunConfig& cfg) {
    validate(cfg);
    const fs::path out_root(cfg.out_dir);
    fs::create_directories(out_root);
    write_file(out_root / "config.resolved", serialize_config(cfg));
    write_file(out_root / "environment.txt", environment_manifest(cfg));

    ParseOptions opts;
    const std::vector<Document> corpus = load_corpus(cfg.corpus_path, cfg.corpus_format, opts);
    std::unordered_map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < corpus.size(); ++i) index.emplace(corpus[i].doc_id, i);

    const std::vector<SplitSet> splits = cfg.split_file.empty()
                                             ? make_splits(corpus, cfg.k_splits, cfg.split_seed)
                                             : load_splits(cfg.split_file);
    validate_splits(splits, corpus);
    save_splits(splits, (out_root / "splits.jsonl").string());

    RunResult result;
    result.splits.resize(splits.size());
    const int split_threads = cfg.parallel_splits ? par::hardware_threads() : 1;
    par::for_each_index(splits.size(), split_threads, [&](std::size_t i) {
        result.splits[i] = run_split(cfg, corpus, index, splits[i], out_root);
    });

    std::vector<EvalReport> ok_reports;
    std::ostringstream summary;
    for (const auto& s : result.splits) {
        if (s.ok) {
            ok_reports.push_back(s.report);
            summary << "split " << s.split_id << ": ok\n";
        } else {
            ++result.n_failed;
            summary << "split " << s.split_id << ": FAILED (" << s.error << ")\n";
        }
    }
    write_file(out_root / "summary.txt", summary.str());
    if (ok_reports.empty())
        throw ModelError("run: every split failed; see " + (out_root / "summary.txt").string());

    result.aggregate = aggregate_splits(ok_reports);
    write_file(out_root / "aggregate.json", aggregate_to_json(result.aggregate));

    std::vector<std::pair<std::string, EvalReport>> rows;
    for (std::size_t i = 0; i < result.splits.size(); ++i)
        if (result.splits[i].ok)
            rows.emplace_back("split " + std::to_string(result.splits[i].split_id),
                              result.splits[i].report);
    rows.emplace_back(std::string(to_string(cfg.variant)) + " (mean)", result.aggregate.mean);
    write_file(out_root / "table.txt", render_table(rows));
    return result;
}

}  // namespace ecpe
