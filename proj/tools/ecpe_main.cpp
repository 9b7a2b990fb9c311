// ecpe — emotion-cause pair extraction as extractive QA.
// Subcommands: ingest, stats, split, synth, run, report.
// Exit codes: 0 success, 1 usage/config error, 2 data error,
// 3 training/inference failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecpe/corpus.hpp"
#include "ecpe/errors.hpp"
#include "ecpe/metrics.hpp"
#include "ecpe/run.hpp"
#include "ecpe/synth.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_ingest(const std::string& in_path, const std::string& format,
               const std::string& out_path, const std::string& stats_path,
               bool allow_unannotated) {
    ecpe::ParseOptions opts;
    opts.allow_unannotated = allow_unannotated;
    const auto docs =
        ecpe::load_corpus(in_path, ecpe::corpus_format_from_string(format), opts);
    if (docs.empty()) throw ecpe::DataError("no documents found in " + in_path);
    ecpe::save_corpus_jsonl(docs, out_path);
    const ecpe::PairHistogram h = ecpe::corpus_stats(docs);
    std::cout << "ingested " << docs.size() << " documents -> " << out_path << "\n"
              << ecpe::format_stats(h);
    if (!stats_path.empty()) {
        std::ofstream out(stats_path);
        if (!out) throw ecpe::DataError("cannot write " + stats_path);
        out << ecpe::format_stats(h);
    }
    return 0;
}

int cmd_stats(const std::string& in_path, const std::string& format) {
    const auto docs = ecpe::load_corpus(in_path, ecpe::corpus_format_from_string(format));
    std::cout << ecpe::format_stats(ecpe::corpus_stats(docs));
    return 0;
}

int cmd_split(const std::string& in_path, const std::string& format, int k,
              std::uint64_t seed, const std::string& out_path) {
    const auto docs = ecpe::load_corpus(in_path, ecpe::corpus_format_from_string(format));
    const auto splits = ecpe::make_splits(docs, k, seed);
    ecpe::save_splits(splits, out_path);
    std::cout << "wrote " << splits.size() << " splits (" << splits[0].train.size() << "/"
              << splits[0].dev.size() << "/" << splits[0].test.size() << " train/dev/test) -> "
              << out_path << "\n";
    return 0;
}

int cmd_synth(const std::string& kind, const std::string& out_path, std::size_t n_docs,
              std::uint64_t seed, const std::string& format) {
    std::vector<ecpe::Document> docs;
    if (kind == "rigged") {
        ecpe::RiggedCorpusOptions opts;
        opts.n_docs = n_docs;
        opts.seed = seed;
        docs = ecpe::make_rigged_corpus(opts);
    } else if (kind == "histogram") {
        docs = ecpe::make_histogram_corpus(seed);
    } else {
        throw ecpe::ConfigError("unknown synth kind '" + kind +
                                "' (expected rigged or histogram)");
    }
    if (format == "jsonl") {
        ecpe::save_corpus_jsonl(docs, out_path);
    } else {
        std::ofstream out(out_path);
        if (!out) throw ecpe::DataError("cannot write " + out_path);
        ecpe::write_native_corpus(docs, out);
    }
    std::cout << "wrote " << docs.size() << " synthetic documents -> " << out_path << "\n";
    return 0;
}

int cmd_run(const ecpe::RunConfig& cfg) {
    const ecpe::RunResult result = ecpe::run_experiment(cfg);
    std::vector<std::pair<std::string, ecpe::EvalReport>> rows;
    rows.emplace_back(std::string(ecpe::to_string(cfg.variant)) + " (mean over " +
                          std::to_string(result.aggregate.per_split.size()) + " splits)",
                      result.aggregate.mean);
    std::cout << ecpe::render_table(rows);
    if (result.n_failed > 0)
        std::cout << result.n_failed << " split(s) failed; see " << cfg.out_dir
                  << "/summary.txt\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& run_dirs) {
    std::vector<std::string> sorted = run_dirs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<std::string, ecpe::EvalReport>> rows;
    std::vector<std::string> unavailable;
    for (const auto& dir : sorted) {
        const fs::path agg = fs::path(dir) / "aggregate.json";
        const std::string name = fs::path(dir).filename().string().empty()
                                     ? dir
                                     : fs::path(dir).filename().string();
        std::ifstream in(agg);
        if (!in) {
            unavailable.push_back(name);
            continue;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        try {
            const auto j = nlohmann::json::parse(buffer.str());
            rows.emplace_back(name, ecpe::report_from_json(j.at("mean").dump()));
        } catch (const std::exception&) {
            unavailable.push_back(name);
        }
    }
    std::cout << ecpe::render_table(rows);
    for (const auto& name : unavailable) std::cout << name << "  n/a (no aggregate report)\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emotion-cause pair extraction via extractive QA"};
    app.require_subcommand(1);
    // key=value config; run options live under a [run] section, command-line
    // flags take precedence
    app.set_config("--config", "", "plain key=value config file; flags override");

    // ingest
    std::string in_path, format = "native", out_path, stats_path;
    bool allow_unannotated = false;
    auto* ingest = app.add_subcommand("ingest", "parse a raw corpus into normalized jsonl");
    ingest->add_option("--in", in_path, "raw corpus file")->required();
    ingest->add_option("--format", format, "native or jsonl (default native)");
    ingest->add_option("--out", out_path, "normalized jsonl output")->required();
    ingest->add_option("--stats-out", stats_path, "also write the histogram report here");
    ingest->add_flag("--allow-unannotated", allow_unannotated,
                     "accept documents without gold pairs (prediction-only data)");

    // stats
    std::string stats_in, stats_format = "jsonl";
    auto* stats = app.add_subcommand("stats", "pair histogram and clause statistics");
    stats->add_option("--in", stats_in, "corpus file")->required();
    stats->add_option("--format", stats_format, "native or jsonl (default jsonl)");

    // split
    std::string split_in, split_format = "jsonl", split_out;
    int split_k = 10;
    std::uint64_t split_seed = 0;
    auto* split = app.add_subcommand("split", "generate random 8:1:1 partitions");
    split->add_option("--in", split_in, "corpus file")->required();
    split->add_option("--format", split_format, "native or jsonl (default jsonl)");
    split->add_option("--k", split_k, "number of independent splits (default 10)");
    split->add_option("--seed", split_seed, "partition seed (default 0)");
    split->add_option("--out", split_out, "split file to write")->required();

    // synth
    std::string synth_kind = "rigged", synth_out, synth_format = "jsonl";
    std::size_t synth_docs = 100;
    std::uint64_t synth_seed = 7;
    auto* synth = app.add_subcommand("synth", "generate a synthetic demo corpus");
    synth->add_option("--kind", synth_kind, "rigged or histogram (default rigged)");
    synth->add_option("--out", synth_out, "corpus file to write")->required();
    synth->add_option("--n-docs", synth_docs, "documents to generate (rigged only)");
    synth->add_option("--seed", synth_seed, "generator seed");
    synth->add_option("--format", synth_format, "jsonl or native (default jsonl)");

    // run
    ecpe::RunConfig cfg;
    std::string run_format = "jsonl", run_variant = "guided_emotion_first";
    auto* run = app.add_subcommand("run", "train, predict and evaluate across splits");
    run->add_option("--corpus", cfg.corpus_path, "normalized corpus file")->required();
    run->add_option("--format", run_format, "native or jsonl (default jsonl)");
    run->add_option("--splits", cfg.split_file, "split file (overrides --k/--split-seed)");
    run->add_option("--k", cfg.k_splits, "number of generated splits (default 1)");
    run->add_option("--split-seed", cfg.split_seed, "seed for generated splits");
    run->add_option("--variant", run_variant,
                    "indep | guided_emotion_first | guided_cause_first | ece");
    run->add_option("--encoder", cfg.encoder,
                    "lexical-oracle | toy-char | pretrained:<name> (default toy-char)");
    run->add_option("--model-dir", cfg.model_dir, "weights directory for pretrained:<name>");
    run->add_option("--epochs", cfg.hp.epochs, "training epochs (default 5)");
    run->add_option("--lr", cfg.hp.learning_rate, "learning rate (default 5e-5)");
    run->add_option("--batch-size", cfg.hp.batch_size, "batch size (default 16)");
    run->add_option("--max-seq-tokens", cfg.hp.max_seq_tokens,
                    "question+context token budget (default 512)");
    run->add_option("--max-span-tokens", cfg.hp.max_span_tokens,
                    "answer span length bound (default 96)");
    run->add_option("--emotion-question", cfg.stage.emotion_question,
                    "fixed emotion question text");
    run->add_option("--cause-question", cfg.stage.cause_question, "fixed cause question text");
    run->add_option("--out", cfg.out_dir, "run output directory")->required();
    run->add_option("--seed", cfg.run_seed, "run seed (training order, init)");
    run->add_option("--threads", cfg.threads, "worker threads (default 1)");
    run->add_flag("--parallel-splits", cfg.parallel_splits, "run splits concurrently");

    // report
    std::vector<std::string> run_dirs;
    auto* report = app.add_subcommand("report", "comparison table over finished runs");
    report->add_option("dirs", run_dirs, "run directories")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors -> 1, --help -> 0
    }

    try {
        if (*ingest) return cmd_ingest(in_path, format, out_path, stats_path, allow_unannotated);
        if (*stats) return cmd_stats(stats_in, stats_format);
        if (*split) return cmd_split(split_in, split_format, split_k, split_seed, split_out);
        if (*synth) return cmd_synth(synth_kind, synth_out, synth_docs, synth_seed, synth_format);
        if (*run) {
            cfg.corpus_format = ecpe::corpus_format_from_string(run_format);
            cfg.variant = ecpe::variant_from_string(run_variant);
            cfg.hp.seed = cfg.run_seed;
            cfg.hp.threads = cfg.threads;
            return cmd_run(cfg);
        }
        if (*report) return cmd_report(run_dirs);
    } catch (const ecpe::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ecpe::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ecpe::ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
