// Times the production kernels against the serial brute-force references
// that the test suite uses as oracles, and the OpenMP paths against their
// single-thread runs.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>

#include "ecpe/lexical_oracle.hpp"
#include "ecpe/parallel.hpp"
#include "ecpe/pipeline.hpp"
#include "ecpe/synth.hpp"
#include "ecpe/toy_encoder.hpp"
#include "reference.hpp"

using namespace ecpe;

namespace {

template <typename F>
double time_seconds(F&& f, int repeats = 3) {
    double best = 1e100;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        const double dt =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, dt);
    }
    return best;
}

void row(const std::string& name, double reference, double candidate) {
    std::cout << std::left << std::setw(44) << name << std::right << std::fixed
              << std::setprecision(4) << std::setw(10) << reference << "s" << std::setw(10)
              << candidate << "s" << std::setw(9) << std::setprecision(2)
              << (candidate > 0 ? reference / candidate : 0.0) << "x\n";
}

void bench_span_search() {
    std::cout << "\nspan search (exhaustive reference vs windowed kernel)\n";
    std::mt19937_64 rng(7);
    for (const std::size_t n : {2048u, 8192u}) {
        SpanScores scores;
        scores.start_logits.resize(n);
        scores.end_logits.resize(n);
        for (auto& v : scores.start_logits) v = static_cast<double>(rng() % 10000) / 700.0;
        for (auto& v : scores.end_logits) v = static_cast<double>(rng() % 10000) / 700.0;
        std::vector<CharSpan> alignment;
        for (std::size_t i = 0; i < n; ++i) alignment.push_back({i, i + 1});

        volatile std::size_t sink = 0;
        const double t_ref =
            time_seconds([&] { sink = sink + ref::best_span_exhaustive(scores, 96).start; });
        const double t_kernel =
            time_seconds([&] { sink = sink + best_span(scores, alignment, 96).start_token; });
        row("n=" + std::to_string(n) + " L=96", t_ref, t_kernel);
    }
}

void bench_inference() {
    std::cout << "\ncorpus inference (1 thread vs " << par::hardware_threads()
              << " threads)\n";
    const auto docs = make_rigged_corpus({.n_docs = 1500, .min_clauses = 8,
                                          .max_clauses = 16, .seed = 3});
    const LexicalOracleEncoder oracle;
    const VariantEncoders encoders{&oracle, &oracle};
    const StageConfig cfg = rigged_stage_config();
    volatile int sink = 0;
    const double serial = time_seconds([&] {
        sink = sink + predict_corpus(docs, Variant::guided_emotion_first, encoders, cfg, 1)
                          .front()
                          .emotion_clause;
    });
    const double parallel = time_seconds([&] {
        sink = sink + predict_corpus(docs, Variant::guided_emotion_first, encoders, cfg,
                                     par::hardware_threads())
                          .front()
                          .emotion_clause;
    });
    row("guided inference, 1500 docs", serial, parallel);
}

void bench_training() {
    std::cout << "\ntraining epoch (1 thread vs " << par::hardware_threads()
              << " threads)\n";
    const auto examples = make_copy_task(512, 5);
    Hyperparams hp;
    hp.epochs = 1;
    hp.learning_rate = 0.5;
    hp.batch_size = 16;

    const double serial = time_seconds([&] {
        ToyEncoder enc;
        hp.threads = 1;
        enc.train(examples, hp);
    });
    const double parallel = time_seconds([&] {
        ToyEncoder enc;
        hp.threads = par::hardware_threads();
        enc.train(examples, hp);
    });
    row("copy task, 512 examples", serial, parallel);
}

}  // namespace

int main() {
    std::cout << "ecpe kernel benchmark (openmp "
              << (par::openmp_enabled() ? "enabled" : "disabled") << ", "
              << par::hardware_threads() << " hardware threads)\n";
    std::cout << std::left << std::setw(44) << "case" << std::right << std::setw(11)
              << "reference" << std::setw(11) << "kernel" << std::setw(10) << "speedup\n";
    bench_span_search();
    bench_inference();
    bench_training();
    return 0;
}
