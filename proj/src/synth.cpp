#include "ecpe/synth.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>

#include "ecpe/errors.hpp"

namespace ecpe {

namespace {

// filler alphabet is disjoint from the markers 'e'/'c', the key characters
// "k7" and the space, so filler clauses score zero against every question
constexpr char kFiller[] = {'f', 'g', 'h', 'j', 'm', 'p', 'q', 'r', 's', 't'};

std::string filler_clause(std::mt19937_64& rng) {
    const std::size_t len = 4 + rng() % 5;
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s.push_back(kFiller[rng() % sizeof kFiller]);
    return s;
}

std::string key_blocks(int reps) {
    std::string s;
    for (int i = 0; i < reps; ++i) s += " kk77";
    return s;
}

}  // namespace

StageConfig rigged_stage_config() {
    StageConfig cfg;
    cfg.emotion_question = "e";
    cfg.cause_question = "c";
    return cfg;
}

Document make_rigged_document(const std::string& doc_id, int n_clauses, int emotion_index,
                              int cause_index, GuidedOrder favor, std::uint64_t seed) {
    if (n_clauses < 2 || emotion_index == cause_index || emotion_index < 1 ||
        cause_index < 1 || emotion_index > n_clauses || cause_index > n_clauses)
        throw ConfigError("make_rigged_document: bad clause layout");
    std::mt19937_64 rng(seed);
    std::vector<std::string> texts;
    texts.reserve(static_cast<std::size_t>(n_clauses));
    // The clause asked about second carries one more key block than the one
    // asked about first, so its in-question-charset character count beats
    // the stage-2 question's own clause strictly.
    const bool emotion_first = favor == GuidedOrder::emotion_first;
    const std::string emotion_text = "ee" + key_blocks(emotion_first ? 1 : 2);
    const std::string cause_text = "cc" + key_blocks(emotion_first ? 2 : 1);
    for (int i = 1; i <= n_clauses; ++i) {
        if (i == emotion_index)
            texts.push_back(emotion_text);
        else if (i == cause_index)
            texts.push_back(cause_text);
        else
            texts.push_back(filler_clause(rng));
    }
    return make_document(doc_id, std::move(texts), {{emotion_index, cause_index}});
}

std::vector<Document> make_rigged_corpus(const RiggedCorpusOptions& opts) {
    if (opts.min_clauses < 2 || opts.max_clauses < opts.min_clauses)
        throw ConfigError("make_rigged_corpus: bad clause range");
    std::mt19937_64 rng(opts.seed);
    std::vector<Document> docs;
    docs.reserve(opts.n_docs);
    for (std::size_t d = 0; d < opts.n_docs; ++d) {
        const int n = opts.min_clauses +
                      static_cast<int>(rng() % static_cast<std::uint64_t>(
                                                   opts.max_clauses - opts.min_clauses + 1));
        const int emotion = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int cause = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n - 1));
        if (cause >= emotion) ++cause;
        docs.push_back(make_rigged_document("synth-" + std::to_string(d + 1), n, emotion,
                                            cause, opts.favor, rng()));
    }
    return docs;
}

std::vector<Document> make_histogram_corpus(std::uint64_t seed) {
    // Table layout of the released corpus: 1746 / 177 / 22 documents with
    // 1, 2, >2 pairs; 1945 * 14.8 = 28786 clauses in total.
    constexpr std::size_t kOnePair = 1746, kTwoPairs = 177, kManyPairs = 22;
    constexpr std::size_t kTotal = kOnePair + kTwoPairs + kManyPairs;
    constexpr std::size_t kClauseTotal = 28786;

    std::mt19937_64 rng(seed);
    std::vector<int> clause_counts(kTotal, 14);
    std::size_t remainder = kClauseTotal - 14 * kTotal;
    // spread the leftover clauses deterministically
    for (std::size_t i = 0; remainder > 0; i = (i + 2) % kTotal) {
        ++clause_counts[i];
        --remainder;
    }

    std::vector<Document> docs;
    docs.reserve(kTotal);
    for (std::size_t d = 0; d < kTotal; ++d) {
        const int n = clause_counts[d];
        std::vector<std::string> texts;
        texts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const std::size_t len = 6 + rng() % 10;
            std::u32string t;
            for (std::size_t k = 0; k < len; ++k)
                t.push_back(static_cast<char32_t>(0x4E00 + rng() % 2000));
            texts.push_back(encode_utf8(t));
        }
        const std::size_t n_pairs = d < kOnePair ? 1 : d < kOnePair + kTwoPairs ? 2 : 3 + d % 2;
        std::set<ClausePair> pairs;
        while (pairs.size() < n_pairs) {
            const int e = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            const int c = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
            pairs.emplace(e, c);
        }
        docs.push_back(make_document(std::to_string(d + 1), std::move(texts),
                                     {pairs.begin(), pairs.end()}));
    }
    return docs;
}

void write_native_corpus(const std::vector<Document>& docs, std::ostream& out) {
    for (const auto& doc : docs) {
        out << doc.doc_id << ' ' << doc.clauses.size() << '\n';
        bool first = true;
        for (const auto& [e, c] : doc.gold_pairs) {
            if (!first) out << ", ";
            out << '(' << e << ',' << c << ')';
            first = false;
        }
        out << '\n';
        for (const auto& cl : doc.clauses) {
            // annotated clause-line shape of the released corpus; the two
            // middle fields are ignored by the reader
            if (doc.gold_emotions.count(cl.index))
                out << cl.index << ",happiness,null," << cl.text << '\n';
            else
                out << cl.index << ",null,null," << cl.text << '\n';
        }
    }
}

std::vector<QAExample> make_copy_task(std::size_t n_examples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<QAExample> out;
    out.reserve(n_examples);
    for (std::size_t i = 0; i < n_examples; ++i) {
        const int n = 3 + static_cast<int>(rng() % 4);
        const int answer = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        std::vector<std::string> texts;
        for (int c = 1; c <= n; ++c) {
            std::string t = filler_clause(rng);
            if (c == answer) t = "[" + t + "]";
            texts.push_back(std::move(t));
        }
        const Document doc = make_document("copy-" + std::to_string(i + 1), std::move(texts),
                                           {{answer, answer}});
        out.push_back(make_example(doc, Target::emotion, {"find", QuestionKind::fixed_emotion}));
    }
    return out;
}

}  // namespace ecpe
