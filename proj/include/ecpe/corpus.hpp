#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ecpe/text.hpp"

namespace ecpe {

// (emotion clause index, cause clause index), both 1-based.
using ClausePair = std::pair<int, int>;

struct Clause {
    int index = 0;          // 1-based position within the document
    std::string text;       // UTF-8, whitespace-normalized, non-empty
    std::size_t char_start = 0;  // code-point offsets within the document context
    std::size_t char_end = 0;    // (single separator between clauses, end exclusive)

    CharSpan span() const { return {char_start, char_end}; }
};

struct Document {
    std::string doc_id;
    std::vector<Clause> clauses;
    std::set<ClausePair> gold_pairs;
    std::set<int> gold_emotions;  // projection of gold_pairs onto first element
    std::set<int> gold_causes;    // projection onto second element

    bool has_gold() const { return !gold_pairs.empty(); }
    const Clause& clause(int index) const;  // 1-based, throws DataError
};

// Computes clause offsets (one separator character between clauses), derives
// the gold projections and checks the document invariants. Every constructed
// Document must pass through here.
Document make_document(std::string doc_id, std::vector<std::string> clause_texts,
                       std::vector<ClausePair> pairs, bool allow_unannotated = false);

enum class CorpusFormat { native, jsonl };

CorpusFormat corpus_format_from_string(const std::string& name);

struct ParseOptions {
    // Prediction-only mode: accept documents without gold pairs.
    bool allow_unannotated = false;
};

// native format, one block per document:
//   <doc_id> <n_clauses>
//   (e1,c1), (e2,c2), ...
//   n_clauses lines of clause text; a line may carry leading
//   "<index>,<keyword>,<category>," annotation fields which are ignored
// jsonl format: {"doc_id": str, "clauses": [str, ...], "pairs": [[e,c], ...]}
// per line, 1-based indices.
std::vector<Document> parse_raw_corpus(std::istream& raw, CorpusFormat format,
                                       const ParseOptions& opts = {});
std::vector<Document> load_corpus(const std::string& path, CorpusFormat format,
                                  const ParseOptions& opts = {});

void write_corpus_jsonl(const std::vector<Document>& docs, std::ostream& out);
void save_corpus_jsonl(const std::vector<Document>& docs, const std::string& path);

struct PairHistogram {
    std::size_t one_pair = 0;
    std::size_t two_pairs = 0;
    std::size_t more_than_two = 0;
    std::size_t total = 0;
    double pct_one = 0, pct_two = 0, pct_more = 0;
    double mean_clauses = 0;
};

PairHistogram corpus_stats(const std::vector<Document>& docs);
std::string format_stats(const PairHistogram& h);

struct SplitSet {
    int split_id = 0;
    std::vector<std::string> train, dev, test;
};

// k independent random 8:1:1 partitions, deterministic for a fixed seed.
// Sizes: |train| = 8n/10, |dev| = n/10, remainder to test (integer division).
std::vector<SplitSet> make_splits(const std::vector<Document>& docs, int k, std::uint64_t seed);

// Split file: one jsonl object per split:
// {"split_id": int, "train": [...], "dev": [...], "test": [...]}.
std::vector<SplitSet> parse_splits(std::istream& in);
std::vector<SplitSet> load_splits(const std::string& path);
void write_splits(const std::vector<SplitSet>& splits, std::ostream& out);
void save_splits(const std::vector<SplitSet>& splits, const std::string& path);

// Disjointness and exact coverage of the corpus doc_ids; throws DataError.
void validate_splits(const std::vector<SplitSet>& splits, const std::vector<Document>& docs);

}  // namespace ecpe
