#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "ecpe/corpus.hpp"
#include "ecpe/pipeline.hpp"
#include "ecpe/qa.hpp"

namespace ecpe {

// Synthetic corpora for demos, smoke runs and the verification suite.

struct RiggedCorpusOptions {
    std::size_t n_docs = 100;
    int min_clauses = 4;
    int max_clauses = 8;
    std::uint64_t seed = 7;
    // Which guided order the lexical construction favors. indep works under
    // either; ece needs the emotion-first construction.
    GuidedOrder favor = GuidedOrder::emotion_first;
};

// Fixed questions that match make_rigged_corpus: the emotion clause is the
// only one containing 'e', the cause clause the only one containing 'c'.
StageConfig rigged_stage_config();

// Single-pair documents whose clause texts are constructed so that the
// lexical overlap oracle recovers the gold clause at every stage: the fixed
// marker selects stage 1, and the gold counterpart clause is saturated with
// the key characters of the stage-1 clause so it outscores every clause
// including the question's own.
std::vector<Document> make_rigged_corpus(const RiggedCorpusOptions& opts);
Document make_rigged_document(const std::string& doc_id, int n_clauses, int emotion_index,
                              int cause_index, GuidedOrder favor, std::uint64_t seed);

// Corpus with the published ECPE pair histogram: 1746 one-pair, 177
// two-pair, 22 many-pair documents (1945 total) and a mean of 14.8 clauses
// per document, written in CJK characters so ingestion runs the same UTF-8
// path as the real data.
std::vector<Document> make_histogram_corpus(std::uint64_t seed = 11);

// The native interchange format (header, pair line, annotated clause lines).
void write_native_corpus(const std::vector<Document>& docs, std::ostream& out);

// Copy task for the trainable encoder: the answer clause is the only one
// wrapped in '[' ... ']', so the span is lexically marked.
std::vector<QAExample> make_copy_task(std::size_t n_examples, std::uint64_t seed = 3);

}  // namespace ecpe
