#include "ecpe/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "ecpe/errors.hpp"

namespace ecpe {

namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& doc_id, std::size_t line_no,
                             const std::string& what) {
    std::ostringstream os;
    os << "corpus parse error";
    if (!doc_id.empty()) os << " (doc " << doc_id << ")";
    if (line_no > 0) os << " at line " << line_no;
    os << ": " << what;
    throw DataError(os.str());
}

std::string trim_ascii(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

void strip_bom(std::string& line) {
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
}

// Pair list line: "(4,2), (4,3), (5,6)". Whitespace between tokens is free.
std::vector<ClausePair> parse_pair_line(const std::string& line, const std::string& doc_id,
                                        std::size_t line_no) {
    std::vector<ClausePair> pairs;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    };
    const auto read_int = [&]() -> int {
        skip_ws();
        std::size_t start = i;
        while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
        if (i == start) parse_fail(doc_id, line_no, "expected clause index in pair list");
        if (i - start > 9) parse_fail(doc_id, line_no, "clause index out of range");
        return std::stoi(line.substr(start, i - start));
    };
    skip_ws();
    while (i < line.size()) {
        if (line[i] != '(') parse_fail(doc_id, line_no, "expected '(' in pair list");
        ++i;
        const int e = read_int();
        skip_ws();
        if (i >= line.size() || line[i] != ',') parse_fail(doc_id, line_no, "expected ',' in pair");
        ++i;
        const int c = read_int();
        skip_ws();
        if (i >= line.size() || line[i] != ')') parse_fail(doc_id, line_no, "expected ')' in pair");
        ++i;
        pairs.emplace_back(e, c);
        skip_ws();
        if (i < line.size() && line[i] == ',') {
            ++i;
            skip_ws();
        }
    }
    if (pairs.empty()) parse_fail(doc_id, line_no, "empty pair list");
    return pairs;
}

// Clause lines in released corpora look like "<idx>,<keyword>,<category>,<text>";
// the two annotation fields are parsed and ignored. A line without that prefix
// is taken verbatim as clause text.
std::string strip_clause_annotations(const std::string& line, int expected_index,
                                     const std::string& doc_id, std::size_t line_no) {
    std::size_t i = 0;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (i == 0 || i > 9 || i >= line.size() || line[i] != ',') return line;
    const int idx = std::stoi(line.substr(0, i));
    const std::size_t second = line.find(',', i + 1);
    const std::size_t third = second == std::string::npos ? std::string::npos
                                                          : line.find(',', second + 1);
    if (third == std::string::npos) return line;  // not the annotated shape
    if (idx != expected_index)
        parse_fail(doc_id, line_no,
                   "clause line numbered " + std::to_string(idx) + ", expected " +
                       std::to_string(expected_index));
    return line.substr(third + 1);
}

std::vector<Document> parse_native(std::istream& raw, const ParseOptions& opts) {
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;

    const auto next_line = [&](std::string& out) -> bool {
        while (std::getline(raw, line)) {
            ++line_no;
            if (line_no == 1) strip_bom(line);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            out = line;
            return true;
        }
        return false;
    };

    std::string header;
    while (true) {
        // skip blank lines between documents
        bool got = false;
        while ((got = next_line(header)) && trim_ascii(header).empty()) {
        }
        if (!got) break;

        std::istringstream hs(header);
        std::string doc_id;
        long n_clauses = -1;
        hs >> doc_id >> n_clauses;
        std::string rest;
        hs >> rest;
        if (doc_id.empty() || n_clauses < 1 || !rest.empty())
            parse_fail(doc_id, line_no, "malformed document header: '" + header + "'");
        if (!seen_ids.insert(doc_id).second)
            parse_fail(doc_id, line_no, "duplicate doc_id");

        std::string pair_line;
        if (!next_line(pair_line))
            parse_fail(doc_id, line_no, "missing pair list line");
        std::vector<ClausePair> pairs;
        const std::string trimmed = trim_ascii(pair_line);
        if (!trimmed.empty())
            pairs = parse_pair_line(trimmed, doc_id, line_no);
        else if (!opts.allow_unannotated)
            parse_fail(doc_id, line_no, "document has no gold pairs");

        std::vector<std::string> texts;
        texts.reserve(static_cast<std::size_t>(n_clauses));
        for (long c = 0; c < n_clauses; ++c) {
            std::string clause_line;
            if (!next_line(clause_line))
                parse_fail(doc_id, line_no,
                           "expected " + std::to_string(n_clauses) + " clauses, got " +
                               std::to_string(c));
            texts.push_back(strip_clause_annotations(clause_line, static_cast<int>(c) + 1,
                                                     doc_id, line_no));
        }
        try {
            docs.push_back(make_document(doc_id, std::move(texts), std::move(pairs),
                                         opts.allow_unannotated));
        } catch (const DataError& e) {
            parse_fail(doc_id, line_no, e.what());
        }
    }
    return docs;
}

std::vector<Document> parse_jsonl(std::istream& raw, const ParseOptions& opts) {
    std::vector<Document> docs;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(raw, line)) {
        ++line_no;
        if (line_no == 1) strip_bom(line);
        if (trim_ascii(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            parse_fail("", line_no, std::string("invalid json: ") + e.what());
        }
        if (!j.is_object() || !j.contains("doc_id") || !j.contains("clauses") ||
            !j.contains("pairs"))
            parse_fail("", line_no, "document object needs doc_id, clauses, pairs");
        std::string doc_id;
        std::vector<std::string> texts;
        std::vector<ClausePair> pairs;
        try {
            doc_id = j.at("doc_id").get<std::string>();
            texts = j.at("clauses").get<std::vector<std::string>>();
            for (const auto& p : j.at("pairs")) {
                if (!p.is_array() || p.size() != 2)
                    parse_fail(doc_id, line_no, "pair must be a two-element array");
                pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
            }
        } catch (const json::exception& e) {
            parse_fail(doc_id, line_no, std::string("bad field type: ") + e.what());
        }
        if (!seen_ids.insert(doc_id).second)
            parse_fail(doc_id, line_no, "duplicate doc_id");
        try {
            docs.push_back(make_document(doc_id, std::move(texts), std::move(pairs),
                                         opts.allow_unannotated));
        } catch (const DataError& e) {
            parse_fail(doc_id, line_no, e.what());
        }
    }
    return docs;
}

json document_to_json(const Document& doc) {
    json j;
    j["doc_id"] = doc.doc_id;
    json clauses = json::array();
    for (const auto& c : doc.clauses) clauses.push_back(c.text);
    j["clauses"] = std::move(clauses);
    json pairs = json::array();
    for (const auto& [e, c] : doc.gold_pairs) pairs.push_back(json::array({e, c}));
    j["pairs"] = std::move(pairs);
    return j;
}

std::mt19937_64 split_rng(std::uint64_t seed, int split_id) {
    // distinct, seed-stable stream per split
    return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(split_id) + 1)));
}

}  // namespace

const Clause& Document::clause(int index) const {
    if (index < 1 || static_cast<std::size_t>(index) > clauses.size())
        throw DataError("doc " + doc_id + ": clause index " + std::to_string(index) +
                        " out of range (document has " + std::to_string(clauses.size()) +
                        " clauses)");
    return clauses[static_cast<std::size_t>(index) - 1];
}

Document make_document(std::string doc_id, std::vector<std::string> clause_texts,
                       std::vector<ClausePair> pairs, bool allow_unannotated) {
    if (clause_texts.empty()) throw DataError("document has no clauses");
    Document doc;
    doc.doc_id = std::move(doc_id);
    doc.clauses.reserve(clause_texts.size());
    std::size_t offset = 0;
    for (std::size_t i = 0; i < clause_texts.size(); ++i) {
        Clause cl;
        cl.index = static_cast<int>(i) + 1;
        cl.text = normalize_clause_text(clause_texts[i]);
        if (cl.text.empty())
            throw DataError("clause " + std::to_string(cl.index) +
                            " is empty after whitespace normalization");
        if (i > 0) ++offset;  // separator character
        cl.char_start = offset;
        offset += cp_length(cl.text);
        cl.char_end = offset;
        doc.clauses.push_back(std::move(cl));
    }
    const int n = static_cast<int>(doc.clauses.size());
    for (const auto& [e, c] : pairs) {
        if (e < 1 || e > n || c < 1 || c > n)
            throw DataError("pair (" + std::to_string(e) + "," + std::to_string(c) +
                            ") references a clause outside 1.." + std::to_string(n));
        doc.gold_pairs.emplace(e, c);
        doc.gold_emotions.insert(e);
        doc.gold_causes.insert(c);
    }
    if (doc.gold_pairs.empty() && !allow_unannotated)
        throw DataError("document has no gold pairs (pass allow_unannotated for prediction-only data)");
    return doc;
}

CorpusFormat corpus_format_from_string(const std::string& name) {
    if (name == "native") return CorpusFormat::native;
    if (name == "jsonl") return CorpusFormat::jsonl;
    throw ConfigError("unknown corpus format '" + name + "' (expected native or jsonl)");
}

std::vector<Document> parse_raw_corpus(std::istream& raw, CorpusFormat format,
                                       const ParseOptions& opts) {
    return format == CorpusFormat::native ? parse_native(raw, opts) : parse_jsonl(raw, opts);
}

std::vector<Document> load_corpus(const std::string& path, CorpusFormat format,
                                  const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open corpus file: " + path);
    return parse_raw_corpus(in, format, opts);
}

void write_corpus_jsonl(const std::vector<Document>& docs, std::ostream& out) {
    for (const auto& doc : docs) out << document_to_json(doc).dump() << '\n';
}

void save_corpus_jsonl(const std::vector<Document>& docs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write corpus file: " + path);
    write_corpus_jsonl(docs, out);
}

PairHistogram corpus_stats(const std::vector<Document>& docs) {
    if (docs.empty()) throw DataError("corpus_stats: empty corpus");
    PairHistogram h;
    std::size_t clause_total = 0;
    for (const auto& doc : docs) {
        const std::size_t n = doc.gold_pairs.size();
        if (n == 1)
            ++h.one_pair;
        else if (n == 2)
            ++h.two_pairs;
        else if (n > 2)
            ++h.more_than_two;
        clause_total += doc.clauses.size();
    }
    h.total = docs.size();
    const double t = static_cast<double>(h.total);
    h.pct_one = 100.0 * static_cast<double>(h.one_pair) / t;
    h.pct_two = 100.0 * static_cast<double>(h.two_pairs) / t;
    h.pct_more = 100.0 * static_cast<double>(h.more_than_two) / t;
    h.mean_clauses = static_cast<double>(clause_total) / t;
    return h;
}

std::string format_stats(const PairHistogram& h) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "documents with one emotion-cause pair:       " << h.one_pair << " (" << h.pct_one
       << "%)\n";
    os << "documents with two emotion-cause pairs:      " << h.two_pairs << " (" << h.pct_two
       << "%)\n";
    os << "documents with more than two pairs:          " << h.more_than_two << " ("
       << h.pct_more << "%)\n";
    os << "all documents:                               " << h.total << "\n";
    os << "mean clauses per document:                   " << std::setprecision(1)
       << h.mean_clauses << "\n";
    return os.str();
}

std::vector<SplitSet> make_splits(const std::vector<Document>& docs, int k, std::uint64_t seed) {
    if (k < 1) throw ConfigError("split count must be >= 1");
    const std::size_t n = docs.size();
    if (n < 10) throw DataError("corpus too small for an 8:1:1 partition (need >= 10 documents)");
    const std::size_t n_train = n * 8 / 10;
    const std::size_t n_dev = n / 10;

    std::vector<SplitSet> splits;
    splits.reserve(static_cast<std::size_t>(k));
    for (int s = 0; s < k; ++s) {
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        // Fisher-Yates with an explicit index map: identical output for a
        // fixed seed on every platform, unlike std::shuffle.
        auto rng = split_rng(seed, s);
        for (std::size_t i = n - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
            std::swap(order[i], order[j]);
        }
        SplitSet set;
        set.split_id = s;
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& id = docs[order[i]].doc_id;
            if (i < n_train)
                set.train.push_back(id);
            else if (i < n_train + n_dev)
                set.dev.push_back(id);
            else
                set.test.push_back(id);
        }
        splits.push_back(std::move(set));
    }
    return splits;
}

std::vector<SplitSet> parse_splits(std::istream& in) {
    std::vector<SplitSet> splits;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_ascii(line).empty()) continue;
        json j;
        try {
            j = json::parse(line);
            SplitSet s;
            s.split_id = j.at("split_id").get<int>();
            s.train = j.at("train").get<std::vector<std::string>>();
            s.dev = j.at("dev").get<std::vector<std::string>>();
            s.test = j.at("test").get<std::vector<std::string>>();
            splits.push_back(std::move(s));
        } catch (const json::exception& e) {
            throw DataError("split file line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (splits.empty()) throw DataError("split file contains no splits");
    return splits;
}

std::vector<SplitSet> load_splits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open split file: " + path);
    return parse_splits(in);
}

void write_splits(const std::vector<SplitSet>& splits, std::ostream& out) {
    for (const auto& s : splits) {
        json j;
        j["split_id"] = s.split_id;
        j["train"] = s.train;
        j["dev"] = s.dev;
        j["test"] = s.test;
        out << j.dump() << '\n';
    }
}

void save_splits(const std::vector<SplitSet>& splits, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write split file: " + path);
    write_splits(splits, out);
}

void validate_splits(const std::vector<SplitSet>& splits, const std::vector<Document>& docs) {
    std::unordered_set<std::string> corpus_ids;
    for (const auto& d : docs) corpus_ids.insert(d.doc_id);
    for (const auto& s : splits) {
        std::unordered_set<std::string> seen;
        const auto check = [&](const std::vector<std::string>& ids, const char* part) {
            for (const auto& id : ids) {
                if (!corpus_ids.count(id))
                    throw DataError("split " + std::to_string(s.split_id) + " " + part +
                                    " references unknown doc_id " + id);
                if (!seen.insert(id).second)
                    throw DataError("split " + std::to_string(s.split_id) +
                                    ": doc_id " + id + " appears in more than one part");
            }
        };
        check(s.train, "train");
        check(s.dev, "dev");
        check(s.test, "test");
        if (seen.size() != corpus_ids.size())
            throw DataError("split " + std::to_string(s.split_id) +
                            " does not cover the corpus (" + std::to_string(seen.size()) +
                            " of " + std::to_string(corpus_ids.size()) + " doc_ids)");
    }
}

}  // namespace ecpe
