#include "ecpe/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ecpe/errors.hpp"

namespace ecpe {

namespace {

using nlohmann::json;

using DocItem = std::pair<std::string, int>;
using DocPairItem = std::pair<std::string, ClausePair>;

json prf_to_json(const PRF& p) {
    return json{{"precision", p.precision},   {"recall", p.recall},
                {"f1", p.f1},                 {"n_gold", p.n_gold},
                {"n_pred", p.n_pred},         {"n_intersection", p.n_intersection}};
}

PRF prf_from_json(const json& j) {
    PRF p;
    p.precision = j.at("precision").get<double>();
    p.recall = j.at("recall").get<double>();
    p.f1 = j.at("f1").get<double>();
    p.n_gold = j.at("n_gold").get<std::size_t>();
    p.n_pred = j.at("n_pred").get<std::size_t>();
    p.n_intersection = j.at("n_intersection").get<std::size_t>();
    return p;
}

}  // namespace

EvalReport evaluate(const std::vector<Document>& docs, const std::vector<PairPrediction>& preds) {
    std::unordered_map<std::string, const Document*> by_id;
    for (const Document& d : docs) by_id.emplace(d.doc_id, &d);

    std::unordered_set<std::string> seen;
    std::set<DocItem> gold_emotions, pred_emotions, gold_causes, pred_causes;
    std::set<DocPairItem> gold_pairs, pred_pairs;

    for (const Document& d : docs) {
        for (int e : d.gold_emotions) gold_emotions.emplace(d.doc_id, e);
        for (int c : d.gold_causes) gold_causes.emplace(d.doc_id, c);
        for (const ClausePair& p : d.gold_pairs) gold_pairs.emplace(d.doc_id, p);
    }
    for (const PairPrediction& p : preds) {
        if (!by_id.count(p.doc_id))
            throw DataError("prediction references unknown doc_id " + p.doc_id);
        if (!seen.insert(p.doc_id).second)
            throw DataError("duplicate prediction for doc_id " + p.doc_id);
        pred_emotions.emplace(p.doc_id, p.emotion_clause);
        pred_causes.emplace(p.doc_id, p.cause_clause);
        pred_pairs.emplace(p.doc_id, ClausePair{p.emotion_clause, p.cause_clause});
    }

    EvalReport report;
    report.n_documents = docs.size();
    report.emotion = prf(gold_emotions, pred_emotions);
    report.cause = prf(gold_causes, pred_causes);
    report.pair = prf(gold_pairs, pred_pairs);
    return report;
}

EvalReport evaluate_document(const Document& doc, const PairPrediction& pred) {
    return evaluate({doc}, {pred});
}

SplitAggregate aggregate_splits(const std::vector<EvalReport>& reports) {
    if (reports.empty()) throw DataError("aggregate_splits: no reports");
    SplitAggregate agg;
    agg.per_split = reports;
    const double n = static_cast<double>(reports.size());

    const auto mean_of = [&](auto field, auto sub) {
        double sum = 0;
        for (const auto& r : reports) sum += r.*field.*sub;
        return sum / n;
    };
    const auto sd_of = [&](auto field, auto sub, double mean) {
        if (reports.size() < 2) return 0.0;
        double ss = 0;
        for (const auto& r : reports) {
            const double d = r.*field.*sub - mean;
            ss += d * d;
        }
        return std::sqrt(ss / (n - 1.0));
    };

    const auto fill = [&](PRF EvalReport::*task, TaskSpread& sd) {
        PRF out;
        out.precision = mean_of(task, &PRF::precision);
        out.recall = mean_of(task, &PRF::recall);
        out.f1 = mean_of(task, &PRF::f1);
        for (const auto& r : reports) {
            out.n_gold += (r.*task).n_gold;
            out.n_pred += (r.*task).n_pred;
            out.n_intersection += (r.*task).n_intersection;
        }
        sd.precision = sd_of(task, &PRF::precision, out.precision);
        sd.recall = sd_of(task, &PRF::recall, out.recall);
        sd.f1 = sd_of(task, &PRF::f1, out.f1);
        return out;
    };

    agg.mean.emotion = fill(&EvalReport::emotion, agg.emotion_sd);
    agg.mean.cause = fill(&EvalReport::cause, agg.cause_sd);
    agg.mean.pair = fill(&EvalReport::pair, agg.pair_sd);
    for (const auto& r : reports) agg.mean.n_documents += r.n_documents;
    return agg;
}

std::string render_table(const std::vector<std::pair<std::string, EvalReport>>& rows) {
    std::ostringstream os;
    std::size_t name_w = 5;
    for (const auto& [name, _] : rows) name_w = std::max(name_w, name.size());
    name_w += 2;

    os << std::left << std::setw(static_cast<int>(name_w)) << "Model"
       << "Emotion Extraction       Cause Extraction         EC Pair Extraction\n";
    os << std::setw(static_cast<int>(name_w)) << "" <<
        "P      R      F1         P      R      F1         P      R      F1\n";
    os << std::fixed << std::setprecision(3);
    for (const auto& [name, r] : rows) {
        os << std::setw(static_cast<int>(name_w)) << name;
        const auto cell = [&](const PRF& p) {
            os << std::setw(7) << p.precision << std::setw(7) << p.recall << std::setw(11)
               << p.f1;
        };
        cell(r.emotion);
        cell(r.cause);
        cell(r.pair);
        os << '\n';
    }
    return os.str();
}

std::string report_to_json(const EvalReport& report) {
    json j;
    j["emotion"] = prf_to_json(report.emotion);
    j["cause"] = prf_to_json(report.cause);
    j["pair"] = prf_to_json(report.pair);
    j["n_documents"] = report.n_documents;
    return j.dump(2);
}

EvalReport report_from_json(const std::string& text) {
    EvalReport r;
    try {
        const json j = json::parse(text);
        r.emotion = prf_from_json(j.at("emotion"));
        r.cause = prf_from_json(j.at("cause"));
        r.pair = prf_from_json(j.at("pair"));
        r.n_documents = j.at("n_documents").get<std::size_t>();
    } catch (const json::exception& e) {
        throw DataError(std::string("bad evaluation report: ") + e.what());
    }
    return r;
}

std::string aggregate_to_json(const SplitAggregate& agg) {
    json j;
    j["mean"] = json::parse(report_to_json(agg.mean));
    j["stddev"] = {
        {"emotion", {{"precision", agg.emotion_sd.precision},
                     {"recall", agg.emotion_sd.recall},
                     {"f1", agg.emotion_sd.f1}}},
        {"cause", {{"precision", agg.cause_sd.precision},
                   {"recall", agg.cause_sd.recall},
                   {"f1", agg.cause_sd.f1}}},
        {"pair", {{"precision", agg.pair_sd.precision},
                  {"recall", agg.pair_sd.recall},
                  {"f1", agg.pair_sd.f1}}},
    };
    json splits = json::array();
    for (const auto& r : agg.per_split) splits.push_back(json::parse(report_to_json(r)));
    j["splits"] = std::move(splits);
    return j.dump(2);
}

}  // namespace ecpe
