#include "ecpe/mapping.hpp"

#include <limits>

#include "ecpe/errors.hpp"

namespace ecpe {

std::pair<int, OverlapReport> span_to_clause(const CharSpan& span, const Context& context) {
    if (context.n_clauses() == 0) throw DataError("span_to_clause: empty context");
    if (span.empty() || span.end > context.size())
        throw DataError("span_to_clause: span [" + std::to_string(span.begin) + "," +
                        std::to_string(span.end) + ") outside context of length " +
                        std::to_string(context.size()));

    OverlapReport report;
    report.overlap.reserve(context.n_clauses());
    std::size_t best = 0;
    int winner = 0;
    for (std::size_t i = 0; i < context.n_clauses(); ++i) {
        const std::size_t ov = span_overlap(span, context.clause_offsets[i]);
        report.overlap.push_back(ov);
        if (ov > best) {
            best = ov;
            winner = static_cast<int>(i) + 1;
        }
    }
    if (best == 0) {
        // span lies entirely on separator characters
        std::size_t best_dist = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i < context.n_clauses(); ++i) {
            const std::size_t start = context.clause_offsets[i].begin;
            const std::size_t dist =
                start > span.begin ? start - span.begin : span.begin - start;
            if (dist < best_dist) {
                best_dist = dist;
                winner = static_cast<int>(i) + 1;
            }
        }
    }
    report.winner = winner;
    return {winner, report};
}

}  // namespace ecpe
