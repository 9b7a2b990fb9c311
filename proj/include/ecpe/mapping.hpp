#pragma once

#include <vector>

#include "ecpe/qa.hpp"
#include "ecpe/text.hpp"

namespace ecpe {

struct OverlapReport {
    std::vector<std::size_t> overlap;  // per clause, characters shared with the span
    int winner = 0;                    // 1-based clause index
};

// The clause that overlaps most with the predicted span, measured in
// characters. Ties go to the lower clause index; a span that covers only
// separator characters maps to the clause whose start is nearest the span
// start (again lower index on ties).
std::pair<int, OverlapReport> span_to_clause(const CharSpan& span, const Context& context);

}  // namespace ecpe
