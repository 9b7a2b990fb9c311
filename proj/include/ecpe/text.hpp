#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace ecpe {

// Half-open range of Unicode code points. All character offsets in this
// project are code-point indices, never byte indices; the corpus is Chinese
// and must stay character-addressable across UTF-8 boundaries.
struct CharSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t length() const { return end > begin ? end - begin : 0; }
    bool empty() const { return end <= begin; }
    bool operator==(const CharSpan&) const = default;
};

// Intersection length of two half-open spans, in code points.
std::size_t span_overlap(const CharSpan& a, const CharSpan& b);

bool is_space_cp(char32_t cp);

// Throws DataError on malformed UTF-8.
std::u32string decode_utf8(std::string_view utf8);
std::string encode_utf8(std::u32string_view text);

std::size_t cp_length(std::string_view utf8);

// Slice a UTF-8 string by code-point range.
std::string cp_substr(std::string_view utf8, const CharSpan& span);

// Strip leading/trailing whitespace and collapse internal whitespace runs
// to a single ASCII space. No other normalization: offsets computed over
// the result must stay stable and reversible.
std::string normalize_clause_text(std::string_view utf8);

}  // namespace ecpe
