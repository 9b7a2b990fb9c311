#include <doctest.h>

#include "ecpe/errors.hpp"
#include "ecpe/text.hpp"

using namespace ecpe;

TEST_SUITE_BEGIN("text");

TEST_CASE("utf8 round trip") {
    const std::string s = "he was happy, 他很高兴";
    CHECK(encode_utf8(decode_utf8(s)) == s);
    CHECK(cp_length(s) == 18);
    CHECK(cp_length("abc") == 3);
}

TEST_CASE("invalid utf8 rejected") {
    CHECK_THROWS_AS(decode_utf8("\xff\x20"), DataError);
    CHECK_THROWS_AS(decode_utf8("\xe4\xbd"), DataError);  // truncated
    CHECK_THROWS_AS(decode_utf8("\xc0\xaf"), DataError);  // overlong
}

TEST_CASE("cp_substr slices by code points") {
    CHECK(cp_substr("他很高兴", {1, 3}) == "很高");
    CHECK(cp_substr("ab cd", {3, 5}) == "cd");
}

TEST_CASE("normalize trims and collapses whitespace") {
    CHECK(normalize_clause_text("  he  was\thappy ") == "he was happy");
    CHECK(normalize_clause_text("他　很 高兴") == "他 很 高兴");  // ideographic space
    CHECK(normalize_clause_text("  \t ") == "");
    CHECK(normalize_clause_text("plain") == "plain");
    // idempotent
    const std::string once = normalize_clause_text(" a  b ");
    CHECK(normalize_clause_text(once) == once);
}

TEST_CASE("span overlap arithmetic") {
    CHECK(span_overlap({0, 5}, {3, 8}) == 2);
    CHECK(span_overlap({0, 2}, {2, 4}) == 0);
    CHECK(span_overlap({1, 9}, {3, 4}) == 1);
}

TEST_SUITE_END();
