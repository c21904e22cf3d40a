#include <doctest.h>

#include <string>

#include "editguard/unicode.hpp"

using namespace editguard;

TEST_SUITE_BEGIN("unicode");

TEST_CASE("utf8 round trip") {
    const std::string samples[] = {
        "", "plain ascii", "caf\xc3\xa9",          // é
        "\xe2\x82\xac""100",                        // €100
        "\xf0\x9f\x98\x80 grin",                    // 😀
        "mixed \xc3\x9f \xce\xa9 \xe4\xb8\xad",     // ß Ω 中
    };
    for (const auto& s : samples) {
        const std::u32string cps = uni::decode_utf8(s);
        CHECK(uni::encode_utf8(cps) == s);
        CHECK(uni::count_codepoints(s) == cps.size());
    }
}

TEST_CASE("invalid sequences decode to one replacement per byte") {
    const std::u32string a = uni::decode_utf8("\xff\xfe");
    REQUIRE(a.size() == 2);
    CHECK(a[0] == uni::kReplacementChar);
    CHECK(a[1] == uni::kReplacementChar);

    // Truncated two-byte sequence followed by ASCII.
    const std::u32string b = uni::decode_utf8("\xc3x");
    REQUIRE(b.size() == 2);
    CHECK(b[0] == uni::kReplacementChar);
    CHECK(b[1] == U'x');

    // Overlong encoding of '/'.
    const std::u32string c = uni::decode_utf8("\xc0\xaf");
    CHECK(c.find(U'/') == std::u32string::npos);
}

TEST_CASE("classification") {
    CHECK(uni::is_upper(U'A'));
    CHECK_FALSE(uni::is_upper(U'a'));
    CHECK(uni::is_lower(U'a'));
    CHECK(uni::is_upper(U'É'));  // É
    CHECK(uni::is_lower(U'ß'));  // ß
    CHECK(uni::is_upper(U'Ω'));  // Ω
    CHECK(uni::is_letter(U'中'));  // 中 (Lo)
    CHECK_FALSE(uni::is_upper(U'中'));
    CHECK(uni::is_digit(U'5'));
    CHECK(uni::is_digit(U'٣'));  // ٣ arabic-indic
    CHECK_FALSE(uni::is_digit(U'Ⅴ'));  // Ⅴ roman numeral is Nl, not Nd
    CHECK(uni::is_alnum(U'z'));
    CHECK(uni::is_alnum(U'7'));
    CHECK_FALSE(uni::is_alnum(U'!'));
    CHECK_FALSE(uni::is_alnum(U' '));
    CHECK(uni::is_whitespace(U' '));
    CHECK(uni::is_whitespace(U'\t'));
    CHECK(uni::is_whitespace(U'\n'));
    CHECK(uni::is_whitespace(U' '));
    CHECK_FALSE(uni::is_whitespace(U'x'));
}

TEST_CASE("simple lowercase mapping") {
    CHECK(uni::to_lower(U'A') == U'a');
    CHECK(uni::to_lower(U'a') == U'a');
    CHECK(uni::to_lower(U'É') == U'é');
    CHECK(uni::to_lower(U'Ω') == U'ω');
    // Simple mapping is one-to-one: İ lowers to plain i (no combining dot).
    CHECK(uni::to_lower(U'İ') == U'i');
    // ß has no simple lowercase change.
    CHECK(uni::to_lower(U'ß') == U'ß');
    CHECK(uni::lowercase("\xc3\x84""BC") == "\xc3\xa4""bc");  // ÄBC → äbc
}

TEST_SUITE_END();
