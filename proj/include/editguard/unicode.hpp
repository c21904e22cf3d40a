#pragma once

#include <cstdint>
#include <string>
#include <string_view>

// Minimal Unicode support: UTF-8 transcoding, character classification by
// general category, and locale-independent simple case folding. Backed by
// tables generated from the Unicode character database (see
// tools/gen_unicode_tables.py).

namespace editguard::uni {

constexpr char32_t kReplacementChar = 0xFFFD;

// Decodes UTF-8. Invalid sequences decode to U+FFFD, one replacement per
// offending byte, so decoding is total.
std::u32string decode_utf8(std::string_view text);

std::string encode_utf8(std::u32string_view text);
void append_utf8(std::string& out, char32_t cp);

// Number of Unicode scalar values in a UTF-8 string.
std::size_t count_codepoints(std::string_view text);

bool is_upper(char32_t cp);   // category Lu
bool is_lower(char32_t cp);   // category Ll
bool is_letter(char32_t cp);  // categories Lu, Ll, Lt, Lm, Lo
bool is_digit(char32_t cp);   // category Nd
bool is_alnum(char32_t cp);
bool is_whitespace(char32_t cp);  // White_Space property

// Simple (one-to-one, non-locale) lowercase mapping.
char32_t to_lower(char32_t cp);
std::string lowercase(std::string_view utf8);

}  // namespace editguard::uni
