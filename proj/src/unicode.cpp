#include "editguard/unicode.hpp"

#include <algorithm>
#include <iterator>

namespace editguard::uni {

namespace {

struct CharClassRange {
    uint32_t lo;
    uint32_t hi;
    uint8_t flags;
};

struct CaseMapEntry {
    uint32_t cp;
    uint32_t lower;
};

constexpr uint8_t kUpper = 1;
constexpr uint8_t kLower = 2;
constexpr uint8_t kLetter = 4;
constexpr uint8_t kDigit = 8;

#include "unicode_tables.inc"

uint8_t class_flags(char32_t cp) {
    const auto* begin = std::begin(kCharClassRanges);
    const auto* end = std::end(kCharClassRanges);
    auto it = std::upper_bound(begin, end, static_cast<uint32_t>(cp),
                               [](uint32_t v, const CharClassRange& r) { return v < r.lo; });
    if (it == begin) return 0;
    --it;
    return cp <= it->hi ? it->flags : 0;
}

}  // namespace

std::u32string decode_utf8(std::string_view text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(text[k]); };
    while (i < text.size()) {
        unsigned char b0 = byte(i);
        if (b0 < 0x80) {
            out.push_back(b0);
            ++i;
            continue;
        }
        int len;
        char32_t cp;
        char32_t min_cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2; cp = b0 & 0x1F; min_cp = 0x80;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3; cp = b0 & 0x0F; min_cp = 0x800;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4; cp = b0 & 0x07; min_cp = 0x10000;
        } else {
            out.push_back(kReplacementChar);
            ++i;
            continue;
        }
        bool ok = i + len <= text.size();
        for (int k = 1; ok && k < len; ++k) {
            unsigned char bk = byte(i + k);
            if ((bk & 0xC0) != 0x80) ok = false;
            cp = (cp << 6) | (bk & 0x3F);
        }
        // Overlong encodings, surrogates, and out-of-range values are invalid.
        if (ok && (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) ok = false;
        if (ok) {
            out.push_back(cp);
            i += len;
        } else {
            out.push_back(kReplacementChar);
            ++i;
        }
    }
    return out;
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = kReplacementChar;
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::string encode_utf8(std::u32string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char32_t cp : text) append_utf8(out, cp);
    return out;
}

std::size_t count_codepoints(std::string_view text) {
    std::size_t n = 0;
    for (char c : text) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
    }
    return n;
}

bool is_upper(char32_t cp) { return class_flags(cp) & kUpper; }
bool is_lower(char32_t cp) { return class_flags(cp) & kLower; }
bool is_letter(char32_t cp) { return class_flags(cp) & kLetter; }
bool is_digit(char32_t cp) { return class_flags(cp) & kDigit; }
bool is_alnum(char32_t cp) { return class_flags(cp) & (kLetter | kDigit); }

bool is_whitespace(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

char32_t to_lower(char32_t cp) {
    const auto* begin = std::begin(kSimpleLowerMap);
    const auto* end = std::end(kSimpleLowerMap);
    auto it = std::lower_bound(begin, end, static_cast<uint32_t>(cp),
                               [](const CaseMapEntry& e, uint32_t v) { return e.cp < v; });
    if (it != end && it->cp == cp) return it->lower;
    return cp;
}

std::string lowercase(std::string_view utf8) {
    std::u32string cps = decode_utf8(utf8);
    for (char32_t& c : cps) c = to_lower(c);
    return encode_utf8(cps);
}

}  // namespace editguard::uni
