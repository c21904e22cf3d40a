#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "editguard/textrep.hpp"

// Word-category lists and the per-category frequency/impact features.
// Counting is over the case-insensitive token stream.

namespace editguard::lexicon {

// Category names in canonical feature order.
inline constexpr std::array<std::string_view, 7> kCategories = {
    "all", "vulgarism", "bad", "biased", "sex", "pronoun", "good"};

struct Lexicon {
    std::string name;
    std::set<std::string> words;  // lowercase single tokens
    // Lowercase multi-token entries (wiki-syntax elements such as <ref>
    // tokenize into several tokens and match as exact sequences).
    std::vector<std::vector<std::string>> phrases;

    bool empty() const { return words.empty() && phrases.empty(); }

    // Number of stream positions that match: a position counts once when its
    // token is in `words` or any phrase starts there, so the count never
    // exceeds the stream length.
    int64_t count_matches(const std::vector<textrep::Token>& tokens_ci) const;
};

// One term per line, `#`-prefixed comment lines and blank lines ignored;
// terms are lowercased and deduplicated. Throws std::runtime_error with
// file:line context on unreadable files or control characters in a term.
Lexicon load_lexicon(const std::filesystem::path& file, std::string name);

struct LexiconSet {
    std::vector<Lexicon> categories;  // kCategories order

    const Lexicon& get(std::string_view name) const;
};

// Loads {vulgarisms,pronouns,biased,sex,bad,good}.txt from `dir` and
// synthesizes "all" as the union of the five non-good categories. Empty
// category files and good/all overlaps are reported through `warnings`.
LexiconSet load_lexicons(const std::filesystem::path& dir,
                         std::vector<std::string>* warnings = nullptr);

// Matching inserted tokens over all inserted tokens; 0.0 without tokens.
double category_frequency(const Lexicon& lex, const std::vector<textrep::Token>& inserted_words_ci);

// Smoothed increase ratio (1 + count(new)) / (1 + count(old)).
double category_impact(const Lexicon& lex, const std::vector<textrep::Token>& old_tokens_ci,
                       const std::vector<textrep::Token>& new_tokens_ci);

}  // namespace editguard::lexicon
