#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "editguard/textrep.hpp"

// Character-level feature formulas. All counting is over Unicode scalar
// values, never bytes; ratios use the smoothed (1+x)/(1+y) form so they stay
// finite on empty input.

namespace editguard::charmetrics {

struct CharCounts {
    int64_t upper = 0;
    int64_t lower = 0;
    int64_t digit = 0;
    int64_t nonalnum = 0;
    int64_t total = 0;
    int64_t distinct = 0;
    std::map<char32_t, int64_t> histogram;
};

CharCounts count_chars(std::string_view text);

double upper_to_lower_ratio(const CharCounts& c);  // (1+upper)/(1+lower)
double upper_to_all_ratio(const CharCounts& c);    // (1+upper)/(1+lower+upper)
double digit_ratio(const CharCounts& c);           // (1+digit)/(1+total)
double nonalnum_ratio(const CharCounts& c);        // (1+nonalnum)/(1+total)

// length^(1/distinct); 0.0 for empty text.
double character_diversity(std::string_view text);

// Normalized character distribution. Ordered map so that every summation
// over it is performed in a fixed order (bit-for-bit reproducibility).
struct CharDistribution {
    std::map<char32_t, double> probs;
};

// Empirical distribution of `text`; empty distribution for empty text.
CharDistribution char_distribution(std::string_view text);

// Bundled English letter relative frequencies (a..z), the fallback
// expectation for revisions too short to carry their own statistics.
const CharDistribution& english_letter_distribution();

// Plain-text table: one `character TAB probability` pair per line, `#`
// comments and blank lines ignored. Result is normalized.
CharDistribution load_char_distribution(const std::filesystem::path& path);

// Expectation used by the char_distribution feature: the new revision's own
// empirical distribution when it has at least `min_revision_chars`
// characters, otherwise `fallback`; Laplace-smoothed with `epsilon` over the
// union of its alphabet and the inserted text's.
CharDistribution make_expectation(std::string_view new_revision, std::string_view inserted,
                                  const CharDistribution& fallback, double epsilon = 1e-6,
                                  int64_t min_revision_chars = 100);

// Σ p(c)·log2(p(c)/q(c)). Characters missing from q are floored at 1e-12
// instead of dividing by zero; callers building q via make_expectation never
// hit the floor.
double kl_char_divergence(const CharDistribution& p, const CharDistribution& q);

// Same divergence with p = empirical distribution of `inserted`;
// 0.0 when `inserted` has fewer than 2 characters.
double kl_char_divergence(std::string_view inserted, const CharDistribution& expectation);

// Compressed size over original size in bytes under TIFF-variant LZW;
// 1.0 for texts shorter than 2 characters.
double compressibility(std::string_view inserted);

int64_t size_increment(std::string_view old_text, std::string_view new_text);
double size_ratio(std::string_view old_text, std::string_view new_text);  // (1+|new|)/(1+|old|)

// Longest token length in characters; 0 without tokens.
int64_t longest_word(const std::vector<textrep::Token>& words);

// Longest run of one repeated character; 0 for empty text.
int64_t longest_char_sequence(std::string_view text);

// Mean over the distinct inserted words of their relative frequency in the
// new revision's token stream; 0.0 when either side is empty.
double average_term_frequency(const std::vector<textrep::Token>& inserted_words_ci,
                              const std::vector<textrep::Token>& new_revision_tokens_ci);

}  // namespace editguard::charmetrics
